//! Constructors for named gates.
//!
//! Rotations follow `R_P(theta) = exp(i * theta * P / 2)`. Note the sign:
//! `RZ(theta)` is `diag(e^{i theta/2}, e^{-i theta/2})`, the opposite of the
//! `exp(-i theta P / 2)` convention used by some other simulators.
//!
//! Multi-qubit constructors panic when given the same qubit twice; use
//! [`named_gate`] for checked construction from untrusted input.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use super::{hadamard_matrix, BasicGate, CommutationBasis, GateName, PauliId};
use crate::error::{invalid, Error, Result};
use crate::matrix::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn single_pauli(q: usize, p: PauliId, name: GateName) -> BasicGate {
    BasicGate::pauli(vec![q], vec![p]).unwrap().with_name(name)
}

fn single_dense(q: usize, m: ComplexMatrix, name: GateName, basis: CommutationBasis) -> BasicGate {
    BasicGate::dense(vec![q], m)
        .unwrap()
        .with_name(name)
        .with_commutation(q, basis)
}

fn single_diag(q: usize, d1: Complex64, name: GateName) -> BasicGate {
    BasicGate::diagonal(vec![q], vec![ONE, d1]).unwrap().with_name(name)
}

fn distinct(qs: &[usize]) {
    for (i, q) in qs.iter().enumerate() {
        assert!(!qs[..i].contains(q), "gate qubits must be distinct, got {qs:?}");
    }
}

pub fn identity(q: usize) -> BasicGate {
    single_pauli(q, PauliId::I, GateName::Identity)
}

pub fn x(q: usize) -> BasicGate {
    single_pauli(q, PauliId::X, GateName::X)
}

pub fn y(q: usize) -> BasicGate {
    single_pauli(q, PauliId::Y, GateName::Y)
}

pub fn z(q: usize) -> BasicGate {
    single_pauli(q, PauliId::Z, GateName::Z)
}

pub fn h(q: usize) -> BasicGate {
    single_dense(q, hadamard_matrix(), GateName::H, CommutationBasis::None)
}

/// `diag(1, i)`
pub fn s(q: usize) -> BasicGate {
    single_diag(q, c(0.0, 1.0), GateName::S)
}

pub fn sdag(q: usize) -> BasicGate {
    single_diag(q, c(0.0, -1.0), GateName::Sdag)
}

/// `diag(1, e^{i pi/4})`
pub fn t(q: usize) -> BasicGate {
    single_diag(q, Complex64::from_polar(1.0, FRAC_PI_4), GateName::T)
}

pub fn tdag(q: usize) -> BasicGate {
    single_diag(q, Complex64::from_polar(1.0, -FRAC_PI_4), GateName::Tdag)
}

fn sqrt_x_matrix() -> ComplexMatrix {
    let (p, m) = (c(0.5, 0.5), c(0.5, -0.5));
    ComplexMatrix::new(2, vec![p, m, m, p]).unwrap()
}

fn sqrt_y_matrix() -> ComplexMatrix {
    let p = c(0.5, 0.5);
    ComplexMatrix::new(2, vec![p, -p, p, p]).unwrap()
}

/// `1/2 [[1+i, 1-i], [1-i, 1+i]]`, squares to X.
pub fn sqrt_x(q: usize) -> BasicGate {
    single_dense(q, sqrt_x_matrix(), GateName::SqrtX, CommutationBasis::X)
}

pub fn sqrt_x_dag(q: usize) -> BasicGate {
    single_dense(q, sqrt_x_matrix().adjoint(), GateName::SqrtXdag, CommutationBasis::X)
}

/// `(1+i)/2 [[1, -1], [1, 1]]`, squares to Y.
pub fn sqrt_y(q: usize) -> BasicGate {
    single_dense(q, sqrt_y_matrix(), GateName::SqrtY, CommutationBasis::Y)
}

pub fn sqrt_y_dag(q: usize) -> BasicGate {
    single_dense(q, sqrt_y_matrix().adjoint(), GateName::SqrtYdag, CommutationBasis::Y)
}

pub fn cnot(control: usize, target: usize) -> BasicGate {
    distinct(&[control, target]);
    BasicGate::pauli(vec![target], vec![PauliId::X])
        .unwrap()
        .controlled(control, 1)
        .unwrap()
        .with_name(GateName::Cnot)
}

pub fn cz(control: usize, target: usize) -> BasicGate {
    distinct(&[control, target]);
    BasicGate::pauli(vec![target], vec![PauliId::Z])
        .unwrap()
        .controlled(control, 1)
        .unwrap()
        .with_name(GateName::Cz)
}

pub fn swap(a: usize, b: usize) -> BasicGate {
    distinct(&[a, b]);
    BasicGate::permutation(vec![a, b], vec![0, 2, 1, 3])
        .unwrap()
        .with_name(GateName::Swap)
}

pub fn toffoli(control1: usize, control2: usize, target: usize) -> BasicGate {
    distinct(&[control1, control2, target]);
    BasicGate::pauli(vec![target], vec![PauliId::X])
        .unwrap()
        .controlled(control1, 1)
        .unwrap()
        .controlled(control2, 1)
        .unwrap()
        .with_name(GateName::Toffoli)
}

pub fn fredkin(control: usize, a: usize, b: usize) -> BasicGate {
    distinct(&[control, a, b]);
    BasicGate::permutation(vec![a, b], vec![0, 2, 1, 3])
        .unwrap()
        .controlled(control, 1)
        .unwrap()
        .with_name(GateName::Fredkin)
}

/// `exp(i theta X / 2)`
pub fn rx(q: usize, theta: f64) -> BasicGate {
    BasicGate::pauli_rotation(vec![q], vec![PauliId::X], theta)
        .unwrap()
        .with_name(GateName::RX(theta))
}

/// `exp(i theta Y / 2)`
pub fn ry(q: usize, theta: f64) -> BasicGate {
    BasicGate::pauli_rotation(vec![q], vec![PauliId::Y], theta)
        .unwrap()
        .with_name(GateName::RY(theta))
}

/// `exp(i theta Z / 2)`
pub fn rz(q: usize, theta: f64) -> BasicGate {
    BasicGate::pauli_rotation(vec![q], vec![PauliId::Z], theta)
        .unwrap()
        .with_name(GateName::RZ(theta))
}

/// `diag(1, e^{i lambda})`
pub fn u1(q: usize, lambda: f64) -> BasicGate {
    single_diag(q, Complex64::from_polar(1.0, lambda), GateName::U1(lambda))
}

pub fn u2(q: usize, phi: f64, lambda: f64) -> BasicGate {
    single_dense(q, u3_matrix(FRAC_PI_2, phi, lambda), GateName::U2(phi, lambda), CommutationBasis::None)
}

/// OpenQASM `U3(theta, phi, lambda)`.
pub fn u3(q: usize, theta: f64, phi: f64, lambda: f64) -> BasicGate {
    single_dense(
        q,
        u3_matrix(theta, phi, lambda),
        GateName::U3(theta, phi, lambda),
        CommutationBasis::None,
    )
}

fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> ComplexMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    ComplexMatrix::new(
        2,
        vec![
            c(co, 0.0),
            -Complex64::from_polar(s, lambda),
            Complex64::from_polar(s, phi),
            Complex64::from_polar(co, phi + lambda),
        ],
    )
    .unwrap()
}

/// Projector onto `|0>`; not unitary.
pub fn p0(q: usize) -> BasicGate {
    BasicGate::diagonal(vec![q], vec![ONE, ZERO]).unwrap().with_name(GateName::P0)
}

/// Projector onto `|1>`; not unitary.
pub fn p1(q: usize) -> BasicGate {
    BasicGate::diagonal(vec![q], vec![ZERO, ONE]).unwrap().with_name(GateName::P1)
}

/// Haar-random unitary on `targets` (QR of a complex Gaussian matrix with phase fix).
pub fn random_unitary<R: rand::RngCore + ?Sized>(targets: Vec<usize>, rng: &mut R) -> Result<BasicGate> {
    let dim = 1usize << targets.len();
    BasicGate::dense(targets, haar_unitary(dim, rng))
}

pub(crate) fn haar_unitary<R: rand::RngCore + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    use rand::Rng;
    use rand_distr::StandardNormal;
    // columns of a Gaussian matrix, orthonormalized by modified Gram-Schmidt
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for j in 0..dim {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let proj: Complex64 = done[k].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                *x -= proj * q;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    let mut m = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, *v);
        }
    }
    m
}

/// Checked construction by name. `qubits` lists controls first for the
/// controlled gates (`CNOT`, `CZ`, `TOFFOLI`, `FREDKIN`), in the same order
/// as the dedicated constructors.
pub fn named_gate(name: &str, qubits: &[usize], params: &[f64]) -> Result<BasicGate> {
    let (nq, np) = match name {
        "I" | "X" | "Y" | "Z" | "H" | "S" | "Sdag" | "T" | "Tdag" | "sqrtX" | "sqrtXdag"
        | "sqrtY" | "sqrtYdag" | "P0" | "P1" => (1, 0),
        "RX" | "RY" | "RZ" | "U1" => (1, 1),
        "U2" => (1, 2),
        "U3" => (1, 3),
        "CNOT" | "CZ" | "SWAP" => (2, 0),
        "TOFFOLI" | "FREDKIN" => (3, 0),
        _ => return invalid(format!("unknown gate name {name:?}")),
    };
    if qubits.len() != nq {
        return Err(Error::DimensionMismatch {
            expected: nq,
            found: qubits.len(),
        });
    }
    if params.len() != np {
        return invalid(format!("{name} takes {np} parameters, got {}", params.len()));
    }
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return invalid(format!("{name} qubits must be distinct, got {qubits:?}"));
        }
    }
    let q = qubits[0];
    Ok(match name {
        "I" => identity(q),
        "X" => x(q),
        "Y" => y(q),
        "Z" => z(q),
        "H" => h(q),
        "S" => s(q),
        "Sdag" => sdag(q),
        "T" => t(q),
        "Tdag" => tdag(q),
        "sqrtX" => sqrt_x(q),
        "sqrtXdag" => sqrt_x_dag(q),
        "sqrtY" => sqrt_y(q),
        "sqrtYdag" => sqrt_y_dag(q),
        "P0" => p0(q),
        "P1" => p1(q),
        "RX" => rx(q, params[0]),
        "RY" => ry(q, params[0]),
        "RZ" => rz(q, params[0]),
        "U1" => u1(q, params[0]),
        "U2" => u2(q, params[0], params[1]),
        "U3" => u3(q, params[0], params[1], params[2]),
        "CNOT" => cnot(q, qubits[1]),
        "CZ" => cz(q, qubits[1]),
        "SWAP" => swap(q, qubits[1]),
        "TOFFOLI" => toffoli(q, qubits[1], qubits[2]),
        "FREDKIN" => fredkin(q, qubits[1], qubits[2]),
        _ => unreachable!(),
    })
}
