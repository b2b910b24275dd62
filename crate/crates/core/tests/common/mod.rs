//! Reference implementations for the integration tests. Everything here is
//! built from textbook matrices with nalgebra, independent of the kernels.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qusim::{ComplexMatrix, StateVector};
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(letter: char) -> CMat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let data = match letter {
        'I' => [o, z, z, o],
        'X' => [z, o, o, z],
        'Y' => [z, -i, i, z],
        'Z' => [o, z, z, -o],
        _ => panic!("bad Pauli {letter}"),
    };
    CMat::from_row_slice(2, 2, &data)
}

pub fn mat2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMat {
    CMat::from_row_slice(2, 2, &[a, b, cc, d])
}

/// Full `2^n` operator for `local` on `qubits` (local bit `j` is
/// `qubits[j]`), acting only where every `(qubit, value)` control matches.
pub fn embed(local: &CMat, qubits: &[usize], controls: &[(usize, u8)], n: usize) -> CMat {
    let dim = 1usize << n;
    let mask: usize = qubits.iter().map(|q| 1usize << q).sum();
    let local_index = |x: usize| {
        qubits
            .iter()
            .enumerate()
            .map(|(j, &q)| ((x >> q) & 1) << j)
            .sum::<usize>()
    };
    let active = |x: usize| controls.iter().all(|&(q, v)| (x >> q) & 1 == v as usize);
    CMat::from_fn(dim, dim, |r, col| {
        if r & !mask != col & !mask {
            return c(0.0, 0.0);
        }
        if active(col) {
            local[(local_index(r), local_index(col))]
        } else if r == col {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Kronecker product of single-qubit Paulis; `letters[q]` acts on qubit `q`.
pub fn pauli_string(letters: &[char]) -> CMat {
    letters
        .iter()
        .rev()
        .fold(CMat::identity(1, 1), |acc, &l| acc.kronecker(&pauli(l)))
}

pub fn apply(m: &CMat, amps: &[Complex64]) -> Vec<Complex64> {
    let v = nalgebra::DVector::from_column_slice(amps);
    (m * v).iter().copied().collect()
}

pub fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix<R: Rng>(dim: usize, rng: &mut R) -> CMat {
    CMat::from_fn(dim, dim, |_, _| gaussian(rng))
}

/// Haar unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> CMat {
    let qr = random_matrix(dim, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMat::from_fn(dim, dim, |i, j| {
        if i == j {
            let d = r[(i, i)];
            d / d.norm()
        } else {
            c(0.0, 0.0)
        }
    });
    q * phases
}

pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let v: Vec<Complex64> = (0..1usize << n).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(v.into_iter().map(|a| a / norm).collect()).unwrap()
}

/// Distinct qubits drawn uniformly from `0..n`.
pub fn random_qubits<R: Rng>(n: usize, count: usize, rng: &mut R) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..count {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}

pub fn to_library(m: &CMat) -> ComplexMatrix {
    let dim = m.nrows();
    ComplexMatrix::new(dim, (0..dim * dim).map(|k| m[(k / dim, k % dim)]).collect()).unwrap()
}

pub fn from_library(m: &ComplexMatrix) -> CMat {
    let dim = m.dim();
    CMat::from_fn(dim, dim, |r, col| m.get(r, col))
}

/// Operator of a linear state map, read column by column from basis states.
pub fn operator_of(n: usize, mut f: impl FnMut(&mut StateVector)) -> CMat {
    let dim = 1usize << n;
    let mut out = CMat::zeros(dim, dim);
    for col in 0..dim {
        let mut s = StateVector::new(n).unwrap();
        s.set_computational_basis(col).unwrap();
        f(&mut s);
        for (r, a) in s.amplitudes().iter().enumerate() {
            out[(r, col)] = *a;
        }
    }
    out
}

pub fn operator_norm(m: &CMat) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

pub fn fidelity(a: &StateVector, b: &StateVector) -> f64 {
    qusim::inner_product(a, b).unwrap().norm_sqr()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
