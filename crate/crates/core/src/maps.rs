//! Quantum maps that are not basic gates: CPTP maps, instruments,
//! probabilistic unitaries and classically controlled gates.
//!
//! On a state vector a CPTP map picks branch `i` with probability
//! `p_i = |K_i psi|^2` and renormalizes; on a density matrix it applies
//! `sum_i K_i rho K_i^dagger` deterministically.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, RngCore};

use crate::density::DensityMatrix;
use crate::error::{invalid, Error, Result};
use crate::gate::{named, BasicGate, PauliId};
use crate::matrix::ComplexMatrix;
use crate::operation::Gate;
use crate::state::StateVector;

/// Tolerance on `sum_i K_i^dagger K_i = I`.
pub const COMPLETENESS_TOLERANCE: f64 = 1e-8;

/// Named channel a map was built from; kept so it serializes by name.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseLabel {
    BitFlip { qubit: usize, p: f64 },
    Dephasing { qubit: usize, p: f64 },
    Depolarizing { qubit: usize, p: f64 },
    TwoQubitDepolarizing { qubits: [usize; 2], p: f64 },
    AmplitudeDamping { qubit: usize, gamma: f64 },
    Measurement { qubit: usize, register: usize },
}

fn union_qubits<'a>(gates: impl Iterator<Item = &'a BasicGate>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for g in gates {
        for q in g.qubits() {
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// Completely-positive trace-preserving map in operator-sum form.
#[derive(Clone, Debug, PartialEq)]
pub struct Cptp {
    kraus: Vec<BasicGate>,
    label: Option<NoiseLabel>,
}

impl Cptp {
    /// Validates `sum_i K_i^dagger K_i = I` on the union of the Kraus supports.
    pub fn new(kraus: Vec<BasicGate>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidMap("empty Kraus list".into()));
        }
        let qubits = union_qubits(kraus.iter());
        let dim = 1usize << qubits.len();
        let mut sum = ComplexMatrix::zeros(dim);
        for k in &kraus {
            let m = k.dense_on(&qubits)?;
            sum = sum.add(&m.adjoint().matmul(&m));
        }
        let err = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if err > COMPLETENESS_TOLERANCE {
            return Err(Error::InvalidMap(format!(
                "Kraus operators are not complete (deviation {err:.3e})"
            )));
        }
        Ok(Self { kraus, label: None })
    }

    pub(crate) fn labeled(mut self, label: NoiseLabel) -> Self {
        self.label = Some(label);
        self
    }

    pub fn kraus(&self) -> &[BasicGate] {
        &self.kraus
    }

    pub fn label(&self) -> Option<NoiseLabel> {
        self.label
    }

    pub fn qubits(&self) -> Vec<usize> {
        union_qubits(self.kraus.iter())
    }

    /// Sample a Kraus branch, apply it and renormalize; returns the branch index.
    ///
    /// Branch norms are evaluated in order and the scan stops as soon as the
    /// cumulative probability passes the drawn threshold. The last branch
    /// absorbs rounding in the remainder.
    pub fn apply<R: RngCore + ?Sized>(&self, state: &mut StateVector, rng: &mut R) -> Result<usize> {
        for k in &self.kraus {
            k.check_qubits(state.num_qubits())?;
        }
        let threshold = rng.random::<f64>() * state.get_squared_norm();
        let last = self.kraus.len() - 1;
        let mut acc = 0.0;
        let mut best: Option<(usize, f64, StateVector)> = None;
        for (i, k) in self.kraus.iter().enumerate() {
            let mut branch = state.clone();
            k.update_quantum_state(&mut branch)?;
            let p = branch.get_squared_norm();
            acc += p;
            if (threshold < acc || i == last) && p > 0.0 {
                branch.normalize(p)?;
                state.load(branch.amplitudes())?;
                return Ok(i);
            }
            if p > best.as_ref().map_or(0.0, |b| b.1) {
                best = Some((i, p, branch));
            }
        }
        match best {
            Some((i, p, mut branch)) => {
                branch.normalize(p)?;
                state.load(branch.amplitudes())?;
                Ok(i)
            }
            None => Err(Error::InvalidMap("every Kraus branch has zero probability".into())),
        }
    }

    /// `rho <- sum_i K_i rho K_i^dagger`
    pub fn apply_density(&self, rho: &mut DensityMatrix) -> Result<()> {
        let mut out: Option<DensityMatrix> = None;
        for k in &self.kraus {
            let mut term = rho.clone();
            k.update_density_matrix(&mut term)?;
            match &mut out {
                Some(acc) => acc.add_scaled(&term, 1.0),
                None => out = Some(term),
            }
        }
        *rho = out.expect("Kraus list is non-empty");
        Ok(())
    }
}

/// CPTP map that records the sampled branch in a classical register.
#[derive(Clone, Debug, PartialEq)]
pub struct Instrument {
    map: Cptp,
    register: usize,
}

impl Instrument {
    pub fn new(kraus: Vec<BasicGate>, register: usize) -> Result<Self> {
        Ok(Self {
            map: Cptp::new(kraus)?,
            register,
        })
    }

    pub fn map(&self) -> &Cptp {
        &self.map
    }

    pub fn register(&self) -> usize {
        self.register
    }

    pub fn label(&self) -> Option<NoiseLabel> {
        self.map.label
    }

    pub fn apply<R: RngCore + ?Sized>(&self, state: &mut StateVector, rng: &mut R) -> Result<usize> {
        let i = self.map.apply(state, rng)?;
        state.set_classical_value(self.register, i as i64);
        Ok(i)
    }

    /// Density matrices carry no registers, so the outcome is discarded.
    pub fn apply_density(&self, rho: &mut DensityMatrix) -> Result<()> {
        self.map.apply_density(rho)
    }
}

/// Mixture of gates drawn from a fixed distribution; any probability mass
/// left below one applies the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Probabilistic {
    probs: Vec<f64>,
    gates: Vec<BasicGate>,
    label: Option<NoiseLabel>,
}

impl Probabilistic {
    pub fn new(probs: Vec<f64>, gates: Vec<BasicGate>) -> Result<Self> {
        if probs.len() != gates.len() {
            return Err(Error::DimensionMismatch {
                expected: gates.len(),
                found: probs.len(),
            });
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidMap("probabilities must be non-negative".into()));
        }
        let total: f64 = probs.iter().sum();
        if total > 1.0 + 1e-12 {
            return Err(Error::InvalidMap(format!("probabilities sum to {total} > 1")));
        }
        Ok(Self {
            probs,
            gates,
            label: None,
        })
    }

    pub(crate) fn labeled(mut self, label: NoiseLabel) -> Self {
        self.label = Some(label);
        self
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn gates(&self) -> &[BasicGate] {
        &self.gates
    }

    pub fn label(&self) -> Option<NoiseLabel> {
        self.label
    }

    pub fn qubits(&self) -> Vec<usize> {
        union_qubits(self.gates.iter())
    }

    /// Returns the index of the applied gate, or `None` for the identity branch.
    pub fn apply<R: RngCore + ?Sized>(&self, state: &mut StateVector, rng: &mut R) -> Result<Option<usize>> {
        for g in &self.gates {
            g.check_qubits(state.num_qubits())?;
        }
        let u = rng.random::<f64>();
        let mut acc = 0.0;
        for (i, (p, g)) in self.probs.iter().zip(&self.gates).enumerate() {
            acc += p;
            if u < acc {
                g.update_quantum_state(state)?;
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn apply_density(&self, rho: &mut DensityMatrix) -> Result<()> {
        let rest = 1.0 - self.probs.iter().sum::<f64>();
        let mut out = rho.clone();
        out.scale(rest.max(0.0));
        for (p, g) in self.probs.iter().zip(&self.gates) {
            let mut term = rho.clone();
            g.update_density_matrix(&mut term)?;
            out.add_scaled(&term, *p);
        }
        *rho = out;
        Ok(())
    }
}

pub type RegisterPredicate = Arc<dyn Fn(&[i64]) -> bool + Send + Sync>;

/// Predicate over the classical registers.
#[derive(Clone)]
pub enum Condition {
    /// `registers[register] == value`, unwritten registers read as zero.
    RegisterEquals { register: usize, value: i64 },
    Custom(RegisterPredicate),
}

impl Condition {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&[i64]) -> bool + Send + Sync + 'static,
    {
        Condition::Custom(Arc::new(f))
    }

    pub fn evaluate(&self, registers: &[i64]) -> bool {
        match self {
            Condition::RegisterEquals { register, value } => {
                registers.get(*register).copied().unwrap_or(0) == *value
            }
            Condition::Custom(f) => f(registers),
        }
    }
}

impl fmt::Debug for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::RegisterEquals { register, value } => f
                .debug_struct("RegisterEquals")
                .field("register", register)
                .field("value", value)
                .finish(),
            Condition::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl PartialEq for Condition {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Condition::RegisterEquals { register: a, value: x },
                Condition::RegisterEquals { register: b, value: y },
            ) => a == b && x == y,
            (Condition::Custom(a), Condition::Custom(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

/// Gate applied only when a classical condition holds.
#[derive(Clone, Debug, PartialEq)]
pub struct Adaptive {
    gate: Box<Gate>,
    condition: Condition,
}

impl Adaptive {
    pub fn new(gate: impl Into<Gate>, condition: Condition) -> Self {
        Self {
            gate: Box::new(gate.into()),
            condition,
        }
    }

    pub fn gate(&self) -> &Gate {
        &self.gate
    }

    pub fn condition(&self) -> &Condition {
        &self.condition
    }

    /// Returns whether the inner gate fired.
    pub fn apply<R: RngCore + ?Sized>(&self, state: &mut StateVector, rng: &mut R) -> Result<bool> {
        if self.condition.evaluate(state.classical_registers()) {
            self.gate.update_quantum_state(state, rng)?;
            Ok(true)
        } else {
            Ok(false)
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("noise parameter {p} outside [0, 1]"));
    }
    Ok(())
}

/// X with probability `p`.
pub fn bit_flip_noise(qubit: usize, p: f64) -> Result<Probabilistic> {
    check_probability(p)?;
    Ok(Probabilistic::new(vec![p], vec![named::x(qubit)])?.labeled(NoiseLabel::BitFlip { qubit, p }))
}

/// Z with probability `p`.
pub fn dephasing_noise(qubit: usize, p: f64) -> Result<Probabilistic> {
    check_probability(p)?;
    Ok(Probabilistic::new(vec![p], vec![named::z(qubit)])?.labeled(NoiseLabel::Dephasing { qubit, p }))
}

/// X, Y, Z each with probability `p/3`.
pub fn depolarizing_noise(qubit: usize, p: f64) -> Result<Probabilistic> {
    check_probability(p)?;
    let gates = vec![named::x(qubit), named::y(qubit), named::z(qubit)];
    Ok(Probabilistic::new(vec![p / 3.0; 3], gates)?.labeled(NoiseLabel::Depolarizing { qubit, p }))
}

/// Each of the 15 non-identity two-qubit Paulis with probability `p/15`.
pub fn two_qubit_depolarizing_noise(q0: usize, q1: usize, p: f64) -> Result<Probabilistic> {
    check_probability(p)?;
    if q0 == q1 {
        return invalid("two-qubit depolarizing noise needs distinct qubits");
    }
    let ids = [PauliId::I, PauliId::X, PauliId::Y, PauliId::Z];
    let mut gates = Vec::with_capacity(15);
    for a in ids {
        for b in ids {
            if a == PauliId::I && b == PauliId::I {
                continue;
            }
            gates.push(BasicGate::pauli(vec![q0, q1], vec![a, b])?);
        }
    }
    Ok(Probabilistic::new(vec![p / 15.0; 15], gates)?
        .labeled(NoiseLabel::TwoQubitDepolarizing { qubits: [q0, q1], p }))
}

/// Kraus pair `K0 = [[1, 0], [0, sqrt(1-g)]]`, `K1 = [[0, sqrt(g)], [0, 0]]`.
pub fn amplitude_damping_noise(qubit: usize, gamma: f64) -> Result<Cptp> {
    check_probability(gamma)?;
    let k0 = BasicGate::diagonal(
        vec![qubit],
        vec![Complex64::new(1.0, 0.0), Complex64::new((1.0 - gamma).sqrt(), 0.0)],
    )?;
    let k1 = BasicGate::sparse(vec![qubit], vec![(0, 1, Complex64::new(gamma.sqrt(), 0.0))])?;
    Ok(Cptp::new(vec![k0, k1])?.labeled(NoiseLabel::AmplitudeDamping { qubit, gamma }))
}

/// Z-basis measurement storing the outcome in `register`.
pub fn measurement(qubit: usize, register: usize) -> Instrument {
    let map = Cptp::new(vec![named::p0(qubit), named::p1(qubit)])
        .expect("projectors are complete")
        .labeled(NoiseLabel::Measurement { qubit, register });
    Instrument { map, register }
}

/// Noise channel by name: `BitFlipNoise`, `DephasingNoise`, `DepolarizingNoise`,
/// `TwoQubitDepolarizingNoise`, `AmplitudeDampingNoise`.
pub fn noise_by_name(name: &str, qubits: &[usize], p: f64) -> Result<Gate> {
    let arity = if name == "TwoQubitDepolarizingNoise" { 2 } else { 1 };
    if qubits.len() != arity {
        return Err(Error::DimensionMismatch {
            expected: arity,
            found: qubits.len(),
        });
    }
    Ok(match name {
        "BitFlipNoise" => bit_flip_noise(qubits[0], p)?.into(),
        "DephasingNoise" => dephasing_noise(qubits[0], p)?.into(),
        "DepolarizingNoise" => depolarizing_noise(qubits[0], p)?.into(),
        "TwoQubitDepolarizingNoise" => two_qubit_depolarizing_noise(qubits[0], qubits[1], p)?.into(),
        "AmplitudeDampingNoise" => amplitude_damping_noise(qubits[0], p)?.into(),
        _ => return invalid(format!("unknown noise channel {name:?}")),
    })
}
