//! Pauli-sum operators and their expectation values.
//!
//! Each term is evaluated directly on the amplitudes; no dense operator is
//! ever formed.

use num_complex::Complex64;

use crate::circuit::QuantumCircuit;
use crate::error::{invalid, Error, Result};
use crate::gate::{BasicGate, PauliId};
use crate::parallel::blocked_sum;
use crate::state::StateVector;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coefficient times a tensor product of single-qubit Paulis.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliProduct {
    factors: Vec<(usize, PauliId)>,
    coef: Complex64,
}

impl PauliProduct {
    /// Identity factors are dropped; qubits must be distinct.
    pub fn new(factors: Vec<(usize, PauliId)>, coef: Complex64) -> Result<Self> {
        let factors: Vec<_> = factors.into_iter().filter(|(_, p)| *p != PauliId::I).collect();
        for (i, (q, _)) in factors.iter().enumerate() {
            if factors[..i].iter().any(|(u, _)| u == q) {
                return invalid(format!("qubit {q} appears twice in a Pauli product"));
            }
        }
        Ok(Self { factors, coef })
    }

    pub fn identity(coef: Complex64) -> Self {
        Self {
            factors: Vec::new(),
            coef,
        }
    }

    /// Parse `"X 0 X 1 Y 2 Z 4"`: axis letters alternating with qubit indices.
    pub fn parse(text: &str, coef: Complex64) -> Result<Self> {
        let mut factors = Vec::new();
        let mut tokens = token_offsets(text).into_iter();
        while let Some((pos, axis)) = tokens.next() {
            let pauli = match axis.len() {
                1 => PauliId::from_letter(axis.chars().next().unwrap_or(' ')),
                _ => None,
            }
            .ok_or_else(|| Error::Parse {
                position: pos,
                message: format!("expected a Pauli letter, found {axis:?}"),
            })?;
            let (ipos, index) = tokens.next().ok_or_else(|| Error::Parse {
                position: text.len(),
                message: format!("missing qubit index after {axis:?}"),
            })?;
            let qubit = index.parse::<usize>().map_err(|_| Error::Parse {
                position: ipos,
                message: format!("invalid qubit index {index:?}"),
            })?;
            factors.push((qubit, pauli));
        }
        Self::new(factors, coef).map_err(|e| Error::Parse {
            position: 0,
            message: e.to_string(),
        })
    }

    pub fn factors(&self) -> &[(usize, PauliId)] {
        &self.factors
    }

    pub fn coef(&self) -> Complex64 {
        self.coef
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.factors.iter().map(|(q, _)| *q).max()
    }

    pub fn targets(&self) -> Vec<usize> {
        self.factors.iter().map(|(q, _)| *q).collect()
    }

    pub fn paulis(&self) -> Vec<PauliId> {
        self.factors.iter().map(|(_, p)| *p).collect()
    }

    /// Pauli gate for this product, without the coefficient.
    pub fn to_gate(&self) -> BasicGate {
        BasicGate::pauli(self.targets(), self.paulis()).expect("factors are distinct")
    }

    fn masks(&self) -> (usize, usize, Complex64) {
        let mut flip = 0;
        let mut phase = 0;
        let mut ny = 0;
        for &(q, p) in &self.factors {
            match p {
                PauliId::X => flip |= 1 << q,
                PauliId::Y => {
                    flip |= 1 << q;
                    phase |= 1 << q;
                    ny += 1;
                }
                PauliId::Z => phase |= 1 << q,
                PauliId::I => {}
            }
        }
        (flip, phase, I.powu(ny))
    }

    /// `<bra| P |ket>` without the coefficient.
    fn raw_transition(&self, bra: &StateVector, ket: &StateVector) -> Complex64 {
        let (flip, phase, y_phase) = self.masks();
        let b = bra.amplitudes();
        let k = ket.amplitudes();
        let s = blocked_sum(ket.num_qubits(), ket.dim(), |x| {
            let v = b[x ^ flip].conj() * k[x];
            if (x & phase).count_ones() % 2 == 0 {
                v
            } else {
                -v
            }
        });
        y_phase * s
    }

    /// `coef * <psi| P |psi>`
    pub fn get_expectation_value(&self, state: &StateVector) -> Result<Complex64> {
        self.check_range(state.num_qubits())?;
        Ok(self.coef * self.raw_transition(state, state))
    }

    /// `coef * <bra| P |ket>`
    pub fn get_transition_amplitude(&self, bra: &StateVector, ket: &StateVector) -> Result<Complex64> {
        bra.check_same_size(ket)?;
        self.check_range(ket.num_qubits())?;
        Ok(self.coef * self.raw_transition(bra, ket))
    }

    fn check_range(&self, num_qubits: usize) -> Result<()> {
        match self.max_qubit() {
            Some(q) if q >= num_qubits => Err(Error::QubitOutOfRange { index: q, num_qubits }),
            _ => Ok(()),
        }
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn token_offsets(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

/// Sum of Pauli products with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralOperator {
    num_qubits: usize,
    terms: Vec<PauliProduct>,
}

impl GeneralOperator {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return invalid("an operator needs at least one qubit");
        }
        Ok(Self {
            num_qubits,
            terms: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliProduct] {
        &self.terms
    }

    pub fn get_term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, term: PauliProduct) -> Result<()> {
        term.check_range(self.num_qubits)?;
        self.terms.push(term);
        Ok(())
    }

    pub fn add_pauli_string(&mut self, text: &str, coef: Complex64) -> Result<()> {
        self.add_term(PauliProduct::parse(text, coef)?)
    }

    fn check_state(&self, state: &StateVector) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: state.num_qubits(),
            });
        }
        Ok(())
    }

    pub fn get_expectation_value(&self, state: &StateVector) -> Result<Complex64> {
        self.check_state(state)?;
        Ok(self.terms.iter().map(|t| t.coef * t.raw_transition(state, state)).sum())
    }

    pub fn get_transition_amplitude(&self, bra: &StateVector, ket: &StateVector) -> Result<Complex64> {
        self.check_state(bra)?;
        self.check_state(ket)?;
        Ok(self.terms.iter().map(|t| t.coef * t.raw_transition(bra, ket)).sum())
    }
}

/// Hermitian Pauli sum: every coefficient is real.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    inner: GeneralOperator,
}

impl Observable {
    pub fn new(num_qubits: usize) -> Result<Self> {
        Ok(Self {
            inner: GeneralOperator::new(num_qubits)?,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.inner.num_qubits
    }

    pub fn terms(&self) -> &[PauliProduct] {
        &self.inner.terms
    }

    pub fn get_term_count(&self) -> usize {
        self.inner.terms.len()
    }

    pub fn add_term(&mut self, coef: f64, text: &str) -> Result<()> {
        self.inner.add_pauli_string(text, Complex64::new(coef, 0.0))
    }

    pub fn add_product(&mut self, term: PauliProduct) -> Result<()> {
        if term.coef.im != 0.0 {
            return invalid(format!("observable coefficient {} is not real", term.coef));
        }
        self.inner.add_term(term)
    }

    /// Real part of the expectation; the imaginary part is rounding only.
    pub fn get_expectation_value(&self, state: &StateVector) -> Result<f64> {
        Ok(self.inner.get_expectation_value(state)?.re)
    }

    pub fn get_transition_amplitude(&self, bra: &StateVector, ket: &StateVector) -> Result<Complex64> {
        self.inner.get_transition_amplitude(bra, ket)
    }

    pub fn as_general(&self) -> &GeneralOperator {
        &self.inner
    }
}

impl TryFrom<GeneralOperator> for Observable {
    type Error = Error;

    fn try_from(op: GeneralOperator) -> Result<Self> {
        if let Some(t) = op.terms.iter().find(|t| t.coef.im != 0.0) {
            return invalid(format!("observable coefficient {} is not real", t.coef));
        }
        Ok(Self { inner: op })
    }
}

/// Append a first-order product formula for `exp(i * angle * O)`.
///
/// Each of the `slices` repetitions holds one Pauli rotation per term, in
/// term order, with rotation angle `2 * coef * angle / slices`.
pub fn add_observable_rotation(
    circuit: &mut QuantumCircuit,
    obs: &Observable,
    angle: f64,
    slices: usize,
) -> Result<()> {
    if slices == 0 {
        return invalid("slice count must be at least 1");
    }
    if obs.num_qubits() > circuit.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: circuit.num_qubits(),
            found: obs.num_qubits(),
        });
    }
    for _ in 0..slices {
        for term in obs.terms() {
            let theta = 2.0 * term.coef.re * angle / slices as f64;
            circuit.add_gate(BasicGate::pauli_rotation(term.targets(), term.paulis(), theta)?)?;
        }
    }
    Ok(())
}

fn parse_error<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

/// Parse a Python complex literal such as `-0.5+0j`, `1e-05-2j`, `3j` or `2`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s = text.trim();
    let Some(body) = s.strip_suffix(['j', 'J']) else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => t.parse::<f64>().ok(),
    };
    match split {
        Some(i) => Some(Complex64::new(body[..i].parse().ok()?, imag(&body[i..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

/// Split on `+` signs that sit outside parentheses and brackets.
fn split_entries(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parse the text form of an OpenFermion `QubitOperator`, e.g.
/// `(0.5+0j) [X0 Z1] + (-1+0j) []`.
///
/// The qubit count is one more than the largest index that appears.
pub fn parse_openfermion_text(text: &str) -> Result<GeneralOperator> {
    let mut terms = Vec::new();
    for (offset, entry) in split_entries(text) {
        let trimmed = entry.trim_start();
        let pos = offset + (entry.len() - trimmed.len());
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            return parse_error(pos, "empty term");
        }
        let Some(rest) = trimmed.strip_prefix('(') else {
            return parse_error(pos, "expected '(' before the coefficient");
        };
        let Some(close) = rest.find(')') else {
            return parse_error(pos, "unterminated coefficient");
        };
        let Some(coef) = parse_complex(&rest[..close]) else {
            return parse_error(pos + 1, format!("malformed complex literal {:?}", &rest[..close]));
        };
        let after = &rest[close + 1..];
        let body_pos = pos + 1 + close + 1 + (after.len() - after.trim_start().len());
        let after = after.trim_start();
        let Some(body) = after.strip_prefix('[').and_then(|b| b.strip_suffix(']')) else {
            return parse_error(body_pos, "expected a bracketed term");
        };
        let mut factors = Vec::new();
        for (tpos, token) in token_offsets(body) {
            let at = body_pos + 1 + tpos;
            let mut chars = token.chars();
            let Some(pauli) = chars.next().and_then(PauliId::from_letter) else {
                return parse_error(at, format!("unknown Pauli factor {token:?}"));
            };
            let Ok(qubit) = chars.as_str().parse::<usize>() else {
                return parse_error(at, format!("invalid qubit index in {token:?}"));
            };
            factors.push((qubit, pauli));
        }
        let term = PauliProduct::new(factors, coef).map_err(|e| Error::Parse {
            position: body_pos,
            message: e.to_string(),
        })?;
        terms.push(term);
    }
    let num_qubits = terms.iter().filter_map(PauliProduct::max_qubit).max().map_or(1, |q| q + 1);
    let mut op = GeneralOperator::new(num_qubits)?;
    for t in terms {
        op.add_term(t)?;
    }
    Ok(op)
}
