//! Basic gates: operations of the form `|psi> -> K|psi>`.
//!
//! A [`BasicGate`] is a payload [`GateMatrix`] over an ordered target list
//! plus optional controls. Local sub-index bit `j` of the payload refers to
//! `targets[j]`. Structured payloads (diagonal, permutation, Pauli, ...) run
//! through dedicated kernels; see [`kernels`].

pub mod index;
pub(crate) mod kernels;
pub mod named;

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{invalid, Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::StateVector;

pub use index::IndexDecomposition;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Single-qubit Pauli label; numeric codes are 0=I, 1=X, 2=Y, 3=Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliId {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl PauliId {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn letter(self) -> char {
        match self {
            PauliId::I => 'I',
            PauliId::X => 'X',
            PauliId::Y => 'Y',
            PauliId::Z => 'Z',
        }
    }

    /// Entry `<row|sigma|col>` of the 2x2 matrix.
    pub fn element(self, row: usize, col: usize) -> Complex64 {
        match (self, row, col) {
            (PauliId::I, r, c) if r == c => ONE,
            (PauliId::X, r, c) if r != c => ONE,
            (PauliId::Y, 0, 1) => -I,
            (PauliId::Y, 1, 0) => I,
            (PauliId::Z, 0, 0) => ONE,
            (PauliId::Z, 1, 1) => -ONE,
            _ => ZERO,
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliId::I),
            'X' => Some(PauliId::X),
            'Y' => Some(PauliId::Y),
            'Z' => Some(PauliId::Z),
            _ => None,
        }
    }
}

impl TryFrom<u8> for PauliId {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(PauliId::I),
            1 => Ok(PauliId::X),
            2 => Ok(PauliId::Y),
            3 => Ok(PauliId::Z),
            _ => invalid(format!("Pauli id {v} is not in 0..=3")),
        }
    }
}

/// Parse integer Pauli codes.
pub fn pauli_ids(codes: &[u8]) -> Result<Vec<PauliId>> {
    codes.iter().map(|&c| PauliId::try_from(c)).collect()
}

/// Control qubit and the value (0 or 1) on which the gate acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub value: u8,
}

impl Control {
    pub fn new(qubit: usize, value: u8) -> Self {
        Self { qubit, value }
    }
}

/// Pauli basis a gate is block-diagonal in at one qubit.
///
/// `Any` means the gate acts trivially there; `None` means no basis is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommutationBasis {
    X,
    Y,
    Z,
    Any,
    None,
}

impl CommutationBasis {
    /// Basis of a product of two operators that are each block-diagonal
    /// in the given bases.
    pub fn intersect(self, other: CommutationBasis) -> CommutationBasis {
        use CommutationBasis::*;
        match (self, other) {
            (Any, b) | (b, Any) => b,
            (a, b) if a == b => a,
            _ => None,
        }
    }

    /// Whether two operators with these bases at a shared qubit can commute there.
    pub fn compatible(self, other: CommutationBasis) -> bool {
        use CommutationBasis::*;
        match (self, other) {
            (Any, _) | (_, Any) => true,
            (None, _) | (_, None) => false,
            (a, b) => a == b,
        }
    }

    fn of_pauli(p: PauliId) -> Self {
        match p {
            PauliId::I => CommutationBasis::Any,
            PauliId::X => CommutationBasis::X,
            PauliId::Y => CommutationBasis::Y,
            PauliId::Z => CommutationBasis::Z,
        }
    }
}

/// Gate payload on the target qubits.
#[derive(Clone, Debug, PartialEq)]
pub enum GateMatrix {
    Dense(ComplexMatrix),
    /// `(row, col, value)` triples.
    Sparse(Vec<(usize, usize, Complex64)>),
    Diagonal(Vec<Complex64>),
    /// `perm[z]` is the sub-index amplitude `z` moves to.
    Permutation(Vec<usize>),
    Pauli(Vec<PauliId>),
    /// `exp(i * angle * P / 2)`.
    PauliRotation { paulis: Vec<PauliId>, angle: f64 },
}

impl GateMatrix {
    /// Dense `2^m x 2^m` form; bit `j` of a sub-index is target `j`.
    pub fn to_dense(&self, num_targets: usize) -> ComplexMatrix {
        let dim = 1usize << num_targets;
        match self {
            GateMatrix::Dense(m) => m.clone(),
            GateMatrix::Sparse(entries) => {
                let mut m = ComplexMatrix::zeros(dim);
                for &(r, c, v) in entries {
                    m.set(r, c, v);
                }
                m
            }
            GateMatrix::Diagonal(d) => ComplexMatrix::from_diagonal(d),
            GateMatrix::Permutation(p) => {
                let mut m = ComplexMatrix::zeros(dim);
                for (z, &fz) in p.iter().enumerate() {
                    m.set(fz, z, ONE);
                }
                m
            }
            GateMatrix::Pauli(ids) => pauli_product_matrix(ids),
            GateMatrix::PauliRotation { paulis, angle } => {
                let p = pauli_product_matrix(paulis);
                let (s, c) = (angle / 2.0).sin_cos();
                ComplexMatrix::identity(dim)
                    .scale(Complex64::new(c, 0.0))
                    .add(&p.scale(Complex64::new(0.0, s)))
            }
        }
    }

    fn validate(&self, num_targets: usize) -> Result<()> {
        let dim = 1usize << num_targets;
        match self {
            GateMatrix::Dense(m) => {
                if m.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: m.dim(),
                    });
                }
            }
            GateMatrix::Sparse(entries) => {
                let mut seen = std::collections::HashSet::new();
                for &(r, c, _) in entries {
                    if r >= dim || c >= dim {
                        return invalid(format!("sparse entry ({r}, {c}) outside {dim}x{dim}"));
                    }
                    if !seen.insert((r, c)) {
                        return invalid(format!("duplicate sparse entry ({r}, {c})"));
                    }
                }
            }
            GateMatrix::Diagonal(d) => {
                if d.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: d.len(),
                    });
                }
            }
            GateMatrix::Permutation(p) => {
                if p.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: p.len(),
                    });
                }
                let mut seen = vec![false; dim];
                for &v in p {
                    if v >= dim || seen[v] {
                        return invalid("permutation is not a bijection");
                    }
                    seen[v] = true;
                }
            }
            GateMatrix::Pauli(ids) | GateMatrix::PauliRotation { paulis: ids, .. } => {
                if ids.len() != num_targets {
                    return Err(Error::DimensionMismatch {
                        expected: num_targets,
                        found: ids.len(),
                    });
                }
                if let GateMatrix::PauliRotation { angle, .. } = self {
                    if !angle.is_finite() {
                        return invalid("rotation angle must be finite");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Dense matrix of a Pauli product; `ids[j]` acts on local bit `j`.
pub fn pauli_product_matrix(ids: &[PauliId]) -> ComplexMatrix {
    let dim = 1usize << ids.len();
    let mut m = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            let v = ids
                .iter()
                .enumerate()
                .fold(ONE, |acc, (j, p)| acc * p.element((r >> j) & 1, (c >> j) & 1));
            m.set(r, c, v);
        }
    }
    m
}

/// Identity of a named gate, kept for serialization and fast-path dispatch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateName {
    Identity,
    X,
    Y,
    Z,
    H,
    S,
    Sdag,
    T,
    Tdag,
    SqrtX,
    SqrtXdag,
    SqrtY,
    SqrtYdag,
    Cnot,
    Cz,
    Swap,
    Toffoli,
    Fredkin,
    RX(f64),
    RY(f64),
    RZ(f64),
    U1(f64),
    U2(f64, f64),
    U3(f64, f64, f64),
    P0,
    P1,
}

impl GateName {
    pub fn as_str(&self) -> &'static str {
        match self {
            GateName::Identity => "I",
            GateName::X => "X",
            GateName::Y => "Y",
            GateName::Z => "Z",
            GateName::H => "H",
            GateName::S => "S",
            GateName::Sdag => "Sdag",
            GateName::T => "T",
            GateName::Tdag => "Tdag",
            GateName::SqrtX => "sqrtX",
            GateName::SqrtXdag => "sqrtXdag",
            GateName::SqrtY => "sqrtY",
            GateName::SqrtYdag => "sqrtYdag",
            GateName::Cnot => "CNOT",
            GateName::Cz => "CZ",
            GateName::Swap => "SWAP",
            GateName::Toffoli => "TOFFOLI",
            GateName::Fredkin => "FREDKIN",
            GateName::RX(_) => "RX",
            GateName::RY(_) => "RY",
            GateName::RZ(_) => "RZ",
            GateName::U1(_) => "U1",
            GateName::U2(..) => "U2",
            GateName::U3(..) => "U3",
            GateName::P0 => "P0",
            GateName::P1 => "P1",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            GateName::RX(a) | GateName::RY(a) | GateName::RZ(a) | GateName::U1(a) => vec![a],
            GateName::U2(a, b) => vec![a, b],
            GateName::U3(a, b, c) => vec![a, b, c],
            _ => Vec::new(),
        }
    }
}

/// Hand-written kernels for the most common named gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FastKernel {
    X,
    Y,
    Z,
    H,
    Cnot,
    Cz,
    Swap,
}

/// Gate acting as `K` on the full state, built from a payload on `targets`
/// and a set of controls.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicGate {
    targets: Vec<usize>,
    controls: Vec<Control>,
    matrix: GateMatrix,
    commutation: Vec<(usize, CommutationBasis)>,
    name: Option<GateName>,
    fast: Option<FastKernel>,
}

impl BasicGate {
    fn build(targets: Vec<usize>, matrix: GateMatrix) -> Result<Self> {
        check_distinct(&targets)?;
        matrix.validate(targets.len())?;
        let commutation = default_commutation(&targets, &matrix);
        Ok(Self {
            targets,
            controls: Vec::new(),
            matrix,
            commutation,
            name: None,
            fast: None,
        })
    }

    /// Dense gate matrix `K~` on `targets`. The matrix need not be unitary.
    pub fn dense(targets: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        Self::build(targets, GateMatrix::Dense(matrix))
    }

    /// Sparse gate matrix given as `(row, col, value)` triples.
    pub fn sparse(targets: Vec<usize>, entries: Vec<(usize, usize, Complex64)>) -> Result<Self> {
        Self::build(targets, GateMatrix::Sparse(entries))
    }

    pub fn diagonal(targets: Vec<usize>, diagonal: Vec<Complex64>) -> Result<Self> {
        Self::build(targets, GateMatrix::Diagonal(diagonal))
    }

    /// Permutation gate from a table: amplitude at sub-index `z` moves to `perm[z]`.
    pub fn permutation(targets: Vec<usize>, perm: Vec<usize>) -> Result<Self> {
        Self::build(targets, GateMatrix::Permutation(perm))
    }

    /// Reversible Boolean function; `f(z, dim)` is probed on every sub-index
    /// and must be a bijection on `0..dim`.
    pub fn reversible_boolean<F>(targets: Vec<usize>, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        let dim = 1usize << targets.len();
        let perm = (0..dim).map(|z| f(z, dim)).collect();
        Self::permutation(targets, perm)
    }

    pub fn pauli(targets: Vec<usize>, paulis: Vec<PauliId>) -> Result<Self> {
        Self::build(targets, GateMatrix::Pauli(paulis))
    }

    /// `exp(i * angle * P / 2)` for the Pauli product `P` on `targets`.
    pub fn pauli_rotation(targets: Vec<usize>, paulis: Vec<PauliId>, angle: f64) -> Result<Self> {
        Self::build(targets, GateMatrix::PauliRotation { paulis, angle })
    }

    pub(crate) fn with_name(mut self, name: GateName) -> Self {
        self.fast = match name {
            GateName::X => Some(FastKernel::X),
            GateName::Y => Some(FastKernel::Y),
            GateName::Z => Some(FastKernel::Z),
            GateName::H => Some(FastKernel::H),
            GateName::Cnot => Some(FastKernel::Cnot),
            GateName::Cz => Some(FastKernel::Cz),
            GateName::Swap => Some(FastKernel::Swap),
            _ => None,
        };
        self.name = Some(name);
        self
    }

    pub(crate) fn with_commutation(mut self, qubit: usize, basis: CommutationBasis) -> Self {
        if let Some(entry) = self.commutation.iter_mut().find(|(q, _)| *q == qubit) {
            entry.1 = basis;
        }
        self
    }

    /// Restrict the action to the subspace where `qubit == value`.
    pub fn add_control(&mut self, qubit: usize, value: u8) -> Result<()> {
        if value > 1 {
            return invalid(format!("control value {value} is not 0 or 1"));
        }
        if self.qubits().contains(&qubit) {
            return invalid(format!("qubit {qubit} is already used by this gate"));
        }
        self.controls.push(Control::new(qubit, value));
        self.commutation.push((qubit, CommutationBasis::Z));
        self.name = None;
        self.fast = None;
        Ok(())
    }

    /// Builder form of [`BasicGate::add_control`].
    pub fn controlled(mut self, qubit: usize, value: u8) -> Result<Self> {
        self.add_control(qubit, value)?;
        Ok(self)
    }

    #[inline]
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    #[inline]
    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    #[inline]
    pub fn matrix(&self) -> &GateMatrix {
        &self.matrix
    }

    pub fn name(&self) -> Option<GateName> {
        self.name
    }

    /// Targets followed by control qubits.
    pub fn qubits(&self) -> Vec<usize> {
        self.targets
            .iter()
            .copied()
            .chain(self.controls.iter().map(|c| c.qubit))
            .collect()
    }

    pub fn commutation(&self) -> &[(usize, CommutationBasis)] {
        &self.commutation
    }

    /// Basis at `qubit`; `Any` when the gate does not touch it.
    pub fn commutation_at(&self, qubit: usize) -> CommutationBasis {
        self.commutation
            .iter()
            .find(|(q, _)| *q == qubit)
            .map(|(_, b)| *b)
            .unwrap_or(CommutationBasis::Any)
    }

    /// Payload matrix with controls expanded, on the local qubit order of [`BasicGate::qubits`].
    pub fn to_dense_matrix(&self) -> ComplexMatrix {
        let mt = self.targets.len();
        let payload = self.matrix.to_dense(mt);
        if self.controls.is_empty() {
            return payload;
        }
        let mc = self.controls.len();
        let dim = 1usize << (mt + mc);
        let active = self
            .controls
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, c)| acc | ((c.value as usize) << j));
        let tmask = (1usize << mt) - 1;
        let mut m = ComplexMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                if r >> mt != c >> mt {
                    continue;
                }
                let v = if r >> mt == active {
                    payload.get(r & tmask, c & tmask)
                } else if r == c {
                    ONE
                } else {
                    ZERO
                };
                m.set(r, c, v);
            }
        }
        m
    }

    /// Full matrix on an ordered qubit list that contains every qubit of
    /// this gate; local bit `j` refers to `qubits[j]`.
    pub fn dense_on(&self, qubits: &[usize]) -> Result<ComplexMatrix> {
        let own = self.qubits();
        let positions = own
            .iter()
            .map(|q| {
                qubits
                    .iter()
                    .position(|u| u == q)
                    .ok_or_else(|| Error::InvalidArgument(format!("qubit {q} missing from {qubits:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let local = self.to_dense_matrix();
        let dim = 1usize << qubits.len();
        let own_mask = crate::bits::mask_of(&positions);
        let mut out = ComplexMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                if r & !own_mask != c & !own_mask {
                    continue;
                }
                let lr = crate::bits::gather_bits(r, &positions);
                let lc = crate::bits::gather_bits(c, &positions);
                out.set(r, c, local.get(lr, lc));
            }
        }
        Ok(out)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.matrix.to_dense(self.targets.len()).is_unitary(tol)
    }

    pub(crate) fn max_qubit(&self) -> Option<usize> {
        self.qubits().into_iter().max()
    }

    pub(crate) fn check_qubits(&self, num_qubits: usize) -> Result<()> {
        match self.max_qubit() {
            Some(q) if q >= num_qubits => Err(Error::QubitOutOfRange {
                index: q,
                num_qubits,
            }),
            _ => Ok(()),
        }
    }

    /// `|psi> <- K|psi>`.
    pub fn update_quantum_state(&self, state: &mut StateVector) -> Result<()> {
        let n = state.num_qubits();
        self.check_qubits(n)?;
        kernels::apply_basic(state.amplitudes_mut(), n, self);
        Ok(())
    }

    /// `rho <- K rho K^dagger`.
    pub fn update_density_matrix(&self, rho: &mut DensityMatrix) -> Result<()> {
        let n = rho.num_qubits();
        self.check_qubits(n)?;
        kernels::apply_density(rho.elements_mut(), n, self);
        Ok(())
    }
}

fn check_distinct(qubits: &[usize]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return invalid(format!("qubit {q} appears twice"));
        }
    }
    Ok(())
}

fn default_commutation(targets: &[usize], matrix: &GateMatrix) -> Vec<(usize, CommutationBasis)> {
    match matrix {
        GateMatrix::Pauli(ids) | GateMatrix::PauliRotation { paulis: ids, .. } => targets
            .iter()
            .zip(ids)
            .map(|(&q, &p)| (q, CommutationBasis::of_pauli(p)))
            .collect(),
        GateMatrix::Diagonal(_) => targets.iter().map(|&q| (q, CommutationBasis::Z)).collect(),
        _ => targets.iter().map(|&q| (q, CommutationBasis::None)).collect(),
    }
}

/// Rotation whose angle is a circuit parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricRotation {
    kind: ParametricKind,
    targets: Vec<usize>,
    paulis: Vec<PauliId>,
    angle: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParametricKind {
    RX,
    RY,
    RZ,
    PauliRotation,
}

impl ParametricRotation {
    pub fn rx(target: usize, angle: f64) -> Self {
        Self::single(ParametricKind::RX, PauliId::X, target, angle)
    }

    pub fn ry(target: usize, angle: f64) -> Self {
        Self::single(ParametricKind::RY, PauliId::Y, target, angle)
    }

    pub fn rz(target: usize, angle: f64) -> Self {
        Self::single(ParametricKind::RZ, PauliId::Z, target, angle)
    }

    fn single(kind: ParametricKind, p: PauliId, target: usize, angle: f64) -> Self {
        Self {
            kind,
            targets: vec![target],
            paulis: vec![p],
            angle,
        }
    }

    pub fn pauli_rotation(targets: Vec<usize>, paulis: Vec<PauliId>, angle: f64) -> Result<Self> {
        // validate through the fixed-angle constructor
        BasicGate::pauli_rotation(targets.clone(), paulis.clone(), angle)?;
        Ok(Self {
            kind: ParametricKind::PauliRotation,
            targets,
            paulis,
            angle,
        })
    }

    pub fn kind(&self) -> ParametricKind {
        self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn paulis(&self) -> &[PauliId] {
        &self.paulis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn set_angle(&mut self, angle: f64) {
        self.angle = angle;
    }

    /// Fixed-angle gate with the current parameter value.
    pub fn to_basic(&self) -> BasicGate {
        BasicGate::pauli_rotation(self.targets.clone(), self.paulis.clone(), self.angle)
            .expect("parametric rotation validated at construction")
    }
}

pub(crate) fn hadamard_matrix() -> ComplexMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    ComplexMatrix::new(2, vec![h, h, h, -h]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_codes() {
        assert_eq!(pauli_ids(&[0, 1, 2, 3]).unwrap(), vec![PauliId::I, PauliId::X, PauliId::Y, PauliId::Z]);
        assert!(pauli_ids(&[4]).is_err());
    }

    #[test]
    fn construction_validates_payload() {
        assert!(BasicGate::dense(vec![0], ComplexMatrix::identity(4)).is_err());
        assert!(BasicGate::dense(vec![0, 0], ComplexMatrix::identity(4)).is_err());
        assert!(BasicGate::diagonal(vec![0], vec![ONE]).is_err());
        assert!(BasicGate::sparse(vec![0], vec![(0, 0, ONE), (0, 0, ONE)]).is_err());
        assert!(BasicGate::sparse(vec![0], vec![(2, 0, ONE)]).is_err());
        assert!(BasicGate::permutation(vec![0], vec![0, 0]).is_err());
        assert!(BasicGate::reversible_boolean(vec![0, 1], |z, _| z / 2).is_err());
        assert!(BasicGate::pauli(vec![0, 1], vec![PauliId::X]).is_err());
        assert!(BasicGate::pauli_rotation(vec![0], vec![PauliId::X], f64::NAN).is_err());
    }

    #[test]
    fn add_control_rejects_overlap() {
        let mut g = BasicGate::pauli(vec![0], vec![PauliId::X]).unwrap();
        assert!(g.add_control(0, 1).is_err());
        assert!(g.add_control(1, 2).is_err());
        g.add_control(1, 1).unwrap();
        assert!(g.add_control(1, 0).is_err());
        assert_eq!(g.qubits(), vec![0, 1]);
        assert_eq!(g.commutation_at(1), CommutationBasis::Z);
    }

    #[test]
    fn controlled_dense_matrix_blocks() {
        let g = BasicGate::pauli(vec![0], vec![PauliId::X]).unwrap().controlled(1, 1).unwrap();
        let m = g.to_dense_matrix();
        // local order [target, control]: CNOT with control on bit 1
        let expected = ComplexMatrix::from_rows(&[
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
            [ZERO, ZERO, ONE, ZERO],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn commutation_algebra() {
        use CommutationBasis as B;
        assert_eq!(B::Z.intersect(B::Any), B::Z);
        assert_eq!(B::Z.intersect(B::X), B::None);
        assert!(B::X.compatible(B::Any));
        assert!(!B::X.compatible(B::Z));
        assert!(!B::None.compatible(B::None));
    }
}
