//! The element type of a circuit.

use rand::RngCore;

use crate::density::DensityMatrix;
use crate::error::{invalid, Result};
use crate::gate::{BasicGate, CommutationBasis, ParametricRotation};
use crate::maps::{Adaptive, Cptp, Instrument, Probabilistic};
use crate::state::StateVector;

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Basic(BasicGate),
    Parametric(ParametricRotation),
    Cptp(Cptp),
    Instrument(Instrument),
    Probabilistic(Probabilistic),
    Adaptive(Adaptive),
}

impl Gate {
    /// Every qubit the gate reads or writes, without duplicates.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Basic(g) => g.qubits(),
            Gate::Parametric(g) => g.targets().to_vec(),
            Gate::Cptp(m) => m.qubits(),
            Gate::Instrument(m) => m.map().qubits(),
            Gate::Probabilistic(m) => m.qubits(),
            Gate::Adaptive(a) => a.gate().qubits(),
        }
    }

    pub fn as_basic(&self) -> Option<&BasicGate> {
        match self {
            Gate::Basic(g) => Some(g),
            _ => None,
        }
    }

    /// Only basic gates take part in fusion.
    pub fn is_mergeable(&self) -> bool {
        matches!(self, Gate::Basic(_))
    }

    /// Whether the gate is deterministic and unitary-or-linear on a pure state.
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Gate::Basic(_) | Gate::Parametric(_))
    }

    pub fn commutation_at(&self, qubit: usize) -> CommutationBasis {
        match self {
            Gate::Basic(g) => g.commutation_at(qubit),
            Gate::Parametric(g) => g.to_basic().commutation_at(qubit),
            _ if self.qubits().contains(&qubit) => CommutationBasis::None,
            _ => CommutationBasis::Any,
        }
    }

    pub(crate) fn max_qubit(&self) -> Option<usize> {
        self.qubits().into_iter().max()
    }

    pub fn update_quantum_state<R: RngCore + ?Sized>(&self, state: &mut StateVector, rng: &mut R) -> Result<()> {
        match self {
            Gate::Basic(g) => g.update_quantum_state(state),
            Gate::Parametric(g) => g.to_basic().update_quantum_state(state),
            Gate::Cptp(m) => m.apply(state, rng).map(drop),
            Gate::Instrument(m) => m.apply(state, rng).map(drop),
            Gate::Probabilistic(m) => m.apply(state, rng).map(drop),
            Gate::Adaptive(a) => a.apply(state, rng).map(drop),
        }
    }

    /// Adaptive gates need classical registers and are rejected here.
    pub fn update_density_matrix(&self, rho: &mut DensityMatrix) -> Result<()> {
        match self {
            Gate::Basic(g) => g.update_density_matrix(rho),
            Gate::Parametric(g) => g.to_basic().update_density_matrix(rho),
            Gate::Cptp(m) => m.apply_density(rho),
            Gate::Instrument(m) => m.apply_density(rho),
            Gate::Probabilistic(m) => m.apply_density(rho),
            Gate::Adaptive(_) => invalid("adaptive gates cannot act on a density matrix"),
        }
    }
}

impl From<BasicGate> for Gate {
    fn from(g: BasicGate) -> Self {
        Gate::Basic(g)
    }
}

impl From<ParametricRotation> for Gate {
    fn from(g: ParametricRotation) -> Self {
        Gate::Parametric(g)
    }
}

impl From<Cptp> for Gate {
    fn from(m: Cptp) -> Self {
        Gate::Cptp(m)
    }
}

impl From<Instrument> for Gate {
    fn from(m: Instrument) -> Self {
        Gate::Instrument(m)
    }
}

impl From<Probabilistic> for Gate {
    fn from(m: Probabilistic) -> Self {
        Gate::Probabilistic(m)
    }
}

impl From<Adaptive> for Gate {
    fn from(a: Adaptive) -> Self {
        Gate::Adaptive(a)
    }
}
