//! State-vector quantum circuit simulation.
//!
//! A [`StateVector`] holds `2^n` amplitudes with qubit `i` on bit `i` of
//! the basis index. Gates, noise maps and circuits act on it in place;
//! [`DensityMatrix`] supports the same gates and maps deterministically.
//!
//! ```
//! use qusim::{gate::named, QuantumCircuit, StateVector};
//!
//! let mut circuit = QuantumCircuit::new(2).unwrap();
//! circuit.add_gate(named::h(0)).unwrap();
//! circuit.add_gate(named::cnot(0, 1)).unwrap();
//!
//! let mut state = StateVector::new(2).unwrap();
//! circuit.update_quantum_state_seeded(&mut state, 0).unwrap();
//! assert!((state.amplitudes()[3].re - 0.5f64.sqrt()).abs() < 1e-12);
//! ```

pub mod bits;
pub mod circuit;
pub mod density;
pub mod error;
pub mod gate;
pub mod generators;
pub mod io;
pub mod maps;
pub mod matrix;
pub mod observable;
pub mod operation;
pub mod optimizer;
pub mod parallel;
pub mod state;

pub use circuit::{ParametricQuantumCircuit, QuantumCircuit};
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use gate::{
    BasicGate, CommutationBasis, Control, GateMatrix, GateName, ParametricKind, ParametricRotation, PauliId,
};
pub use generators::CircuitFamily;
pub use maps::{Adaptive, Condition, Cptp, Instrument, Probabilistic};
pub use matrix::ComplexMatrix;
pub use observable::{GeneralOperator, Observable, PauliProduct};
pub use operation::Gate;
pub use optimizer::Strategy;
pub use state::{
    inner_product, rng_from_entropy, rng_from_seed, tensor_product, BasisPattern, Outcome, SimRng, StateVector,
};
