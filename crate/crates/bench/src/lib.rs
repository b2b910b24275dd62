//! Shared fixtures for the criterion benches.

use qusim::gate::named;
use qusim::{rng_from_seed, BasicGate, Observable, PauliId, StateVector};

pub const SIZES: [usize; 3] = [10, 14, 18];

pub fn haar_state(num_qubits: usize, seed: u64) -> StateVector {
    let mut s = StateVector::new(num_qubits).expect("bench sizes fit in memory");
    s.set_haar_random_state(seed);
    s
}

/// One representative gate per kernel, acting on the middle of the register.
pub fn kernel_cases(num_qubits: usize) -> Vec<(&'static str, BasicGate)> {
    let mut rng = rng_from_seed(5);
    let q = num_qubits / 2;
    vec![
        ("dense1", named::random_unitary(vec![q], &mut rng).unwrap()),
        ("dense2", named::random_unitary(vec![q, 0], &mut rng).unwrap()),
        ("dense3", named::random_unitary(vec![q, 0, num_qubits - 1], &mut rng).unwrap()),
        ("hadamard", named::h(q)),
        ("cnot", named::cnot(0, q)),
        ("rz", named::rz(q, 0.3)),
        (
            "pauli_rotation4",
            BasicGate::pauli_rotation(
                vec![0, 1, q, num_qubits - 1],
                vec![PauliId::X, PauliId::Y, PauliId::Z, PauliId::X],
                0.7,
            )
            .unwrap(),
        ),
        ("controlled_dense1", named::random_unitary(vec![q], &mut rng).unwrap().controlled(0, 1).unwrap()),
    ]
}

/// Transverse-field Ising chain, `sum Z_i Z_{i+1} + 0.5 sum X_i`.
pub fn ising(num_qubits: usize) -> Observable {
    let mut obs = Observable::new(num_qubits).unwrap();
    for i in 0..num_qubits {
        if i + 1 < num_qubits {
            obs.add_term(1.0, &format!("Z {i} Z {}", i + 1)).unwrap();
        }
        obs.add_term(0.5, &format!("X {i}")).unwrap();
    }
    obs
}
