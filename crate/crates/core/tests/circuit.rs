mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use qusim::gate::named;
use qusim::{rng_from_seed, BasicGate, Gate, ParametricQuantumCircuit, ParametricRotation, QuantumCircuit, StateVector};
use rand::Rng;

fn random_gate<R: Rng>(n: usize, rng: &mut R) -> BasicGate {
    let q = random_qubits(n, n.min(3), rng);
    match rng.random_range(0..6) {
        0 => named::h(q[0]),
        1 => named::rz(q[0], rng.random::<f64>() * PI),
        2 if n > 1 => named::cnot(q[0], q[1]),
        3 if n > 1 => named::random_unitary(q[..2].to_vec(), rng).unwrap(),
        4 if n > 2 => named::toffoli(q[0], q[1], q[2]),
        _ => named::u3(q[0], rng.random(), rng.random(), rng.random()),
    }
}

fn random_circuit<R: Rng>(n: usize, len: usize, rng: &mut R) -> QuantumCircuit {
    let mut c = QuantumCircuit::new(n).unwrap();
    for _ in 0..len {
        c.add_gate(random_gate(n, rng)).unwrap();
    }
    c
}

#[test]
fn circuit_matches_gate_by_gate_application() {
    let mut rng = rng_from_seed(41);
    for _ in 0..10 {
        let circuit = random_circuit(4, 8, &mut rng);
        let psi = random_state(4, &mut rng);
        let mut a = psi.clone();
        circuit.update_quantum_state(&mut a, &mut rng).unwrap();
        let mut b = psi.clone();
        for g in circuit.gates() {
            g.as_basic().unwrap().update_quantum_state(&mut b).unwrap();
        }
        assert_eq!(a.amplitudes(), b.amplitudes());
    }
}

#[test]
fn circuit_rejects_wrong_state_size() {
    let circuit = random_circuit(3, 2, &mut rng_from_seed(42));
    let mut s = StateVector::new(4).unwrap();
    assert!(circuit.update_quantum_state_seeded(&mut s, 0).is_err());
    let mut c = QuantumCircuit::new(2).unwrap();
    assert!(c.add_gate(named::x(2)).is_err());
}

#[test]
fn parametric_circuit_from_listing7() {
    let mut pc = ParametricQuantumCircuit::new(3).unwrap();
    pc.add_gate(named::h(0)).unwrap();
    pc.add_parametric_gate(ParametricRotation::rx(0, 0.1)).unwrap();
    pc.add_parametric_gate(ParametricRotation::ry(1, 0.1)).unwrap();
    pc.add_parametric_gate(
        ParametricRotation::pauli_rotation(vec![0, 1, 2], qusim::gate::pauli_ids(&[1, 2, 3]).unwrap(), 0.1).unwrap(),
    )
    .unwrap();
    assert_eq!(pc.get_parameter_count(), 3);

    pc.add_gate_at(named::cnot(0, 1), 0).unwrap();
    assert_eq!(pc.get_parametric_gate_position(0).unwrap(), 2);
    pc.set_parameter(0, PI).unwrap();
    assert_eq!(pc.get_parameter(0).unwrap(), PI);
}

#[test]
fn set_parameter_changes_execution() {
    let mut pc = ParametricQuantumCircuit::new(1).unwrap();
    pc.add_parametric_gate(ParametricRotation::rx(0, 0.1)).unwrap();
    pc.set_parameter(0, PI).unwrap();
    let mut a = StateVector::new(1).unwrap();
    pc.update_quantum_state(&mut a, &mut rng_from_seed(0)).unwrap();
    let mut b = StateVector::new(1).unwrap();
    named::rx(0, PI).update_quantum_state(&mut b).unwrap();
    assert_eq!(a.amplitudes(), b.amplitudes());
}

#[test]
fn depth_examples() {
    let mut c = QuantumCircuit::new(2).unwrap();
    c.add_gate(named::h(0)).unwrap();
    c.add_gate(named::h(1)).unwrap();
    assert_eq!(c.calculate_depth(), 1);
    c.add_gate(named::cnot(0, 1)).unwrap();
    assert_eq!(c.calculate_depth(), 2);
    assert_eq!(QuantumCircuit::new(3).unwrap().calculate_depth(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn concatenation_is_sequential(n in 1usize..=5, l1 in 0usize..8, l2 in 0usize..8, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let c1 = random_circuit(n, l1, &mut rng);
        let c2 = random_circuit(n, l2, &mut rng);
        let mut joined = c1.clone();
        joined.extend(&c2).unwrap();
        let psi = random_state(n, &mut rng);
        let mut a = psi.clone();
        joined.update_quantum_state_seeded(&mut a, 0).unwrap();
        let mut b = psi.clone();
        c1.update_quantum_state_seeded(&mut b, 0).unwrap();
        c2.update_quantum_state_seeded(&mut b, 0).unwrap();
        prop_assert!(max_dev(a.amplitudes(), b.amplitudes()) < 1e-12);
    }

    #[test]
    fn depth_ignores_order_of_disjoint_neighbours(n in 2usize..=6, len in 2usize..12, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let circuit = random_circuit(n, len, &mut rng);
        let depth = circuit.calculate_depth();
        for i in 0..len - 1 {
            let a = circuit.gates()[i].qubits();
            let b = circuit.gates()[i + 1].qubits();
            if a.iter().any(|q| b.contains(q)) {
                continue;
            }
            let mut swapped = circuit.clone();
            let g = swapped.remove_gate(i).unwrap();
            swapped.add_gate_at(g, i + 1).unwrap();
            prop_assert_eq!(swapped.calculate_depth(), depth);
        }
    }

    /// Drives a parametric circuit and a plain list model with the same
    /// random edits; the parameter table must always agree with the model.
    #[test]
    fn parameter_table_stays_in_sync(ops in proptest::collection::vec((0u8..4, any::<usize>()), 1..60)) {
        let mut pc = ParametricQuantumCircuit::new(2).unwrap();
        // model entry: Some(id) for a parametric gate tagged by its angle
        let mut model: Vec<Option<u32>> = Vec::new();
        let mut params: Vec<u32> = Vec::new();
        let mut next = 0u32;
        for (op, r) in ops {
            let len = model.len();
            match op {
                0 | 1 => {
                    let pos = r % (len + 1);
                    if op == 0 {
                        pc.add_parametric_gate_at(ParametricRotation::ry(r % 2, next as f64), pos).unwrap();
                        model.insert(pos, Some(next));
                        params.push(next);
                        next += 1;
                    } else {
                        pc.add_gate_at(named::x(r % 2), pos).unwrap();
                        model.insert(pos, None);
                    }
                }
                2 if len > 0 => {
                    let pos = r % len;
                    let removed = pc.remove_gate(pos).unwrap();
                    let was = model.remove(pos);
                    prop_assert_eq!(matches!(removed, Gate::Parametric(_)), was.is_some());
                    if let Some(id) = was {
                        params.retain(|&p| p != id);
                    }
                }
                _ if !params.is_empty() => {
                    // read through the table, then rewrite the same value
                    let k = r % params.len();
                    let v = pc.get_parameter(k).unwrap();
                    pc.set_parameter(k, v).unwrap();
                }
                _ => {}
            }
            prop_assert_eq!(pc.get_gate_count(), model.len());
            prop_assert_eq!(pc.get_parameter_count(), params.len());
            for (k, &id) in params.iter().enumerate() {
                let pos = pc.get_parametric_gate_position(k).unwrap();
                prop_assert_eq!(model[pos], Some(id));
                prop_assert_eq!(pc.get_parameter(k).unwrap(), id as f64);
            }
            prop_assert!(pc.get_parameter(params.len()).is_err());
        }
    }
}
