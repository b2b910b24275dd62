use qusim::io::circuit_to_json;
use qusim::optimizer::optimize;
use qusim::{CircuitFamily, Strategy};

#[test]
fn ring_on_two_qubits_has_82_gates() {
    let c = CircuitFamily::CnotRing.generate(2, 0, 1).unwrap();
    assert_eq!(c.get_gate_count(), 82);
}

#[test]
fn same_seed_same_circuit() {
    for family in CircuitFamily::ALL {
        let a = circuit_to_json(&family.generate(6, 4, 3).unwrap()).unwrap();
        let b = circuit_to_json(&family.generate(6, 4, 3).unwrap()).unwrap();
        let c = circuit_to_json(&family.generate(6, 4, 4).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}

#[test]
fn light_pass_shrinks_cz_ladders() {
    for n in 7..=10 {
        let mut c = CircuitFamily::CzLadder.generate(n, 5, n as u64).unwrap();
        let before = c.get_gate_count();
        optimize(&mut c, Strategy::Light).unwrap();
        assert!(c.get_gate_count() < before, "n={n}");
    }
}

#[test]
fn small_qubit_counts_are_rejected() {
    for family in CircuitFamily::ALL {
        assert!(family.generate(1, 2, 0).is_err());
    }
}
