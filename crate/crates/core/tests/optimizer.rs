mod common;

use common::*;
use proptest::prelude::*;
use qusim::gate::named::{self, named_gate};
use qusim::maps::measurement;
use qusim::optimizer::{commutation_check, merge, merge_all, optimize, optimize_light};
use qusim::{rng_from_seed, BasicGate, PauliId, QuantumCircuit, StateVector, Strategy};
use rand::Rng;

const ONE_QUBIT: [&str; 21] = [
    "I", "X", "Y", "Z", "H", "S", "Sdag", "T", "Tdag", "sqrtX", "sqrtXdag", "sqrtY", "sqrtYdag", "P0", "P1", "RX",
    "RY", "RZ", "U1", "U2", "U3",
];

fn every_named_gate(n: usize) -> Vec<BasicGate> {
    let mut out = Vec::new();
    let params = |name: &str| match name {
        "RX" | "RY" | "RZ" | "U1" => vec![0.7],
        "U2" => vec![0.3, 1.1],
        "U3" => vec![0.3, 1.1, -0.4],
        _ => vec![],
    };
    for name in ONE_QUBIT {
        for q in 0..n {
            out.push(named_gate(name, &[q], &params(name)).unwrap());
        }
    }
    for name in ["CNOT", "CZ", "SWAP"] {
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                out.push(named_gate(name, &[a, b], &[]).unwrap());
            }
        }
    }
    for name in ["TOFFOLI", "FREDKIN"] {
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                for c in (0..n).filter(|&c| c != a && c != b) {
                    out.push(named_gate(name, &[a, b, c], &[]).unwrap());
                }
            }
        }
    }
    out
}

fn full_matrix(n: usize, g: &BasicGate) -> CMat {
    operator_of(n, |s| g.update_quantum_state(s).unwrap())
}

#[test]
fn commutation_check_is_sound_on_named_gates() {
    for n in 1..=4 {
        let gates = every_named_gate(n);
        let mats: Vec<CMat> = gates.iter().map(|g| full_matrix(n, g)).collect();
        let mut claimed = 0;
        for i in 0..gates.len() {
            for j in 0..gates.len() {
                if !commutation_check(&gates[i], &gates[j]) {
                    continue;
                }
                claimed += 1;
                let comm = &mats[i] * &mats[j] - &mats[j] * &mats[i];
                let dev = comm.iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(dev < 1e-10, "{:?} and {:?} claimed to commute", gates[i], gates[j]);
            }
        }
        assert!(claimed > gates.len(), "n={n}: check never fires");
    }
}

#[test]
fn commutation_examples() {
    assert!(commutation_check(&named::cz(0, 1), &named::z(0)));
    assert!(commutation_check(&named::cnot(0, 1), &named::x(1)));
    assert!(commutation_check(&named::cnot(0, 1), &named::z(0)));
    assert!(!commutation_check(&named::cnot(0, 1), &named::z(1)));
    assert!(!commutation_check(&named::h(0), &named::z(0)));
    assert!(commutation_check(&named::h(0), &named::z(1)));
}

fn random_basic<R: Rng>(n: usize, rng: &mut R) -> BasicGate {
    let q = random_qubits(n, n.min(3), rng);
    let two = n > 1;
    match rng.random_range(0..9) {
        0 => named::h(q[0]),
        1 => named::rz(q[0], rng.random()),
        2 if two => named::cz(q[0], q[1]),
        3 if two => named::cnot(q[0], q[1]),
        4 if two => named::random_unitary(q[..2].to_vec(), rng).unwrap(),
        5 if two => BasicGate::pauli_rotation(q[..2].to_vec(), vec![PauliId::X, PauliId::Z], rng.random()).unwrap(),
        6 if n > 2 => named::x(q[0]).controlled(q[1], 0).unwrap().controlled(q[2], 1).unwrap(),
        7 => BasicGate::diagonal(vec![q[0]], vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap(),
        _ => named::sqrt_x(q[0]),
    }
}

fn random_circuit<R: Rng>(n: usize, len: usize, rng: &mut R) -> QuantumCircuit {
    let mut circuit = QuantumCircuit::new(n).unwrap();
    for _ in 0..len {
        circuit.add_gate(random_basic(n, rng)).unwrap();
    }
    circuit
}

fn run(circuit: &QuantumCircuit, psi: &StateVector) -> StateVector {
    let mut s = psi.clone();
    circuit.update_quantum_state_seeded(&mut s, 0).unwrap();
    s
}

#[test]
fn pair_merge_matches_sequential_application() {
    let mut rng = rng_from_seed(51);
    for _ in 0..20 {
        let a = random_basic(5, &mut rng);
        let b = random_basic(5, &mut rng);
        let merged = merge(&a, &b);
        let psi = random_state(5, &mut rng);
        let mut x = psi.clone();
        merged.update_quantum_state(&mut x).unwrap();
        let mut y = psi.clone();
        a.update_quantum_state(&mut y).unwrap();
        b.update_quantum_state(&mut y).unwrap();
        assert!(max_dev(x.amplitudes(), y.amplitudes()) < 1e-12);
    }
}

#[test]
fn merge_all_matches_circuit() {
    let mut rng = rng_from_seed(52);
    let circuit = random_circuit(6, 10, &mut rng);
    let merged = merge_all(&circuit).unwrap();
    for _ in 0..5 {
        let psi = random_state(6, &mut rng);
        let mut x = psi.clone();
        merged.update_quantum_state(&mut x).unwrap();
        assert!(max_dev(x.amplitudes(), run(&circuit, &psi).amplitudes()) < 1e-12);
    }

    let empty = merge_all(&QuantumCircuit::new(2).unwrap()).unwrap();
    let psi = random_state(2, &mut rng);
    let mut x = psi.clone();
    empty.update_quantum_state(&mut x).unwrap();
    assert_eq!(x.amplitudes(), psi.amplitudes());

    let mut fenced = circuit.clone();
    fenced.add_gate(measurement(0, 0)).unwrap();
    assert!(merge_all(&fenced).is_err());
}

#[test]
fn maps_act_as_fences() {
    let mut circuit = QuantumCircuit::new(2).unwrap();
    circuit.add_gate(named::h(0)).unwrap();
    circuit.add_gate(measurement(1, 0)).unwrap();
    circuit.add_gate(named::h(0)).unwrap();
    for strategy in [Strategy::Light, Strategy::Heavy { block_size: 2 }] {
        let mut c = circuit.clone();
        optimize(&mut c, strategy).unwrap();
        assert_eq!(c.get_gate_count(), 3, "{strategy:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn passes_preserve_semantics(n in 1usize..=8, len in 0usize..25, seed in any::<u64>(), block in 1usize..=4) {
        let mut rng = rng_from_seed(seed);
        let circuit = random_circuit(n, len, &mut rng);
        let inputs: Vec<StateVector> = (0..2).map(|_| random_state(n, &mut rng)).collect();
        for strategy in [Strategy::Light, Strategy::Heavy { block_size: block }] {
            let mut optimized = circuit.clone();
            optimize(&mut optimized, strategy).unwrap();
            prop_assert!(optimized.get_gate_count() <= circuit.get_gate_count());
            for psi in &inputs {
                let f = fidelity(&run(&optimized, psi), &run(&circuit, psi));
                prop_assert!(f >= 1.0 - 1e-10, "{:?}: fidelity {}", strategy, f);
            }
        }
    }

    #[test]
    fn heavy_respects_block_size(n in 2usize..=7, len in 0usize..25, seed in any::<u64>(), block in 1usize..=4) {
        let mut rng = rng_from_seed(seed);
        let circuit = random_circuit(n, len, &mut rng);
        let widest = circuit.gates().iter().map(|g| g.qubits().len()).max().unwrap_or(0);
        let mut optimized = circuit.clone();
        optimize(&mut optimized, Strategy::Heavy { block_size: block }).unwrap();
        for g in optimized.gates() {
            prop_assert!(g.qubits().len() <= block.max(widest));
        }
    }

    #[test]
    fn light_is_idempotent(n in 1usize..=6, len in 0usize..30, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let mut circuit = random_circuit(n, len, &mut rng);
        optimize_light(&mut circuit);
        let once = circuit.get_gate_count();
        optimize_light(&mut circuit);
        prop_assert_eq!(circuit.get_gate_count(), once);
    }

    #[test]
    fn merge_is_associative(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let n = 4;
        let (a, b, cc) = (random_basic(n, &mut rng), random_basic(n, &mut rng), random_basic(n, &mut rng));
        let left = merge(&merge(&a, &b), &cc);
        let right = merge(&a, &merge(&b, &cc));
        let psi = random_state(n, &mut rng);
        let mut x = psi.clone();
        left.update_quantum_state(&mut x).unwrap();
        let mut y = psi.clone();
        right.update_quantum_state(&mut y).unwrap();
        prop_assert!(max_dev(x.amplitudes(), y.amplitudes()) < 1e-11);
    }
}
