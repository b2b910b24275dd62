//! JSON encoding of circuits, observables and state vectors.
//!
//! Complex numbers are `[re, im]` pairs and angles are in radians. A
//! circuit document looks like
//!
//! ```json
//! {"num_qubits": 2, "gates": [
//!   {"kind": "H", "targets": [0]},
//!   {"kind": "CNOT", "targets": [1], "controls": [{"qubit": 0, "value": 1}]},
//!   {"kind": "AmplitudeDampingNoise", "targets": [1], "p": 0.1}
//! ]}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::QuantumCircuit;
use crate::error::{Error, Result};
use crate::gate::{named, BasicGate, GateMatrix, ParametricKind, ParametricRotation, PauliId};
use crate::maps::{self, Adaptive, Condition, Cptp, Instrument, NoiseLabel, Probabilistic};
use crate::matrix::ComplexMatrix;
use crate::observable::{GeneralOperator, PauliProduct};
use crate::operation::Gate;
use crate::state::StateVector;

type Pair = [f64; 2];

fn pair(c: Complex64) -> Pair {
    [c.re, c.im]
}

fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ControlDoc {
    qubit: usize,
    value: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ConditionDoc {
    register: usize,
    value: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    controls: Vec<ControlDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<(usize, usize, Pair)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagonal: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    permutation: Option<Vec<usize>>,
    /// One letter per target, e.g. `"XIZ"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    paulis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kraus: Option<Vec<GateDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    register: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probs: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gates: Option<Vec<GateDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    condition: Option<ConditionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gate: Option<Box<GateDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CircuitDoc {
    num_qubits: usize,
    gates: Vec<GateDoc>,
}

fn pauli_letters(ids: &[PauliId]) -> String {
    ids.iter().map(|p| p.letter()).collect()
}

fn parse_letters(s: &str) -> std::result::Result<Vec<PauliId>, String> {
    s.chars()
        .map(|c| PauliId::from_letter(c).ok_or_else(|| format!("unknown Pauli letter {c:?}")))
        .collect()
}

fn basic_doc(g: &BasicGate) -> GateDoc {
    let controls = g
        .controls()
        .iter()
        .map(|c| ControlDoc {
            qubit: c.qubit,
            value: c.value,
        })
        .collect();
    let mut doc = GateDoc {
        targets: g.targets().to_vec(),
        controls,
        ..GateDoc::default()
    };
    if let Some(name) = g.name() {
        doc.kind = name.as_str().to_string();
        doc.params = name.params();
        return doc;
    }
    match g.matrix() {
        GateMatrix::Dense(m) => {
            doc.kind = "dense".into();
            doc.matrix = Some(m.rows().map(|r| r.iter().copied().map(pair).collect()).collect());
        }
        GateMatrix::Sparse(e) => {
            doc.kind = "sparse".into();
            doc.entries = Some(e.iter().map(|&(r, c, v)| (r, c, pair(v))).collect());
        }
        GateMatrix::Diagonal(d) => {
            doc.kind = "diagonal".into();
            doc.diagonal = Some(d.iter().copied().map(pair).collect());
        }
        GateMatrix::Permutation(p) => {
            doc.kind = "permutation".into();
            doc.permutation = Some(p.clone());
        }
        GateMatrix::Pauli(ids) => {
            doc.kind = "pauli".into();
            doc.paulis = Some(pauli_letters(ids));
        }
        GateMatrix::PauliRotation { paulis, angle } => {
            doc.kind = "pauli_rotation".into();
            doc.paulis = Some(pauli_letters(paulis));
            doc.angle = Some(*angle);
        }
    }
    doc
}

fn noise_doc(label: NoiseLabel) -> GateDoc {
    let (kind, targets, p, register) = match label {
        NoiseLabel::BitFlip { qubit, p } => ("BitFlipNoise", vec![qubit], Some(p), None),
        NoiseLabel::Dephasing { qubit, p } => ("DephasingNoise", vec![qubit], Some(p), None),
        NoiseLabel::Depolarizing { qubit, p } => ("DepolarizingNoise", vec![qubit], Some(p), None),
        NoiseLabel::TwoQubitDepolarizing { qubits, p } => {
            ("TwoQubitDepolarizingNoise", qubits.to_vec(), Some(p), None)
        }
        NoiseLabel::AmplitudeDamping { qubit, gamma } => {
            ("AmplitudeDampingNoise", vec![qubit], Some(gamma), None)
        }
        NoiseLabel::Measurement { qubit, register } => ("Measurement", vec![qubit], None, Some(register)),
    };
    GateDoc {
        kind: kind.into(),
        targets,
        p,
        register,
        ..GateDoc::default()
    }
}

fn gate_doc(g: &Gate) -> Result<GateDoc> {
    Ok(match g {
        Gate::Basic(b) => basic_doc(b),
        Gate::Parametric(r) => GateDoc {
            kind: match r.kind() {
                ParametricKind::RX => "ParametricRX",
                ParametricKind::RY => "ParametricRY",
                ParametricKind::RZ => "ParametricRZ",
                ParametricKind::PauliRotation => "ParametricPauliRotation",
            }
            .into(),
            targets: r.targets().to_vec(),
            paulis: (r.kind() == ParametricKind::PauliRotation).then(|| pauli_letters(r.paulis())),
            angle: Some(r.angle()),
            ..GateDoc::default()
        },
        Gate::Cptp(m) => match m.label() {
            Some(label) => noise_doc(label),
            None => GateDoc {
                kind: "cptp".into(),
                kraus: Some(m.kraus().iter().map(basic_doc).collect()),
                ..GateDoc::default()
            },
        },
        Gate::Instrument(m) => match m.label() {
            Some(label) => noise_doc(label),
            None => GateDoc {
                kind: "instrument".into(),
                kraus: Some(m.map().kraus().iter().map(basic_doc).collect()),
                register: Some(m.register()),
                ..GateDoc::default()
            },
        },
        Gate::Probabilistic(m) => match m.label() {
            Some(label) => noise_doc(label),
            None => GateDoc {
                kind: "probabilistic".into(),
                probs: Some(m.probabilities().to_vec()),
                gates: Some(m.gates().iter().map(basic_doc).collect()),
                ..GateDoc::default()
            },
        },
        Gate::Adaptive(a) => {
            let Condition::RegisterEquals { register, value } = *a.condition() else {
                return Err(Error::InvalidArgument(
                    "adaptive gates with custom conditions cannot be serialized".into(),
                ));
            };
            GateDoc {
                kind: "adaptive".into(),
                condition: Some(ConditionDoc { register, value }),
                gate: Some(Box::new(gate_doc(a.gate())?)),
                ..GateDoc::default()
            }
        }
    })
}

fn need<T>(v: Option<T>, field: &str) -> std::result::Result<T, String> {
    v.ok_or_else(|| format!("missing field {field:?}"))
}

fn controlled(mut g: BasicGate, controls: &[ControlDoc]) -> std::result::Result<BasicGate, String> {
    for c in controls {
        g.add_control(c.qubit, c.value).map_err(|e| e.to_string())?;
    }
    Ok(g)
}

fn single_target(doc: &GateDoc) -> std::result::Result<usize, String> {
    match doc.targets[..] {
        [q] => Ok(q),
        _ => Err(format!("{} acts on exactly one qubit", doc.kind)),
    }
}

fn basic_from_doc(doc: &GateDoc) -> std::result::Result<BasicGate, String> {
    let s = |r: Result<BasicGate>| r.map_err(|e| e.to_string());
    let targets = doc.targets.clone();
    let g = match doc.kind.as_str() {
        "dense" => {
            let rows = need(doc.matrix.as_ref(), "matrix")?;
            let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().copied().map(complex).collect()).collect();
            let m = ComplexMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
            s(BasicGate::dense(targets, m))?
        }
        "sparse" => {
            let e = need(doc.entries.as_ref(), "entries")?;
            s(BasicGate::sparse(targets, e.iter().map(|&(r, c, v)| (r, c, complex(v))).collect()))?
        }
        "diagonal" => {
            let d = need(doc.diagonal.as_ref(), "diagonal")?;
            s(BasicGate::diagonal(targets, d.iter().copied().map(complex).collect()))?
        }
        "permutation" => s(BasicGate::permutation(targets, need(doc.permutation.clone(), "permutation")?))?,
        "pauli" => {
            let ids = parse_letters(need(doc.paulis.as_deref(), "paulis")?)?;
            s(BasicGate::pauli(targets, ids))?
        }
        "pauli_rotation" => {
            let ids = parse_letters(need(doc.paulis.as_deref(), "paulis")?)?;
            s(BasicGate::pauli_rotation(targets, ids, need(doc.angle, "angle")?))?
        }
        name => {
            // Named gates list their canonical controls; anything else is a
            // control added on top.
            let qubits: Vec<usize> = doc.controls.iter().map(|c| c.qubit).chain(targets).collect();
            if doc.controls.iter().any(|c| c.value != 1) {
                return Err(format!("{name} controls must have value 1"));
            }
            return s(named::named_gate(name, &qubits, &doc.params)).and_then(|g| {
                if g.controls().len() == doc.controls.len() {
                    Ok(g)
                } else {
                    Err(format!("{name} takes {} controls", g.controls().len()))
                }
            });
        }
    };
    controlled(g, &doc.controls)
}

fn basics(docs: Option<&Vec<GateDoc>>, field: &str) -> std::result::Result<Vec<BasicGate>, String> {
    need(docs, field)?.iter().map(basic_from_doc).collect()
}

fn gate_from_doc(doc: &GateDoc) -> std::result::Result<Gate, String> {
    let e = |r: Result<Gate>| r.map_err(|e| e.to_string());
    let p = || need(doc.p, "p");
    Ok(match doc.kind.as_str() {
        "ParametricRX" => ParametricRotation::rx(single_target(doc)?, need(doc.angle, "angle")?).into(),
        "ParametricRY" => ParametricRotation::ry(single_target(doc)?, need(doc.angle, "angle")?).into(),
        "ParametricRZ" => ParametricRotation::rz(single_target(doc)?, need(doc.angle, "angle")?).into(),
        "ParametricPauliRotation" => {
            let ids = parse_letters(need(doc.paulis.as_deref(), "paulis")?)?;
            e(ParametricRotation::pauli_rotation(doc.targets.clone(), ids, need(doc.angle, "angle")?).map(Gate::from))?
        }
        "cptp" => e(Cptp::new(basics(doc.kraus.as_ref(), "kraus")?).map(Gate::from))?,
        "instrument" => {
            let kraus = basics(doc.kraus.as_ref(), "kraus")?;
            e(Instrument::new(kraus, need(doc.register, "register")?).map(Gate::from))?
        }
        "probabilistic" => {
            let gates = basics(doc.gates.as_ref(), "gates")?;
            e(Probabilistic::new(need(doc.probs.clone(), "probs")?, gates).map(Gate::from))?
        }
        "BitFlipNoise" | "DephasingNoise" | "DepolarizingNoise" | "TwoQubitDepolarizingNoise"
        | "AmplitudeDampingNoise" => e(maps::noise_by_name(&doc.kind, &doc.targets, p()?))?,
        "Measurement" => maps::measurement(single_target(doc)?, need(doc.register, "register")?).into(),
        "adaptive" => {
            let c = need(doc.condition.as_ref(), "condition")?;
            let inner = gate_from_doc(need(doc.gate.as_deref(), "gate")?)?;
            Adaptive::new(
                inner,
                Condition::RegisterEquals {
                    register: c.register,
                    value: c.value,
                },
            )
            .into()
        }
        _ => basic_from_doc(doc)?.into(),
    })
}

/// Byte offset of a serde_json error location.
fn offset_of(text: &str, err: &serde_json::Error) -> usize {
    let before: usize = text.split_inclusive('\n').take(err.line().saturating_sub(1)).map(str::len).sum();
    before + err.column().saturating_sub(1)
}

fn parse_doc<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        position: offset_of(text, &e),
        message: e.to_string(),
    })
}

pub fn circuit_to_json(circuit: &QuantumCircuit) -> Result<String> {
    let doc = CircuitDoc {
        num_qubits: circuit.num_qubits(),
        gates: circuit.gates().iter().map(gate_doc).collect::<Result<_>>()?,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("documents always serialize"))
}

/// Parse a circuit document. Errors in a gate carry the gate's index as
/// their position; JSON syntax errors carry a byte offset.
pub fn circuit_from_json(text: &str) -> Result<QuantumCircuit> {
    let doc: CircuitDoc = parse_doc(text)?;
    let mut circuit = QuantumCircuit::new(doc.num_qubits)?;
    for (position, g) in doc.gates.iter().enumerate() {
        let gate = gate_from_doc(g).map_err(|message| Error::Parse { position, message })?;
        circuit.add_gate(gate).map_err(|e| Error::Parse {
            position,
            message: e.to_string(),
        })?;
    }
    Ok(circuit)
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coef: Pair,
    /// `"X 0 Z 2"` form; empty for the identity.
    paulis: String,
}

#[derive(Serialize, Deserialize)]
struct OperatorDoc {
    num_qubits: usize,
    terms: Vec<TermDoc>,
}

pub fn operator_to_json(op: &GeneralOperator) -> String {
    let terms = op
        .terms()
        .iter()
        .map(|t| TermDoc {
            coef: pair(t.coef()),
            paulis: t
                .factors()
                .iter()
                .map(|(q, p)| format!("{} {q}", p.letter()))
                .collect::<Vec<_>>()
                .join(" "),
        })
        .collect();
    let doc = OperatorDoc {
        num_qubits: op.num_qubits(),
        terms,
    };
    serde_json::to_string_pretty(&doc).expect("documents always serialize")
}

pub fn operator_from_json(text: &str) -> Result<GeneralOperator> {
    let doc: OperatorDoc = parse_doc(text)?;
    let mut op = GeneralOperator::new(doc.num_qubits)?;
    for (position, t) in doc.terms.iter().enumerate() {
        PauliProduct::parse(&t.paulis, complex(t.coef))
            .and_then(|term| op.add_term(term))
            .map_err(|e| Error::Parse {
                position,
                message: e.to_string(),
            })?;
    }
    Ok(op)
}

#[derive(Serialize, Deserialize)]
struct StateDoc {
    num_qubits: usize,
    amplitudes: Vec<Pair>,
}

pub fn state_to_json(state: &StateVector) -> String {
    let doc = StateDoc {
        num_qubits: state.num_qubits(),
        amplitudes: state.amplitudes().iter().copied().map(pair).collect(),
    };
    serde_json::to_string(&doc).expect("documents always serialize")
}

pub fn state_from_json(text: &str) -> Result<StateVector> {
    let doc: StateDoc = parse_doc(text)?;
    let state = StateVector::from_amplitudes(doc.amplitudes.into_iter().map(complex).collect())?;
    if state.num_qubits() != doc.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: doc.num_qubits,
            found: state.num_qubits(),
        });
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityMatrix;
    use crate::state::rng_from_seed;

    fn roundtrip(c: &QuantumCircuit) -> QuantumCircuit {
        circuit_from_json(&circuit_to_json(c).unwrap()).unwrap()
    }

    #[test]
    fn bell_roundtrip() {
        let mut c = QuantumCircuit::new(2).unwrap();
        c.add_gate(named::h(0)).unwrap();
        c.add_gate(named::cnot(0, 1)).unwrap();
        let back = roundtrip(&c);
        assert_eq!(back, c);
    }

    #[test]
    fn every_basic_kind_roundtrips_exactly() {
        let mut rng = rng_from_seed(3);
        let mut c = QuantumCircuit::new(4).unwrap();
        c.add_gate(named::random_unitary(vec![2, 0], &mut rng).unwrap()).unwrap();
        c.add_gate(named::random_unitary(vec![1], &mut rng).unwrap().controlled(3, 0).unwrap()).unwrap();
        c.add_gate(BasicGate::sparse(vec![1], vec![(0, 1, Complex64::new(0.1, -0.3))]).unwrap()).unwrap();
        c.add_gate(BasicGate::diagonal(vec![3], vec![Complex64::new(0.0, 1.0), Complex64::new(1.0 / 3.0, 0.0)]).unwrap())
            .unwrap();
        c.add_gate(BasicGate::permutation(vec![0, 1], vec![3, 0, 1, 2]).unwrap()).unwrap();
        c.add_gate(BasicGate::pauli(vec![0, 2], vec![PauliId::Y, PauliId::I]).unwrap()).unwrap();
        c.add_gate(BasicGate::pauli_rotation(vec![1, 3], vec![PauliId::X, PauliId::Z], 0.1).unwrap())
            .unwrap();
        c.add_gate(named::u3(2, 0.1, 0.2, 0.3)).unwrap();
        c.add_gate(named::toffoli(0, 1, 2)).unwrap();
        c.add_gate(named::fredkin(3, 1, 2)).unwrap();
        c.add_gate(named::swap(0, 3)).unwrap();
        c.add_gate(ParametricRotation::rx(0, 0.25)).unwrap();
        c.add_gate(ParametricRotation::pauli_rotation(vec![0, 1], vec![PauliId::Z, PauliId::Y], -1.5).unwrap())
            .unwrap();
        assert_eq!(roundtrip(&c), c);
    }

    #[test]
    fn maps_roundtrip() {
        let mut c = QuantumCircuit::new(2).unwrap();
        c.add_gate(maps::depolarizing_noise(0, 0.1).unwrap()).unwrap();
        c.add_gate(maps::two_qubit_depolarizing_noise(0, 1, 0.2).unwrap()).unwrap();
        c.add_gate(maps::amplitude_damping_noise(1, 0.1).unwrap()).unwrap();
        c.add_gate(maps::measurement(0, 4)).unwrap();
        c.add_gate(Cptp::new(vec![named::p0(1), named::p1(1)]).unwrap()).unwrap();
        c.add_gate(Instrument::new(vec![named::p0(1), named::p1(1)], 2).unwrap()).unwrap();
        c.add_gate(Probabilistic::new(vec![0.5], vec![named::h(0)]).unwrap()).unwrap();
        c.add_gate(Adaptive::new(named::x(0), Condition::RegisterEquals { register: 4, value: 1 })).unwrap();
        assert_eq!(roundtrip(&c), c);

        let mut amp = QuantumCircuit::new(1).unwrap();
        amp.add_gate(named::h(0)).unwrap();
        amp.add_gate(maps::amplitude_damping_noise(0, 0.1).unwrap()).unwrap();
        let back = roundtrip(&amp);
        let mut r1 = DensityMatrix::new(1).unwrap();
        let mut r2 = r1.clone();
        amp.update_density_matrix(&mut r1).unwrap();
        back.update_density_matrix(&mut r2).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn custom_condition_is_not_serializable() {
        let mut c = QuantumCircuit::new(1).unwrap();
        c.add_gate(Adaptive::new(named::x(0), Condition::custom(|_| true))).unwrap();
        assert!(circuit_to_json(&c).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let bad_kind = r#"{"num_qubits": 1, "gates": [{"kind": "H", "targets": [0]}, {"kind": "Hadamard", "targets": [0]}]}"#;
        assert!(matches!(circuit_from_json(bad_kind), Err(Error::Parse { position: 1, .. })));

        let out_of_range = r#"{"num_qubits": 1, "gates": [{"kind": "X", "targets": [1]}]}"#;
        assert!(matches!(circuit_from_json(out_of_range), Err(Error::Parse { position: 0, .. })));

        let missing = r#"{"num_qubits": 1, "gates": [{"kind": "dense", "targets": [0]}]}"#;
        assert!(circuit_from_json(missing).is_err());

        let syntax = "{\"num_qubits\": 1,\n \"gates\": [}";
        match circuit_from_json(syntax) {
            Err(Error::Parse { position, .. }) => assert_eq!(&syntax[position..position + 1], "}"),
            other => panic!("{other:?}"),
        }

        let bad_control = r#"{"num_qubits": 2, "gates": [{"kind": "CNOT", "targets": [1], "controls": [{"qubit": 0, "value": 0}]}]}"#;
        assert!(circuit_from_json(bad_control).is_err());
    }

    #[test]
    fn operator_and_state_roundtrip() {
        let op = crate::observable::parse_openfermion_text("(0.5-0.25j) [X0 Z2] + (1+0j) []").unwrap();
        assert_eq!(operator_from_json(&operator_to_json(&op)).unwrap(), op);

        let mut s = StateVector::new(3).unwrap();
        s.set_haar_random_state(5);
        assert_eq!(state_from_json(&state_to_json(&s)).unwrap().amplitudes(), s.amplitudes());
    }
}
