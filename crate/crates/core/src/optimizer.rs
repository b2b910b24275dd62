//! Gate fusion.
//!
//! Both passes only touch runs of basic gates. Any map, parametric or
//! adaptive gate is a fence that no merge crosses.

use crate::circuit::QuantumCircuit;
use crate::error::{invalid, Error, Result};
use crate::gate::{BasicGate, CommutationBasis};
use crate::matrix::ComplexMatrix;
use crate::operation::Gate;

/// Fusion strategy applied before simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    None,
    Light,
    Heavy { block_size: usize },
}

/// Apply `strategy` in place.
pub fn optimize(circuit: &mut QuantumCircuit, strategy: Strategy) -> Result<()> {
    match strategy {
        Strategy::None => Ok(()),
        Strategy::Light => {
            optimize_light(circuit);
            Ok(())
        }
        Strategy::Heavy { block_size } => optimize_heavy(circuit, block_size),
    }
}

/// True only if the two gates provably commute: on every shared qubit the
/// commutation bases must agree (or one side acts trivially).
pub fn commutation_check(a: &BasicGate, b: &BasicGate) -> bool {
    a.qubits()
        .into_iter()
        .all(|q| !b.qubits().contains(&q) || a.commutation_at(q).compatible(b.commutation_at(q)))
}

/// Dense gate equal to applying `g1` and then `g2`.
///
/// The result acts on `g1`'s qubits followed by any new qubits of `g2`;
/// controls are folded into the matrix.
pub fn merge(g1: &BasicGate, g2: &BasicGate) -> BasicGate {
    let mut qubits = g1.qubits();
    for q in g2.qubits() {
        if !qubits.contains(&q) {
            qubits.push(q);
        }
    }
    let m1 = g1.dense_on(&qubits).expect("union contains g1");
    let m2 = g2.dense_on(&qubits).expect("union contains g2");
    let mut merged = BasicGate::dense(qubits.clone(), m2.matmul(&m1)).expect("distinct union qubits");
    for q in qubits {
        merged = merged.with_commutation(q, g1.commutation_at(q).intersect(g2.commutation_at(q)));
    }
    merged
}

/// Fold every gate of `circuit` into one dense gate.
///
/// An empty circuit gives the identity on no qubits.
pub fn merge_all(circuit: &QuantumCircuit) -> Result<BasicGate> {
    let mut acc = BasicGate::dense(Vec::new(), ComplexMatrix::identity(1))?;
    for (position, g) in circuit.gates().iter().enumerate() {
        let g = g.as_basic().ok_or(Error::NotMergeable { position })?;
        acc = merge(&acc, g);
    }
    Ok(acc)
}

/// Per-gate data the passes consult repeatedly.
struct Slot {
    qubits: Vec<usize>,
    bases: Vec<CommutationBasis>,
    mergeable: bool,
}

impl Slot {
    fn of(g: &Gate) -> Self {
        let qubits = g.qubits();
        let bases = qubits.iter().map(|&q| g.commutation_at(q)).collect();
        Self {
            qubits,
            bases,
            mergeable: g.is_mergeable(),
        }
    }

    fn overlaps(&self, other: &Slot) -> bool {
        self.qubits.iter().any(|q| other.qubits.contains(q))
    }

    fn subset_of(&self, other: &Slot) -> bool {
        self.qubits.iter().all(|q| other.qubits.contains(q))
    }

    fn union_len(&self, other: &Slot) -> usize {
        self.qubits.len() + other.qubits.iter().filter(|q| !self.qubits.contains(q)).count()
    }

    fn commutes(&self, other: &Slot) -> bool {
        self.qubits.iter().zip(&self.bases).all(|(q, &b)| {
            match other.qubits.iter().position(|u| u == q) {
                Some(k) => b.compatible(other.bases[k]),
                None => true,
            }
        })
    }
}

struct Work<'a> {
    gates: &'a mut Vec<Gate>,
    slots: Vec<Slot>,
}

impl<'a> Work<'a> {
    fn new(gates: &'a mut Vec<Gate>) -> Self {
        let slots = gates.iter().map(Slot::of).collect();
        Self { gates, slots }
    }

    fn basic(&self, k: usize) -> &BasicGate {
        self.gates[k].as_basic().expect("slot marked mergeable")
    }

    /// Replace gate `keep` by `merge(i, j)` and delete gate `drop`.
    fn fuse(&mut self, i: usize, j: usize, keep: usize, drop: usize) {
        let merged: Gate = merge(self.basic(i), self.basic(j)).into();
        self.slots[keep] = Slot::of(&merged);
        self.gates[keep] = merged;
        self.gates.remove(drop);
        self.slots.remove(drop);
    }
}

/// Merge dependency-adjacent gates when one gate's qubit set contains the
/// other's, repeating until nothing changes. The gate count never grows.
pub fn optimize_light(circuit: &mut QuantumCircuit) {
    let mut w = Work::new(circuit.gates_mut());
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < w.gates.len() {
            if !w.slots[i].mergeable {
                i += 1;
                continue;
            }
            // The first later gate sharing a qubit with gate i; everything in
            // between is disjoint from gate i.
            let next = (i + 1..w.gates.len())
                .take_while(|&j| w.slots[j].mergeable)
                .find(|&j| w.slots[i].overlaps(&w.slots[j]));
            if let Some(j) = next {
                if w.slots[i].subset_of(&w.slots[j]) || w.slots[j].subset_of(&w.slots[i]) {
                    // Gate i slides forward to sit right before gate j.
                    w.fuse(i, j, j, i);
                    changed = true;
                    continue;
                }
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
}

/// Merge pairs whose union spans at most `block_size` qubits, moving one
/// of them past intermediate gates it provably commutes with. Repeats
/// until nothing changes.
pub fn optimize_heavy(circuit: &mut QuantumCircuit, block_size: usize) -> Result<()> {
    if block_size == 0 {
        return invalid("block size must be at least 1");
    }
    let mut w = Work::new(circuit.gates_mut());
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < w.gates.len() {
            if w.slots[i].mergeable && heavy_step(&mut w, i, block_size) {
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(())
}

/// Try one merge for gate `i`; returns whether the gate list changed.
fn heavy_step(w: &mut Work<'_>, i: usize, block_size: usize) -> bool {
    // whether gate i commutes with every gate strictly between i and j
    let mut i_slides = true;
    for j in i + 1..w.gates.len() {
        if !w.slots[j].mergeable {
            return false;
        }
        let (si, sj) = (&w.slots[i], &w.slots[j]);
        if si.overlaps(sj) && si.union_len(sj) <= block_size {
            if i_slides {
                w.fuse(i, j, j, i);
                return true;
            }
            if (i + 1..j).all(|k| sj.commutes(&w.slots[k])) {
                w.fuse(i, j, i, j);
                return true;
            }
        }
        if i_slides && !si.commutes(sj) {
            i_slides = false;
        }
    }
    false
}
