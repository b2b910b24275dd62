//! Ordered gate lists and their execution.

use rand::RngCore;

use crate::density::DensityMatrix;
use crate::error::{invalid, Error, Result};
use crate::gate::ParametricRotation;
use crate::operation::Gate;
use crate::state::{rng_from_seed, StateVector};

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumCircuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl QuantumCircuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return invalid("a circuit needs at least one qubit");
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn get_gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn check_gate(&self, gate: &Gate) -> Result<()> {
        match gate.max_qubit() {
            Some(q) if q >= self.num_qubits => Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            }),
            _ => Ok(()),
        }
    }

    pub fn add_gate(&mut self, gate: impl Into<Gate>) -> Result<()> {
        let gate = gate.into();
        self.check_gate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Insert so that the new gate ends up at `position`.
    pub fn add_gate_at(&mut self, gate: impl Into<Gate>, position: usize) -> Result<()> {
        let gate = gate.into();
        self.check_gate(&gate)?;
        if position > self.gates.len() {
            return invalid(format!("position {position} past end of {} gates", self.gates.len()));
        }
        self.gates.insert(position, gate);
        Ok(())
    }

    pub fn remove_gate(&mut self, position: usize) -> Result<Gate> {
        if position >= self.gates.len() {
            return invalid(format!("no gate at position {position}"));
        }
        Ok(self.gates.remove(position))
    }

    /// Independent copy of the gate at `position`.
    pub fn get_gate(&self, position: usize) -> Result<Gate> {
        self.gates
            .get(position)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no gate at position {position}")))
    }

    pub(crate) fn gates_mut(&mut self) -> &mut Vec<Gate> {
        &mut self.gates
    }

    /// Append every gate of `other`.
    pub fn extend(&mut self, other: &QuantumCircuit) -> Result<()> {
        if other.num_qubits > self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: n,
            });
        }
        Ok(())
    }

    pub fn update_quantum_state<R: RngCore + ?Sized>(&self, state: &mut StateVector, rng: &mut R) -> Result<()> {
        self.check_size(state.num_qubits())?;
        for g in &self.gates {
            g.update_quantum_state(state, rng)?;
        }
        Ok(())
    }

    pub fn update_quantum_state_seeded(&self, state: &mut StateVector, seed: u64) -> Result<()> {
        self.update_quantum_state(state, &mut rng_from_seed(seed))
    }

    pub fn update_density_matrix(&self, rho: &mut DensityMatrix) -> Result<()> {
        self.check_size(rho.num_qubits())?;
        for g in &self.gates {
            g.update_density_matrix(rho)?;
        }
        Ok(())
    }

    /// ASAP layer count; a gate occupies all of its target and control qubits.
    pub fn calculate_depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let qubits = g.qubits();
            let layer = qubits.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for q in qubits {
                level[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }
}

/// Circuit whose rotation angles can be changed after construction.
///
/// Parameter `k` refers to the `k`-th parametric gate that is still present,
/// in the order they were added.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricQuantumCircuit {
    circuit: QuantumCircuit,
    positions: Vec<usize>,
}

impl ParametricQuantumCircuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        Ok(Self {
            circuit: QuantumCircuit::new(num_qubits)?,
            positions: Vec::new(),
        })
    }

    pub fn circuit(&self) -> &QuantumCircuit {
        &self.circuit
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits
    }

    pub fn get_gate_count(&self) -> usize {
        self.circuit.get_gate_count()
    }

    pub fn get_gate(&self, position: usize) -> Result<Gate> {
        self.circuit.get_gate(position)
    }

    pub fn get_parameter_count(&self) -> usize {
        self.positions.len()
    }

    pub fn add_gate(&mut self, gate: impl Into<Gate>) -> Result<()> {
        let position = self.circuit.get_gate_count();
        self.add_gate_at(gate, position)
    }

    /// Parametric gates inserted this way are registered as parameters too.
    pub fn add_gate_at(&mut self, gate: impl Into<Gate>, position: usize) -> Result<()> {
        let gate = gate.into();
        let parametric = matches!(gate, Gate::Parametric(_));
        self.circuit.add_gate_at(gate, position)?;
        for p in &mut self.positions {
            if *p >= position {
                *p += 1;
            }
        }
        if parametric {
            self.positions.push(position);
        }
        Ok(())
    }

    pub fn add_parametric_gate(&mut self, gate: ParametricRotation) -> Result<()> {
        self.add_gate(gate)
    }

    pub fn add_parametric_gate_at(&mut self, gate: ParametricRotation, position: usize) -> Result<()> {
        self.add_gate_at(gate, position)
    }

    /// Removing a parametric gate drops its parameter; later indices shift down.
    pub fn remove_gate(&mut self, position: usize) -> Result<Gate> {
        let gate = self.circuit.remove_gate(position)?;
        self.positions.retain(|&p| p != position);
        for p in &mut self.positions {
            if *p > position {
                *p -= 1;
            }
        }
        Ok(gate)
    }

    fn parametric(&self, k: usize) -> Result<&ParametricRotation> {
        let pos = self.get_parametric_gate_position(k)?;
        match &self.circuit.gates[pos] {
            Gate::Parametric(g) => Ok(g),
            _ => unreachable!("parameter table points at a non-parametric gate"),
        }
    }

    pub fn get_parameter(&self, k: usize) -> Result<f64> {
        Ok(self.parametric(k)?.angle())
    }

    pub fn set_parameter(&mut self, k: usize, angle: f64) -> Result<()> {
        let pos = self.get_parametric_gate_position(k)?;
        match &mut self.circuit.gates[pos] {
            Gate::Parametric(g) => {
                g.set_angle(angle);
                Ok(())
            }
            _ => unreachable!("parameter table points at a non-parametric gate"),
        }
    }

    pub fn get_parametric_gate_position(&self, k: usize) -> Result<usize> {
        self.positions
            .get(k)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("no parameter {k}")))
    }

    pub fn update_quantum_state<R: RngCore + ?Sized>(&self, state: &mut StateVector, rng: &mut R) -> Result<()> {
        self.circuit.update_quantum_state(state, rng)
    }

    pub fn update_density_matrix(&self, rho: &mut DensityMatrix) -> Result<()> {
        self.circuit.update_density_matrix(rho)
    }

    pub fn calculate_depth(&self) -> usize {
        self.circuit.calculate_depth()
    }
}
