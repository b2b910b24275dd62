//! Random benchmark circuits.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::circuit::QuantumCircuit;
use crate::error::{invalid, Error, Result};
use crate::gate::named;
use crate::state::{rng_from_seed, SimRng};

/// Rotation/CNOT alternations in the ring family.
pub const CNOT_RING_LAYERS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircuitFamily {
    /// RZ-RX-RZ layers interleaved with alternating-parity CZ layers.
    CzLadder,
    /// Same layout with a single RZ per qubit, so every gate is diagonal.
    CzLadderCommuting,
    /// RZ-RX-RZ layers interleaved with cyclic CNOT layers.
    CnotRing,
}

impl CircuitFamily {
    pub const ALL: [CircuitFamily; 3] = [
        CircuitFamily::CzLadder,
        CircuitFamily::CzLadderCommuting,
        CircuitFamily::CnotRing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CircuitFamily::CzLadder => "cz-ladder",
            CircuitFamily::CzLadderCommuting => "cz-ladder-commuting",
            CircuitFamily::CnotRing => "cnot-ring",
        }
    }

    /// Build a circuit; `depth` is ignored by the ring family.
    pub fn generate(self, num_qubits: usize, depth: usize, seed: u64) -> Result<QuantumCircuit> {
        match self {
            CircuitFamily::CzLadder => generate_cz_ladder(num_qubits, depth, seed),
            CircuitFamily::CzLadderCommuting => generate_cz_ladder_commuting(num_qubits, depth, seed),
            CircuitFamily::CnotRing => generate_cnot_ring(num_qubits, seed),
        }
    }
}

impl fmt::Display for CircuitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CircuitFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown circuit family {s:?}")))
    }
}

fn check_size(num_qubits: usize) -> Result<()> {
    if num_qubits < 2 {
        return invalid(format!("benchmark circuits need at least 2 qubits, got {num_qubits}"));
    }
    Ok(())
}

fn angle(rng: &mut SimRng) -> f64 {
    rng.random::<f64>() * TAU
}

fn cz_ladder(num_qubits: usize, depth: usize, seed: u64, commuting: bool) -> Result<QuantumCircuit> {
    check_size(num_qubits)?;
    let mut rng = rng_from_seed(seed);
    let mut c = QuantumCircuit::new(num_qubits)?;
    for layer in 0..=depth {
        for q in 0..num_qubits {
            if commuting {
                c.add_gate(named::rz(q, angle(&mut rng)))?;
            } else {
                let (a, b, d) = (angle(&mut rng), angle(&mut rng), angle(&mut rng));
                c.add_gate(named::rz(q, a))?;
                c.add_gate(named::rx(q, b))?;
                c.add_gate(named::rz(q, d))?;
            }
        }
        if layer == depth {
            break;
        }
        for q in (layer % 2..num_qubits - 1).step_by(2) {
            c.add_gate(named::cz(q, q + 1))?;
        }
    }
    Ok(c)
}

/// `depth + 1` layers of RZ-RX-RZ with angles uniform in `[0, 2pi)`, with
/// a CZ layer on neighbouring pairs between consecutive rotation layers.
/// CZ layer `l` starts at qubit `l % 2` and steps by two.
pub fn generate_cz_ladder(num_qubits: usize, depth: usize, seed: u64) -> Result<QuantumCircuit> {
    cz_ladder(num_qubits, depth, seed, false)
}

/// [`generate_cz_ladder`] with each rotation triple replaced by one RZ.
pub fn generate_cz_ladder_commuting(num_qubits: usize, depth: usize, seed: u64) -> Result<QuantumCircuit> {
    cz_ladder(num_qubits, depth, seed, true)
}

/// Ten rotation layers each followed by a CNOT layer, then a final
/// rotation layer. CNOT `i` has target `i` and control `(i + 1) % n`.
/// The leading RZ of the first layer and the trailing RZ of the last
/// layer are dropped, since they only add a phase to `|0...0>` or before
/// a Z-basis readout.
pub fn generate_cnot_ring(num_qubits: usize, seed: u64) -> Result<QuantumCircuit> {
    check_size(num_qubits)?;
    let mut rng = rng_from_seed(seed);
    let mut c = QuantumCircuit::new(num_qubits)?;
    for layer in 0..=CNOT_RING_LAYERS {
        for q in 0..num_qubits {
            if layer != 0 {
                c.add_gate(named::rz(q, angle(&mut rng)))?;
            }
            c.add_gate(named::rx(q, angle(&mut rng)))?;
            if layer != CNOT_RING_LAYERS {
                c.add_gate(named::rz(q, angle(&mut rng)))?;
            }
        }
        if layer == CNOT_RING_LAYERS {
            break;
        }
        for q in 0..num_qubits {
            c.add_gate(named::cnot((q + 1) % num_qubits, q))?;
        }
    }
    Ok(c)
}
