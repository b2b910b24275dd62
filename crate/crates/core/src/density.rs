//! Mixed-state representation.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::state::{alloc_amplitudes, StateVector};

/// `2^n x 2^n` density matrix stored row-major; row/column indices use the
/// same qubit-to-bit convention as [`StateVector`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    elements: Vec<Complex64>,
}

impl DensityMatrix {
    /// `|0...0><0...0|`
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return invalid("a density matrix needs at least one qubit");
        }
        let mut elements = alloc_amplitudes(2 * num_qubits)?;
        elements[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            elements,
        })
    }

    /// `|psi><psi|`
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let n = psi.num_qubits();
        let mut elements = alloc_amplitudes(2 * n)?;
        let amps = psi.amplitudes();
        let dim = amps.len();
        for (r, a) in amps.iter().enumerate() {
            for (c, b) in amps.iter().enumerate() {
                elements[r * dim + c] = a * b.conj();
            }
        }
        Ok(Self {
            num_qubits: n,
            elements,
        })
    }

    pub fn from_elements(num_qubits: usize, elements: Vec<Complex64>) -> Result<Self> {
        let expected = 1usize << (2 * num_qubits);
        if num_qubits == 0 || elements.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: elements.len(),
            });
        }
        Ok(Self {
            num_qubits,
            elements,
        })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    #[inline]
    pub fn elements(&self) -> &[Complex64] {
        &self.elements
    }

    #[inline]
    pub(crate) fn elements_mut(&mut self) -> &mut [Complex64] {
        &mut self.elements
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.elements[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        let dim = self.dim();
        (0..dim).map(|i| self.elements[i * dim + i]).sum()
    }

    /// Diagonal entries, i.e. computational-basis probabilities.
    pub fn diagonal(&self) -> Vec<f64> {
        let dim = self.dim();
        (0..dim).map(|i| self.elements[i * dim + i].re).collect()
    }

    /// Largest `|rho_rc - conj(rho_cr)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for r in 0..dim {
            for c in r..dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub(crate) fn add_scaled(&mut self, other: &DensityMatrix, factor: f64) {
        self.elements
            .iter_mut()
            .zip(&other.elements)
            .for_each(|(a, b)| *a += b * factor);
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        self.elements.iter_mut().for_each(|a| *a *= factor);
    }

    pub(crate) fn check_same_size(&self, other: &DensityMatrix) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        self.check_same_size(other)?;
        Ok(self
            .elements
            .iter()
            .zip(&other.elements)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
