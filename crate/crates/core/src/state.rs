//! Pure-state representation and the non-gate state operations.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::bits::insert_zero_bits;
use crate::error::{invalid, Error, Result};
use crate::parallel::{blocked_sum, use_parallel};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest qubit count whose amplitude buffer size fits in `isize`.
pub const MAX_QUBITS: usize = usize::BITS as usize - 6;

/// Seedable generator used by every randomized operation in the crate.
///
/// ChaCha8 gives bit-identical streams for a given seed across platforms.
pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

pub fn rng_from_entropy() -> SimRng {
    SimRng::from_rng(&mut rand::rng())
}

pub(crate) fn alloc_amplitudes(num_qubits: usize) -> Result<Vec<Complex64>> {
    if num_qubits > MAX_QUBITS {
        return Err(Error::Allocation { num_qubits });
    }
    let len = 1usize << num_qubits;
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| Error::Allocation { num_qubits })?;
    v.resize(len, ZERO);
    Ok(v)
}

/// Per-qubit entry of a [`BasisPattern`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Zero,
    One,
    /// Summed over both values.
    Any,
}

impl TryFrom<u8> for Outcome {
    type Error = Error;

    /// `0`, `1`, or `2` for the wildcard.
    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Outcome::Zero),
            1 => Ok(Outcome::One),
            2 => Ok(Outcome::Any),
            _ => invalid(format!("basis pattern entry {v} is not 0, 1 or 2")),
        }
    }
}

/// Partial measurement pattern; entry `i` addresses qubit `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPattern(Vec<Outcome>);

impl BasisPattern {
    pub fn new(entries: Vec<Outcome>) -> Self {
        Self(entries)
    }

    /// Build from integer codes where `2` is the wildcard.
    pub fn from_codes(codes: &[u8]) -> Result<Self> {
        codes
            .iter()
            .map(|&c| Outcome::try_from(c))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Outcome] {
        &self.0
    }
}

/// State vector of `n` qubits plus a growable classical register file.
///
/// Bit `i` of a basis index is the value of qubit `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
    classical: Vec<i64>,
}

impl StateVector {
    /// Allocate `|0...0>`.
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return invalid("a state needs at least one qubit");
        }
        let mut amplitudes = alloc_amplitudes(num_qubits)?;
        amplitudes[0] = ONE;
        Ok(Self {
            num_qubits,
            amplitudes,
            classical: Vec::new(),
        })
    }

    /// Build a state directly from amplitudes; the length must be a power of two >= 2.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return invalid(format!("amplitude count {len} is not a power of two >= 2"));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
            classical: Vec::new(),
        })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    #[inline]
    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Copy of the amplitude array.
    pub fn get_vector(&self) -> Vec<Complex64> {
        self.amplitudes.clone()
    }

    pub fn set_zero_state(&mut self) {
        self.amplitudes.fill(ZERO);
        self.amplitudes[0] = ONE;
    }

    pub fn set_computational_basis(&mut self, index: usize) -> Result<()> {
        if index >= self.dim() {
            return invalid(format!(
                "basis index {index} out of range for {} qubits",
                self.num_qubits
            ));
        }
        self.amplitudes.fill(ZERO);
        self.amplitudes[index] = ONE;
        Ok(())
    }

    /// Complex-Gaussian amplitudes, normalized; deterministic for a given seed.
    pub fn set_haar_random_state(&mut self, seed: u64) {
        self.set_haar_random_state_with(&mut rng_from_seed(seed));
    }

    pub fn set_haar_random_state_with<R: RngCore + ?Sized>(&mut self, rng: &mut R) {
        for a in &mut self.amplitudes {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *a = Complex64::new(re, im);
        }
        let norm = self.get_squared_norm();
        let scale = 1.0 / norm.sqrt();
        self.amplitudes.iter_mut().for_each(|a| *a *= scale);
    }

    /// Copy amplitudes from a slice of the same dimension.
    pub fn load(&mut self, amplitudes: &[Complex64]) -> Result<()> {
        if amplitudes.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: amplitudes.len(),
            });
        }
        self.amplitudes.copy_from_slice(amplitudes);
        Ok(())
    }

    /// Copy amplitudes and classical registers from another state.
    pub fn load_state(&mut self, other: &StateVector) -> Result<()> {
        self.load(&other.amplitudes)?;
        self.classical.clone_from(&other.classical);
        Ok(())
    }

    pub fn get_squared_norm(&self) -> f64 {
        let amps = &self.amplitudes;
        blocked_sum(self.num_qubits, amps.len(), |i| {
            Complex64::new(amps[i].norm_sqr(), 0.0)
        })
        .re
    }

    /// Divide by `sqrt(squared_norm)`.
    pub fn normalize(&mut self, squared_norm: f64) -> Result<()> {
        if squared_norm <= 0.0 || !squared_norm.is_finite() {
            return invalid(format!("cannot normalize with squared norm {squared_norm}"));
        }
        let scale = 1.0 / squared_norm.sqrt();
        self.for_each_amplitude(|_, a| *a *= scale);
        Ok(())
    }

    pub fn get_marginal_probability(&self, pattern: &BasisPattern) -> Result<f64> {
        if pattern.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: pattern.len(),
            });
        }
        let mut fixed = Vec::new();
        let mut value = 0usize;
        for (q, o) in pattern.entries().iter().enumerate() {
            match o {
                Outcome::Zero => fixed.push(q),
                Outcome::One => {
                    fixed.push(q);
                    value |= 1 << q;
                }
                Outcome::Any => {}
            }
        }
        let count = 1usize << (self.num_qubits - fixed.len());
        let amps = &self.amplitudes;
        let sum = blocked_sum(self.num_qubits, count, |k| {
            let x = insert_zero_bits(k, &fixed) | value;
            Complex64::new(amps[x].norm_sqr(), 0.0)
        });
        Ok(sum.re)
    }

    /// Draw `count` basis indices from `|psi_x|^2` with a seeded generator.
    pub fn sampling(&self, count: usize, seed: u64) -> Result<Vec<usize>> {
        self.sampling_with(count, &mut rng_from_seed(seed))
    }

    /// Builds the cumulative distribution once and binary-searches per shot.
    pub fn sampling_with<R: RngCore + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<usize>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let mut cumulative = Vec::with_capacity(self.dim());
        let mut acc = 0.0;
        for a in &self.amplitudes {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        if (acc - 1.0).abs() > 1e-6 {
            return invalid(format!("sampling requires a normalized state, squared norm is {acc}"));
        }
        let last = self.dim() - 1;
        Ok((0..count)
            .map(|_| {
                let u: f64 = rng.random::<f64>() * acc;
                cumulative.partition_point(|&c| c <= u).min(last)
            })
            .collect())
    }

    pub fn multiply_coef(&mut self, coef: Complex64) {
        self.for_each_amplitude(|_, a| *a *= coef);
    }

    /// `psi_x <- f(x) * psi_x`.
    pub fn multiply_elementwise_function<F>(&mut self, f: F)
    where
        F: Fn(usize) -> Complex64 + Sync,
    {
        self.for_each_amplitude(|i, a| *a *= f(i));
    }

    pub fn add_state(&mut self, other: &StateVector) -> Result<()> {
        self.check_same_size(other)?;
        self.amplitudes
            .iter_mut()
            .zip(&other.amplitudes)
            .for_each(|(a, b)| *a += b);
        Ok(())
    }

    /// New state whose qubit `i` carries old qubit `order[i]`.
    pub fn permutate_qubit(&self, order: &[usize]) -> Result<StateVector> {
        let n = self.num_qubits;
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: order.len(),
            });
        }
        let mut seen = vec![false; n];
        for &q in order {
            if q >= n || seen[q] {
                return invalid(format!("{order:?} is not a permutation of 0..{n}"));
            }
            seen[q] = true;
        }
        let mut out = alloc_amplitudes(n)?;
        for (y, slot) in out.iter_mut().enumerate() {
            let x = order
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &old)| acc | (((y >> i) & 1) << old));
            *slot = self.amplitudes[x];
        }
        Ok(StateVector {
            num_qubits: n,
            amplitudes: out,
            classical: self.classical.clone(),
        })
    }

    /// Project `targets` onto `values` and remove them; the result is not renormalized.
    pub fn drop_qubit(&self, targets: &[usize], values: &[u8]) -> Result<StateVector> {
        let n = self.num_qubits;
        if targets.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: targets.len(),
                found: values.len(),
            });
        }
        if targets.len() >= n {
            return invalid("drop_qubit must leave at least one qubit");
        }
        let mut value_mask = 0;
        for (&q, &v) in targets.iter().zip(values) {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, num_qubits: n });
            }
            if v > 1 {
                return invalid(format!("projection value {v} is not 0 or 1"));
            }
            value_mask |= (v as usize) << q;
        }
        let mut sorted = targets.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != targets.len() {
            return invalid("drop_qubit targets must be distinct");
        }
        let remaining = n - targets.len();
        let mut out = alloc_amplitudes(remaining)?;
        for (y, slot) in out.iter_mut().enumerate() {
            *slot = self.amplitudes[insert_zero_bits(y, &sorted) | value_mask];
        }
        Ok(StateVector {
            num_qubits: remaining,
            amplitudes: out,
            classical: self.classical.clone(),
        })
    }

    /// Unwritten addresses read as zero.
    pub fn get_classical_value(&self, addr: usize) -> i64 {
        self.classical.get(addr).copied().unwrap_or(0)
    }

    pub fn set_classical_value(&mut self, addr: usize, value: i64) {
        if addr >= self.classical.len() {
            self.classical.resize(addr + 1, 0);
        }
        self.classical[addr] = value;
    }

    pub fn classical_registers(&self) -> &[i64] {
        &self.classical
    }

    pub(crate) fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        Ok(())
    }

    fn for_each_amplitude<F>(&mut self, f: F)
    where
        F: Fn(usize, &mut Complex64) + Sync,
    {
        if use_parallel(self.num_qubits, self.amplitudes.len()) {
            self.amplitudes
                .par_iter_mut()
                .enumerate()
                .for_each(|(i, a)| f(i, a));
        } else {
            self.amplitudes.iter_mut().enumerate().for_each(|(i, a)| f(i, a));
        }
    }
}

/// `sum_x conj(bra_x) * ket_x`.
pub fn inner_product(bra: &StateVector, ket: &StateVector) -> Result<Complex64> {
    bra.check_same_size(ket)?;
    let (a, b) = (&bra.amplitudes, &ket.amplitudes);
    Ok(blocked_sum(bra.num_qubits, a.len(), |i| a[i].conj() * b[i]))
}

/// Tensor product with `low` on the lower qubit indices and `high` above it.
pub fn tensor_product(low: &StateVector, high: &StateVector) -> Result<StateVector> {
    let n = low.num_qubits + high.num_qubits;
    let mut out = alloc_amplitudes(n)?;
    let shift = low.num_qubits;
    for (xh, bh) in high.amplitudes.iter().enumerate() {
        for (xl, al) in low.amplitudes.iter().enumerate() {
            out[(xh << shift) | xl] = al * bh;
        }
    }
    Ok(StateVector {
        num_qubits: n,
        amplitudes: out,
        classical: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn new_is_zero_state() {
        assert_eq!(StateVector::new(1).unwrap().amplitudes(), &[ONE, ZERO]);
        assert_eq!(StateVector::new(2).unwrap().amplitudes(), &[ONE, ZERO, ZERO, ZERO]);
        assert!(StateVector::new(0).is_err());
        assert!(matches!(StateVector::new(MAX_QUBITS + 1), Err(Error::Allocation { .. })));
    }

    #[test]
    fn computational_basis() {
        let mut s = StateVector::new(2).unwrap();
        s.set_computational_basis(2).unwrap();
        assert_eq!(s.amplitudes(), &[ZERO, ZERO, ONE, ZERO]);
        assert!(s.set_computational_basis(4).is_err());
        let mut s = StateVector::new(3).unwrap();
        s.set_computational_basis(0).unwrap();
        assert_eq!(s.amplitudes()[0], ONE);
    }

    #[test]
    fn haar_random_is_normalized_and_deterministic() {
        for n in 1..8 {
            let mut a = StateVector::new(n).unwrap();
            a.set_haar_random_state(42);
            assert!((a.get_squared_norm() - 1.0).abs() < 1e-12);
            let mut b = StateVector::new(n).unwrap();
            b.set_haar_random_state(42);
            assert_eq!(a, b);
        }
        let mut a = StateVector::new(10).unwrap();
        let mut b = StateVector::new(10).unwrap();
        a.set_haar_random_state(1);
        b.set_haar_random_state(2);
        assert!(inner_product(&a, &b).unwrap().norm_sqr() < 0.5);
    }

    #[test]
    fn copy_load_and_get_vector() {
        let mut s = StateVector::new(2).unwrap();
        let mut copy = s.clone();
        copy.set_computational_basis(3).unwrap();
        assert_eq!(s.amplitudes()[0], ONE);

        let v = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        s.load(&v).unwrap();
        assert_eq!(s.get_vector(), v.to_vec());
        assert!(s.load(&v[..3]).is_err());
    }

    #[test]
    fn inner_product_basics() {
        let mut a = StateVector::new(3).unwrap();
        a.set_haar_random_state(7);
        let ip = inner_product(&a, &a).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-12 && ip.im.abs() < 1e-12);

        let zero = StateVector::new(2).unwrap();
        let mut one = StateVector::new(2).unwrap();
        one.set_computational_basis(1).unwrap();
        assert_eq!(inner_product(&zero, &one).unwrap(), ZERO);
        assert!(inner_product(&zero, &a).is_err());
    }

    #[test]
    fn norm_and_normalize() {
        let mut s = StateVector::new(2).unwrap();
        assert_eq!(s.get_squared_norm(), 1.0);
        s.multiply_coef(c(2.0, 0.0));
        assert!((s.get_squared_norm() - 4.0).abs() < 1e-15);
        s.normalize(s.get_squared_norm()).unwrap();
        assert!((s.get_squared_norm() - 1.0).abs() < 1e-12);
        assert!(s.normalize(0.0).is_err());
        assert!(s.normalize(-1.0).is_err());
    }

    #[test]
    fn marginal_probability() {
        let s = StateVector::new(2).unwrap();
        let p = s.get_marginal_probability(&BasisPattern::from_codes(&[0, 0]).unwrap()).unwrap();
        assert_eq!(p, 1.0);

        let mut s = StateVector::new(3).unwrap();
        s.set_haar_random_state(3);
        let all = BasisPattern::from_codes(&[2, 2, 2]).unwrap();
        assert!((s.get_marginal_probability(&all).unwrap() - 1.0).abs() < 1e-12);

        // qubit0 = 1, qubit1 free, qubit2 = 0
        let pat = BasisPattern::from_codes(&[1, 2, 0]).unwrap();
        let brute: f64 = (0..8)
            .filter(|x| x & 1 == 1 && (x >> 2) & 1 == 0)
            .map(|x| s.amplitudes()[x].norm_sqr())
            .sum();
        assert!((s.get_marginal_probability(&pat).unwrap() - brute).abs() < 1e-12);

        assert!(s.get_marginal_probability(&BasisPattern::from_codes(&[0, 0]).unwrap()).is_err());
        assert!(BasisPattern::from_codes(&[0, 3]).is_err());
    }

    #[test]
    fn sampling_deterministic_distribution() {
        let mut s = StateVector::new(2).unwrap();
        s.set_computational_basis(2).unwrap();
        assert!(s.sampling(100, 9).unwrap().iter().all(|&x| x == 2));
        assert!(s.sampling(0, 9).unwrap().is_empty());

        let h = 1.0 / 2f64.sqrt();
        let mut plus = StateVector::new(1).unwrap();
        plus.load(&[c(h, 0.0), c(h, 0.0)]).unwrap();
        let shots = plus.sampling(10_000, 5).unwrap();
        let zeros = shots.iter().filter(|&&x| x == 0).count() as f64 / 1e4;
        assert!((0.485..=0.515).contains(&zeros), "{zeros}");
        assert_eq!(shots, plus.sampling(10_000, 5).unwrap());

        let mut bad = StateVector::new(1).unwrap();
        bad.multiply_coef(c(2.0, 0.0));
        assert!(bad.sampling(1, 0).is_err());
    }

    #[test]
    fn elementwise_operations() {
        let mut s = StateVector::new(2).unwrap();
        let before = s.clone();
        s.multiply_coef(ONE);
        assert_eq!(s, before);

        let mut one = StateVector::new(2).unwrap();
        one.set_computational_basis(1).unwrap();
        s.add_state(&one).unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ONE, ZERO, ZERO]);
        assert!(s.add_state(&StateVector::new(3).unwrap()).is_err());

        let h = 1.0 / 2f64.sqrt();
        let mut plus = StateVector::new(1).unwrap();
        plus.load(&[c(h, 0.0), c(h, 0.0)]).unwrap();
        plus.multiply_elementwise_function(|x| if x % 2 == 1 { -ONE } else { ONE });
        assert_eq!(plus.amplitudes(), &[c(h, 0.0), c(-h, 0.0)]);
    }

    #[test]
    fn tensor_permutate_drop() {
        let mut one = StateVector::new(1).unwrap();
        one.set_computational_basis(1).unwrap();
        let zero = StateVector::new(1).unwrap();
        let t = tensor_product(&one, &zero).unwrap();
        assert_eq!(t.num_qubits(), 2);
        assert_eq!(t.amplitudes()[1], ONE);

        let mut s = StateVector::new(2).unwrap();
        s.set_computational_basis(1).unwrap();
        let p = s.permutate_qubit(&[1, 0]).unwrap();
        assert_eq!(p.amplitudes()[2], ONE);
        assert!(s.permutate_qubit(&[0, 0]).is_err());
        assert!(s.permutate_qubit(&[0]).is_err());

        let mut h = StateVector::new(3).unwrap();
        h.set_haar_random_state(11);
        let d = h.drop_qubit(&[1, 2], &[0, 0]).unwrap();
        assert_eq!(d.num_qubits(), 1);
        let marg = h
            .get_marginal_probability(&BasisPattern::from_codes(&[2, 0, 0]).unwrap())
            .unwrap();
        assert!((d.get_squared_norm() - marg).abs() < 1e-12);
        assert!(h.drop_qubit(&[3], &[0]).is_err());
        assert!(h.drop_qubit(&[1], &[2]).is_err());
        assert!(h.drop_qubit(&[1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn classical_registers() {
        let mut s = StateVector::new(1).unwrap();
        assert_eq!(s.get_classical_value(5), 0);
        s.set_classical_value(0, 7);
        assert_eq!(s.get_classical_value(0), 7);
        s.set_classical_value(0, 1);
        let v = s.get_classical_value(0);
        s.set_classical_value(0, 1 - v);
        assert_eq!(s.get_classical_value(0), 0);
    }
}
