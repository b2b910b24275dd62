//! Update functions for basic gates.
//!
//! Every kernel walks the cosets of an [`IndexDecomposition`]; each coset
//! reads and writes only its own `2^m` amplitudes, so cosets are handed to
//! workers in contiguous chunks through [`for_each_coset`].

use std::borrow::Cow;

use num_complex::Complex64;

use super::{hadamard_matrix, BasicGate, Control, FastKernel, GateMatrix, IndexDecomposition, PauliId};
use crate::bits::{insert_zero_bits, mask_of};
use crate::matrix::ComplexMatrix;
use crate::parallel::{for_each_coset, SharedAmps};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn apply_basic(amps: &mut [Complex64], n: usize, gate: &BasicGate) {
    match gate.fast {
        Some(fast) => apply_fast(amps, n, fast, gate),
        None => apply_payload(amps, n, &gate.targets, &gate.controls, &gate.matrix, false),
    }
}

/// `rho <- K rho K^dagger` on a row-major `2^n x 2^n` buffer.
///
/// The buffer is a `2n`-qubit vector with the row index in the high bits:
/// `K` acts on qubits shifted by `n` and `conj(K)` on the low qubits.
pub(crate) fn apply_density(elements: &mut [Complex64], n: usize, gate: &BasicGate) {
    let total = 2 * n;
    let shifted_targets: Vec<usize> = gate.targets.iter().map(|q| q + n).collect();
    let shifted_controls: Vec<Control> = gate
        .controls
        .iter()
        .map(|c| Control::new(c.qubit + n, c.value))
        .collect();
    apply_payload(elements, total, &shifted_targets, &shifted_controls, &gate.matrix, false);
    apply_payload(elements, total, &gate.targets, &gate.controls, &gate.matrix, true);
}

/// Apply a payload, or its elementwise complex conjugate when `conjugate` is set.
pub(crate) fn apply_payload(
    amps: &mut [Complex64],
    n: usize,
    targets: &[usize],
    controls: &[Control],
    matrix: &GateMatrix,
    conjugate: bool,
) {
    match matrix {
        GateMatrix::Dense(m) => {
            let m = if conjugate { Cow::Owned(m.conj()) } else { Cow::Borrowed(m) };
            apply_dense(amps, n, targets, controls, &m);
        }
        GateMatrix::Sparse(entries) => {
            let entries: Cow<'_, [(usize, usize, Complex64)]> = if conjugate {
                Cow::Owned(entries.iter().map(|&(r, c, v)| (r, c, v.conj())).collect())
            } else {
                Cow::Borrowed(entries)
            };
            apply_sparse(amps, n, targets, controls, &entries);
        }
        GateMatrix::Diagonal(d) => {
            let d: Cow<'_, [Complex64]> = if conjugate {
                Cow::Owned(d.iter().map(|v| v.conj()).collect())
            } else {
                Cow::Borrowed(d)
            };
            apply_diagonal(amps, n, targets, controls, &d);
        }
        GateMatrix::Permutation(p) => apply_permutation(amps, n, targets, controls, p),
        GateMatrix::Pauli(ids) => {
            // conj(Y) = -Y
            let odd_y = ids.iter().filter(|&&p| p == PauliId::Y).count() % 2 == 1;
            let coef = if conjugate && odd_y { -1.0 } else { 1.0 };
            apply_pauli(amps, n, targets, controls, ids, Complex64::new(coef, 0.0));
        }
        GateMatrix::PauliRotation { paulis, angle } => {
            let odd_y = paulis.iter().filter(|&&p| p == PauliId::Y).count() % 2 == 1;
            let angle = match (conjugate, odd_y) {
                (false, _) => *angle,
                (true, false) => -*angle,
                (true, true) => *angle,
            };
            apply_pauli_rotation(amps, n, targets, controls, paulis, angle);
        }
    }
}

pub(crate) fn apply_dense(
    amps: &mut [Complex64],
    n: usize,
    targets: &[usize],
    controls: &[Control],
    matrix: &ComplexMatrix,
) {
    let layout = IndexDecomposition::new(n, targets, controls);
    let off = layout.offsets();
    let k = matrix.data();
    let shared = SharedAmps::new(amps);
    match targets.len() {
        1 => {
            let (k00, k01, k10, k11) = (k[0], k[1], k[2], k[3]);
            let o1 = off[1];
            for_each_coset(n, layout.coset_count(), || (), |_, c| {
                let b = layout.coset_base(c);
                // SAFETY: cosets are disjoint, every index is < 2^n
                unsafe {
                    let a0 = shared.get(b);
                    let a1 = shared.get(b + o1);
                    shared.set(b, k00 * a0 + k01 * a1);
                    shared.set(b + o1, k10 * a0 + k11 * a1);
                }
            });
        }
        2 => {
            let o = [off[0], off[1], off[2], off[3]];
            for_each_coset(n, layout.coset_count(), || (), |_, c| {
                let b = layout.coset_base(c);
                // SAFETY: cosets are disjoint, every index is < 2^n
                unsafe {
                    let v = [
                        shared.get(b + o[0]),
                        shared.get(b + o[1]),
                        shared.get(b + o[2]),
                        shared.get(b + o[3]),
                    ];
                    for r in 0..4 {
                        let row = &k[4 * r..4 * r + 4];
                        shared.set(
                            b + o[r],
                            row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3],
                        );
                    }
                }
            });
        }
        m => {
            let dim = 1usize << m;
            for_each_coset(
                n,
                layout.coset_count(),
                || vec![ZERO; dim],
                |buf, c| {
                    let b = layout.coset_base(c);
                    // SAFETY: cosets are disjoint, every index is < 2^n
                    unsafe {
                        for (slot, o) in buf.iter_mut().zip(off) {
                            *slot = shared.get(b + o);
                        }
                        for (r, o) in off.iter().enumerate() {
                            let row = &k[r * dim..(r + 1) * dim];
                            let v: Complex64 = row.iter().zip(buf.iter()).map(|(x, y)| x * y).sum();
                            shared.set(b + o, v);
                        }
                    }
                },
            );
        }
    }
}

fn apply_sparse(
    amps: &mut [Complex64],
    n: usize,
    targets: &[usize],
    controls: &[Control],
    entries: &[(usize, usize, Complex64)],
) {
    let layout = IndexDecomposition::new(n, targets, controls);
    let off = layout.offsets();
    let dim = off.len();
    let shared = SharedAmps::new(amps);
    for_each_coset(
        n,
        layout.coset_count(),
        || (vec![ZERO; dim], vec![ZERO; dim]),
        |(input, output), c| {
            let b = layout.coset_base(c);
            // SAFETY: cosets are disjoint, every index is < 2^n
            unsafe {
                for (slot, o) in input.iter_mut().zip(off) {
                    *slot = shared.get(b + o);
                }
                output.fill(ZERO);
                for &(r, col, v) in entries {
                    output[r] += v * input[col];
                }
                for (v, o) in output.iter().zip(off) {
                    shared.set(b + o, *v);
                }
            }
        },
    );
}

fn apply_diagonal(
    amps: &mut [Complex64],
    n: usize,
    targets: &[usize],
    controls: &[Control],
    diag: &[Complex64],
) {
    let layout = IndexDecomposition::new(n, targets, controls);
    let off = layout.offsets();
    let shared = SharedAmps::new(amps);
    for_each_coset(n, layout.coset_count(), || (), |_, c| {
        let b = layout.coset_base(c);
        // SAFETY: cosets are disjoint, every index is < 2^n
        unsafe {
            for (d, o) in diag.iter().zip(off) {
                shared.set(b + o, d * shared.get(b + o));
            }
        }
    });
}

fn apply_permutation(
    amps: &mut [Complex64],
    n: usize,
    targets: &[usize],
    controls: &[Control],
    perm: &[usize],
) {
    let layout = IndexDecomposition::new(n, targets, controls);
    let off = layout.offsets();
    let dim = off.len();
    let shared = SharedAmps::new(amps);
    for_each_coset(
        n,
        layout.coset_count(),
        || vec![ZERO; dim],
        |buf, c| {
            let b = layout.coset_base(c);
            // SAFETY: cosets are disjoint, every index is < 2^n
            unsafe {
                for (slot, o) in buf.iter_mut().zip(off) {
                    *slot = shared.get(b + o);
                }
                for (z, &fz) in perm.iter().enumerate() {
                    shared.set(b + off[fz], buf[z]);
                }
            }
        },
    );
}

/// Masks describing a Pauli product: `P|x> = phase(x) |x ^ flip>`.
struct PauliMasks {
    flip: usize,
    phase: usize,
    /// `i^(number of Y factors)`
    y_phase: Complex64,
}

impl PauliMasks {
    fn new(targets: &[usize], ids: &[PauliId]) -> Self {
        let mut flip = 0;
        let mut phase = 0;
        let mut ny = 0;
        for (&q, &p) in targets.iter().zip(ids) {
            match p {
                PauliId::I => {}
                PauliId::X => flip |= 1 << q,
                PauliId::Y => {
                    flip |= 1 << q;
                    phase |= 1 << q;
                    ny += 1;
                }
                PauliId::Z => phase |= 1 << q,
            }
        }
        let y_phase = [
            Complex64::new(1.0, 0.0),
            I,
            Complex64::new(-1.0, 0.0),
            -I,
        ][ny % 4];
        Self { flip, phase, y_phase }
    }

    #[inline(always)]
    fn sign(&self, x: usize) -> f64 {
        if (x & self.phase).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    #[inline(always)]
    fn coef(&self, x: usize) -> Complex64 {
        self.y_phase * self.sign(x)
    }
}

/// Coset layout for Pauli kernels: controls plus (for non-diagonal
/// products) the highest flipped bit are fixed.
fn pauli_layout(controls: &[Control], flip: usize) -> (Vec<usize>, usize) {
    let mut fixed: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
    if flip != 0 {
        fixed.push(usize::BITS as usize - 1 - flip.leading_zeros() as usize);
    }
    fixed.sort_unstable();
    let active = controls
        .iter()
        .filter(|c| c.value == 1)
        .fold(0, |acc, c| acc | (1usize << c.qubit));
    (fixed, active)
}

fn apply_pauli(
    amps: &mut [Complex64],
    n: usize,
    targets: &[usize],
    controls: &[Control],
    ids: &[PauliId],
    coef: Complex64,
) {
    let masks = PauliMasks::new(targets, ids);
    let (fixed, active) = pauli_layout(controls, masks.flip);
    let count = 1usize << (n - fixed.len());
    let shared = SharedAmps::new(amps);
    if masks.flip == 0 {
        for_each_coset(n, count, || (), |_, k| {
            let x = insert_zero_bits(k, &fixed) | active;
            // SAFETY: one index per coset
            unsafe { shared.set(x, shared.get(x) * (coef * masks.sign(x))) }
        });
    } else {
        for_each_coset(n, count, || (), |_, k| {
            let x = insert_zero_bits(k, &fixed) | active;
            let y = x ^ masks.flip;
            // SAFETY: pairs {x, y} are disjoint across cosets
            unsafe {
                let ax = shared.get(x);
                let ay = shared.get(y);
                shared.set(y, coef * masks.coef(x) * ax);
                shared.set(x, coef * masks.coef(y) * ay);
            }
        });
    }
}

fn apply_pauli_rotation(
    amps: &mut [Complex64],
    n: usize,
    targets: &[usize],
    controls: &[Control],
    ids: &[PauliId],
    angle: f64,
) {
    let masks = PauliMasks::new(targets, ids);
    let (fixed, active) = pauli_layout(controls, masks.flip);
    let count = 1usize << (n - fixed.len());
    let (s, c) = (angle / 2.0).sin_cos();
    let is = Complex64::new(0.0, s);
    let shared = SharedAmps::new(amps);
    if masks.flip == 0 {
        let plus = Complex64::new(c, s);
        let minus = Complex64::new(c, -s);
        for_each_coset(n, count, || (), |_, k| {
            let x = insert_zero_bits(k, &fixed) | active;
            let f = if masks.sign(x) > 0.0 { plus } else { minus };
            // SAFETY: one index per coset
            unsafe { shared.set(x, shared.get(x) * f) }
        });
    } else {
        for_each_coset(n, count, || (), |_, k| {
            let x = insert_zero_bits(k, &fixed) | active;
            let y = x ^ masks.flip;
            // SAFETY: pairs {x, y} are disjoint across cosets
            unsafe {
                let ax = shared.get(x);
                let ay = shared.get(y);
                shared.set(x, c * ax + is * masks.coef(y) * ay);
                shared.set(y, c * ay + is * masks.coef(x) * ax);
            }
        });
    }
}

fn apply_fast(amps: &mut [Complex64], n: usize, kind: FastKernel, gate: &BasicGate) {
    let shared = SharedAmps::new(amps);
    let t = gate.targets[0];
    match kind {
        FastKernel::X | FastKernel::Y | FastKernel::H => {
            let bit = 1usize << t;
            let fixed = [t];
            let h = hadamard_matrix().get(0, 0);
            for_each_coset(n, 1 << (n - 1), || (), |_, k| {
                let x = insert_zero_bits(k, &fixed);
                let y = x | bit;
                // SAFETY: pairs {x, y} are disjoint across cosets
                unsafe {
                    let (a0, a1) = (shared.get(x), shared.get(y));
                    let (b0, b1) = match kind {
                        FastKernel::X => (a1, a0),
                        FastKernel::Y => (-I * a1, I * a0),
                        _ => (h * (a0 + a1), h * (a0 - a1)),
                    };
                    shared.set(x, b0);
                    shared.set(y, b1);
                }
            });
        }
        FastKernel::Z => {
            let bit = 1usize << t;
            let fixed = [t];
            for_each_coset(n, 1 << (n - 1), || (), |_, k| {
                let x = insert_zero_bits(k, &fixed) | bit;
                // SAFETY: one index per coset
                unsafe { shared.set(x, -shared.get(x)) }
            });
        }
        FastKernel::Cnot => {
            let c = gate.controls[0].qubit;
            let mut fixed = [c, t];
            fixed.sort_unstable();
            let (cbit, tbit) = (1usize << c, 1usize << t);
            for_each_coset(n, 1 << (n - 2), || (), |_, k| {
                let x = insert_zero_bits(k, &fixed) | cbit;
                let y = x | tbit;
                // SAFETY: pairs {x, y} are disjoint across cosets
                unsafe {
                    let a = shared.get(x);
                    shared.set(x, shared.get(y));
                    shared.set(y, a);
                }
            });
        }
        FastKernel::Cz => {
            let c = gate.controls[0].qubit;
            let mut fixed = [c, t];
            fixed.sort_unstable();
            let both = mask_of(&fixed);
            for_each_coset(n, 1 << (n - 2), || (), |_, k| {
                let x = insert_zero_bits(k, &fixed) | both;
                // SAFETY: one index per coset
                unsafe { shared.set(x, -shared.get(x)) }
            });
        }
        FastKernel::Swap => {
            let u = gate.targets[1];
            let mut fixed = [t, u];
            fixed.sort_unstable();
            let (tb, ub) = (1usize << t, 1usize << u);
            for_each_coset(n, 1 << (n - 2), || (), |_, k| {
                let base = insert_zero_bits(k, &fixed);
                // SAFETY: pairs are disjoint across cosets
                unsafe {
                    let a = shared.get(base | tb);
                    shared.set(base | tb, shared.get(base | ub));
                    shared.set(base | ub, a);
                }
            });
        }
    }
}
