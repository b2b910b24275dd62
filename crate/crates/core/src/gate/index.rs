//! Split of basis indices into a non-target part and a target part.
//!
//! For target list `M` on `n` qubits every basis index is `x0 + x1`, where
//! `x0` has zeros at all target positions and `x1` is zero everywhere else.
//! The `2^(n-m)` values of `x0` are generated on the fly from a loop counter
//! by inserting zero bits; the `2^m` values of `x1` are precomputed so that
//! entry `i` places bit `j` of `i` at qubit `M[j]`.

use crate::bits::{insert_zero_bits, mask_of, scatter_bits};
use crate::gate::Control;

#[derive(Clone, Debug)]
pub struct IndexDecomposition {
    /// Targets and controls, ascending.
    fixed_sorted: Vec<usize>,
    /// Control bits that must be set for the gate to act.
    control_value_mask: usize,
    offsets: Vec<usize>,
    coset_count: usize,
}

impl IndexDecomposition {
    pub fn new(num_qubits: usize, targets: &[usize], controls: &[Control]) -> Self {
        let mut fixed_sorted: Vec<usize> = targets
            .iter()
            .copied()
            .chain(controls.iter().map(|c| c.qubit))
            .collect();
        fixed_sorted.sort_unstable();
        let control_value_mask = controls
            .iter()
            .filter(|c| c.value == 1)
            .fold(0, |acc, c| acc | (1usize << c.qubit));
        let offsets = (0..1usize << targets.len())
            .map(|i| scatter_bits(i, targets))
            .collect();
        let coset_count = 1usize << (num_qubits - fixed_sorted.len());
        Self {
            fixed_sorted,
            control_value_mask,
            offsets,
            coset_count,
        }
    }

    /// Number of cosets the kernel loops over, `2^(n - m_t - m_c)`.
    #[inline]
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    /// Base index of coset `k`: target bits zero, control bits at their active values.
    #[inline(always)]
    pub fn coset_base(&self, k: usize) -> usize {
        insert_zero_bits(k, &self.fixed_sorted) | self.control_value_mask
    }

    /// `offsets()[i]` is the basis offset whose target bits spell `i`.
    #[inline]
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn b0(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.coset_count).map(move |k| self.coset_base(k))
    }

    pub fn fixed_mask(&self) -> usize {
        mask_of(&self.fixed_sorted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_middle_target() {
        let d = IndexDecomposition::new(3, &[1], &[]);
        assert_eq!(d.b0().collect::<Vec<_>>(), vec![0, 1, 4, 5]);
        assert_eq!(d.offsets(), &[0, 2]);
    }

    #[test]
    fn all_targets() {
        let d = IndexDecomposition::new(2, &[0, 1], &[]);
        assert_eq!(d.b0().collect::<Vec<_>>(), vec![0]);
        assert_eq!(d.offsets(), &[0, 1, 2, 3]);
    }

    #[test]
    fn split_targets_follow_list_order() {
        let d = IndexDecomposition::new(3, &[0, 2], &[]);
        assert_eq!(d.offsets(), &[0, 1, 4, 5]);
        let d = IndexDecomposition::new(3, &[2, 0], &[]);
        assert_eq!(d.offsets(), &[0, 4, 1, 5]);
    }

    #[test]
    fn controls_fix_bits() {
        let d = IndexDecomposition::new(4, &[1], &[Control::new(2, 0), Control::new(3, 1)]);
        assert_eq!(d.b0().collect::<Vec<_>>(), vec![8, 9]);
    }

    #[test]
    fn cosets_partition_the_space() {
        for (n, targets, controls) in [
            (5usize, vec![3usize, 0], vec![]),
            (6, vec![5], vec![Control::new(1, 1)]),
            (4, vec![2, 1, 3], vec![Control::new(0, 0)]),
        ] {
            let d = IndexDecomposition::new(n, &targets, &controls);
            let mut hit = vec![0u32; 1 << n];
            for base in d.b0() {
                for off in d.offsets() {
                    hit[base + off] += 1;
                }
            }
            // every index satisfying the controls is written exactly once
            for (x, h) in hit.iter().enumerate() {
                let active = controls.iter().all(|c| ((x >> c.qubit) & 1) as u8 == c.value);
                assert_eq!(*h, u32::from(active), "index {x}");
            }
        }
    }
}
