//! Bit-twiddling helpers for basis-index arithmetic.

/// Spread the bits of `k` so that a zero lands at every position in
/// `sorted_positions` (ascending).
#[inline(always)]
pub fn insert_zero_bits(mut k: usize, sorted_positions: &[usize]) -> usize {
    for &q in sorted_positions {
        let low = k & ((1usize << q) - 1);
        k = ((k >> q) << (q + 1)) | low;
    }
    k
}

/// Gather the bits of `index` at `positions` into a compact integer whose
/// bit `i` is bit `positions[i]` of `index`.
#[inline(always)]
pub fn gather_bits(index: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &q)| acc | (((index >> q) & 1) << i))
}

/// Inverse of [`gather_bits`]: place bit `i` of `sub` at `positions[i]`.
#[inline(always)]
pub fn scatter_bits(sub: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &q)| acc | (((sub >> i) & 1) << q))
}

pub fn mask_of(positions: &[usize]) -> usize {
    positions.iter().fold(0, |acc, &q| acc | (1usize << q))
}
