//! Data-parallel dispatch for loops over basis indices.
//!
//! Gate kernels iterate over the cosets of the target-qubit subspace. Each
//! coset touches a disjoint set of amplitudes, so the coset range is split
//! into one contiguous chunk per worker. Below a configurable qubit count
//! the loop runs on the calling thread.

use std::marker::PhantomData;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;

/// Default qubit count below which kernels never dispatch to the thread pool.
pub const DEFAULT_PARALLEL_THRESHOLD: usize = 13;

static PARALLEL_THRESHOLD: AtomicUsize = AtomicUsize::new(DEFAULT_PARALLEL_THRESHOLD);

/// Qubit count at which kernels start using the thread pool.
pub fn parallel_threshold() -> usize {
    PARALLEL_THRESHOLD.load(Ordering::Relaxed)
}

/// Set the qubit count at which kernels start using the thread pool.
pub fn set_parallel_threshold(num_qubits: usize) {
    PARALLEL_THRESHOLD.store(num_qubits, Ordering::Relaxed);
}

pub(crate) fn use_parallel(num_qubits: usize, count: usize) -> bool {
    num_qubits >= parallel_threshold() && rayon::current_num_threads() > 1 && count >= 2
}

/// Raw view of an amplitude buffer shared across workers.
///
/// Callers must guarantee that no two workers touch the same index.
#[derive(Clone, Copy)]
pub(crate) struct SharedAmps<'a> {
    ptr: *mut Complex64,
    len: usize,
    _marker: PhantomData<&'a mut [Complex64]>,
}

unsafe impl Send for SharedAmps<'_> {}
unsafe impl Sync for SharedAmps<'_> {}

impl<'a> SharedAmps<'a> {
    pub(crate) fn new(amps: &'a mut [Complex64]) -> Self {
        Self {
            ptr: amps.as_mut_ptr(),
            len: amps.len(),
            _marker: PhantomData,
        }
    }

    /// # Safety
    /// `index < len` and no other worker writes this index concurrently.
    #[inline(always)]
    pub(crate) unsafe fn get(&self, index: usize) -> Complex64 {
        debug_assert!(index < self.len);
        *self.ptr.add(index)
    }

    /// # Safety
    /// `index < len` and no other worker reads or writes this index concurrently.
    #[inline(always)]
    pub(crate) unsafe fn set(&self, index: usize, value: Complex64) {
        debug_assert!(index < self.len);
        *self.ptr.add(index) = value;
    }
}

/// Run `body(scratch, k)` for every `k` in `0..count`.
///
/// In parallel mode the range is split evenly into one chunk per worker and
/// `init` is called once per worker to build its scratch space.
pub(crate) fn for_each_coset<S, I, F>(num_qubits: usize, count: usize, init: I, body: F)
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, usize) + Sync,
{
    if count == 0 {
        return;
    }
    if !use_parallel(num_qubits, count) {
        let mut scratch = init();
        for k in 0..count {
            body(&mut scratch, k);
        }
        return;
    }
    let workers = rayon::current_num_threads().min(count);
    let chunk = count.div_ceil(workers);
    (0..workers).into_par_iter().for_each(|w| {
        let start = w * chunk;
        let end = count.min(start + chunk);
        if start >= end {
            return;
        }
        let mut scratch = init();
        for k in start..end {
            body(&mut scratch, k);
        }
    });
}

/// Deterministic blocked sum of `f(i)` over `0..count`.
///
/// Blocks have a fixed size, so the reduction order does not depend on
/// the number of worker threads.
pub(crate) fn blocked_sum<F>(num_qubits: usize, count: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    const BLOCK: usize = 1 << 12;
    let blocks = count.div_ceil(BLOCK);
    let block_sum = |b: usize| {
        let start = b * BLOCK;
        let end = count.min(start + BLOCK);
        (start..end).map(&f).sum::<Complex64>()
    };
    if use_parallel(num_qubits, blocks) {
        let partial: Vec<Complex64> = (0..blocks).into_par_iter().map(block_sum).collect();
        partial.into_iter().sum()
    } else {
        (0..blocks).map(block_sum).sum()
    }
}
