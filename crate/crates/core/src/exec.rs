//! Data-parallel helpers with a sequential fallback.
//!
//! Work is split into fixed-size index chunks whose boundaries do not depend
//! on the number of workers, and partial results are merged in chunk order,
//! so every helper returns the same value under either [`Execution`] mode.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How enumeration loops are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    /// Plain loops on the calling thread.
    Sequential,
    /// Rayon work-stealing over index chunks. Falls back to sequential when
    /// the crate is built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    /// True if this mode actually fans out to a thread pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

const CHUNK: usize = 64;

fn chunks(len: usize) -> Vec<Range<usize>> {
    (0..len)
        .step_by(CHUNK)
        .map(|start| start..(start + CHUNK).min(len))
        .collect()
}

/// Folds each chunk of `0..len` into a private accumulator, then merges the
/// accumulators left to right.
pub fn fold_chunks<T, I, F, M>(len: usize, exec: Execution, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, Range<usize>) -> T + Sync + Send,
    M: Fn(T, T) -> T,
{
    let ranges = chunks(len);
    let partials: Vec<T> = if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            ranges.into_par_iter().map(|r| fold(init(), r)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    } else {
        ranges.into_iter().map(|r| fold(init(), r)).collect()
    };
    partials.into_iter().fold(init(), merge)
}

/// Evaluates `f` at every index of `0..len`, preserving order.
pub fn map_indices<T, F>(len: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            (0..len).into_par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    } else {
        (0..len).map(f).collect()
    }
}

/// Maps `f` over a slice of items, preserving order.
pub fn map_items<S, T, F>(items: &[S], exec: Execution, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            items.par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    } else {
        items.iter().map(f).collect()
    }
}
