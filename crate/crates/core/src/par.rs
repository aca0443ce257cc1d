//! Index-parallel map used by the batch evaluators.
//!
//! With the `rayon` feature the work is spread over the global rayon pool;
//! without it the same closure runs sequentially. Output order always follows
//! the index order, so any reduction done afterwards by the caller is
//! bit-reproducible regardless of thread count.

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// Evaluates `f(i)` for `i in 0..len` and collects the results in index order.
#[cfg(feature = "rayon")]
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "rayon"))]
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).map(f).collect()
}

/// Sums `f(i)` over `0..len` in a fixed left-to-right order.
pub fn sum_indexed<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    map_indexed(len, f).into_iter().sum()
}
