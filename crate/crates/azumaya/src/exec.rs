//! Data-parallel map helpers.
//!
//! Per-triangle and per-edge checks are independent, so verification loops
//! funnel through [`map_indexed`], which fans out over rayon when the
//! `parallel` feature is enabled. [`map_indexed_seq`] is the sequential
//! path; the `parallel` bench compares the two on identical workloads.
//! Outputs are ordered by index either way, so results are deterministic.

/// Apply `f` to `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_seq(n, f)
}

/// Sequential fallback, always available (used by the bench suite).
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
