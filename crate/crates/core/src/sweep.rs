//! Index-ordered grid sweeps.
//!
//! Everything here collects results in index order, so downstream reductions
//! see the same operand sequence whether or not the `parallel` feature is
//! enabled — sums and maxima come out bit-identical either way.

/// Evaluates `f` at `0..n`, collecting the results in index order.
///
/// Fans out over the rayon pool when the `parallel` feature is enabled;
/// otherwise it is a plain sequential map.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Evaluates `f` at `0..n`, collecting the results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Single-threaded twin of [`map_ordered`]; the baseline the benches compare
/// against. Produces the same vector bit for bit.
pub fn map_ordered_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
