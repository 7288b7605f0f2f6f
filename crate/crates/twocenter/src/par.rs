//! Thin data-parallel helpers. With the `parallel` feature (default) these
//! dispatch over rayon; without it they run sequentially, so the numerical
//! results are bit-identical either way (each work item is independent).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map f over 0..n, preserving order.
#[cfg(feature = "parallel")]
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Map f over a slice, preserving order.
#[cfg(feature = "parallel")]
pub fn map_slice<X, T, F>(xs: &[X], f: F) -> Vec<T>
where
    X: Sync,
    T: Send,
    F: Fn(&X) -> T + Sync + Send,
{
    xs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<X, T, F>(xs: &[X], f: F) -> Vec<T>
where
    F: Fn(&X) -> T,
{
    xs.iter().map(f).collect()
}
