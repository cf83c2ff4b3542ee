//! Thin switch between rayon and sequential iteration. The `parallel`
//! feature (on by default) routes the data-parallel loops through rayon;
//! without it the same code runs sequentially. The `*_seq` entry points are
//! kept unconditionally so benchmarks can compare both paths in one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, in parallel when the feature allows it.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Sequential twin of [`map_collect`].
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Sum `f` over `0..n`, in parallel when enabled.
pub fn sum_over<F>(n: usize, f: F) -> u128
where
    F: Fn(usize) -> u128 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).sum()
    }
}

/// Sequential twin of [`sum_over`].
pub fn sum_over_seq<F>(n: usize, f: F) -> u128
where
    F: Fn(usize) -> u128,
{
    (0..n).map(f).sum()
}
