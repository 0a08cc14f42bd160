//! Data-parallel map/reduce over an index range, with a sequential fallback
//! when the `parallel` feature is disabled. Every caller is a pure fold, so
//! results are identical either way.

#[cfg(feature = "parallel")]
pub(crate) fn indexed_map_reduce<R, M, F>(n: usize, map: M, identity: R, fold: F) -> R
where
    R: Send + Clone + Sync,
    M: Fn(usize) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .map(map)
        .reduce(|| identity.clone(), &fold)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn indexed_map_reduce<R, M, F>(n: usize, map: M, identity: R, fold: F) -> R
where
    R: Clone,
    M: Fn(usize) -> R,
    F: Fn(R, R) -> R,
{
    (0..n).map(map).fold(identity, fold)
}
