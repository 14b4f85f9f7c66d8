//! Data-parallel map/reduce over independent work items.
//!
//! With the `parallel` feature (default) the work is distributed with rayon;
//! without it the same fold runs sequentially. Callers must supply an
//! associative, commutative `reduce` so the result is schedule-independent.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_reduce<T, A>(
    tasks: Vec<T>,
    map: impl Fn(T) -> A + Sync + Send,
    identity: impl Fn() -> A + Sync + Send,
    reduce: impl Fn(A, A) -> A + Sync + Send,
) -> A
where
    T: Send,
    A: Send,
{
    tasks
        .into_par_iter()
        .map(map)
        .reduce(&identity, &reduce)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_reduce<T, A>(
    tasks: Vec<T>,
    map: impl Fn(T) -> A + Sync + Send,
    identity: impl Fn() -> A + Sync + Send,
    reduce: impl Fn(A, A) -> A + Sync + Send,
) -> A
where
    T: Send,
    A: Send,
{
    tasks.into_iter().map(map).fold(identity(), reduce)
}
