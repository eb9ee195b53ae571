//! Data-parallel map/reduce over index ranges.
//!
//! With the `parallel` feature (default) work is spread over a rayon pool;
//! without it every reduction runs sequentially. Reductions in this crate
//! combine exact integers, so the result never depends on how the range was
//! split.
//!
//! [`with_workers`] pins the worker count for everything run inside it.
//! One worker means the sequential path, which is what the CLI uses unless
//! told otherwise.

use std::cell::Cell;

thread_local! {
    static WORKERS: Cell<Option<usize>> = const { Cell::new(None) };
}

/// Runs `f` with exactly `workers` threads available to the reductions in
/// this crate. Without the `parallel` feature the count is still recorded
/// (it fixes the Monte-Carlo stream layout) but work runs on one thread.
pub fn with_workers<T, F>(workers: usize, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let workers = workers.max(1);
    #[cfg(feature = "parallel")]
    if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        return pool.install(|| scoped(workers, f));
    }
    scoped(workers, f)
}

fn scoped<T>(workers: usize, f: impl FnOnce() -> T) -> T {
    let previous = WORKERS.with(|w| w.replace(Some(workers)));
    let out = f();
    WORKERS.with(|w| w.set(previous));
    out
}

/// Worker count in effect on this thread: the value pinned by
/// [`with_workers`], else the size of the global pool.
pub fn effective_workers() -> usize {
    if let Some(w) = WORKERS.with(Cell::get) {
        return w;
    }
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// `reduce(map(0), map(1), …, map(count-1))`, in parallel when more than one
/// worker is available. `reduce` must be associative and commutative with
/// `identity` as neutral element.
pub fn map_reduce<T, M, R, I>(count: u64, identity: I, map: M, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if effective_workers() > 1 {
        use rayon::prelude::*;
        return (0..count)
            .into_par_iter()
            .map(&map)
            .reduce(&identity, &reduce);
    }
    (0..count).map(map).fold(identity(), reduce)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_count_is_scoped() {
        with_workers(1, || assert_eq!(effective_workers(), 1));
        assert_eq!(with_workers(3, effective_workers), 3);
        assert_eq!(with_workers(0, effective_workers), 1);
    }

    #[test]
    fn reduction_is_split_invariant() {
        let seq = with_workers(1, || map_reduce(10_000, || 0u64, |i| i * i, |a, b| a + b));
        let par = with_workers(4, || map_reduce(10_000, || 0u64, |i| i * i, |a, b| a + b));
        assert_eq!(seq, par);
        assert_eq!(seq, (0..10_000u64).map(|i| i * i).sum::<u64>());
    }
}
