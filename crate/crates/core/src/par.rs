//! Sample-level data parallelism. With the `parallel` feature the maps run
//! on rayon; without it they run sequentially. Results are always returned
//! in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f(0), ..., f(n-1)`, in parallel when the feature is enabled.
pub fn map_indices<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Always sequential; the baseline in benchmarks.
pub fn map_indices_seq<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..n).map(f).collect()
}

/// Runs `op` with at most `workers` threads (0 means the rayon default).
pub fn with_workers<R, F>(workers: usize, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers == 0 {
            return op();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        op()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let f = |i: u64| i.wrapping_mul(0x9E37_79B9).rotate_left(7);
        let a = with_workers(2, || map_indices(1000, f));
        let b = map_indices_seq(1000, f);
        assert_eq!(a, b);
    }
}
