//! Per-seed fan-out. With the `parallel` feature (default) seeds are mapped
//! with rayon; without it the same API runs sequentially. Results are always
//! ordered by node index, never by completion order.

use crate::error::Result;

#[cfg(feature = "parallel")]
pub fn try_map_nodes<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn try_map_nodes<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Caps worker threads for subsequent parallel sweeps. No-op without the
/// `parallel` feature or once a pool exists.
pub fn configure_threads(jobs: usize) {
    #[cfg(feature = "parallel")]
    {
        if jobs > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}
