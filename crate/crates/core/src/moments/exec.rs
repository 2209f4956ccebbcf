//! Ordered data-parallel map. With the `parallel` feature the work runs on a
//! rayon pool; without it everything runs on the calling thread. Results come
//! back in input order either way, so reductions over them are reproducible.

use crate::error::{Error, Result};

/// Whether the crate was built with the rayon backend.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// `items.map(f)` in order, with per-worker scratch from `init`.
#[cfg(feature = "parallel")]
pub fn ordered_map<T, S, R>(items: &[T], init: impl Fn() -> S + Sync + Send, f: impl Fn(&mut S, &T) -> R + Sync + Send) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    use rayon::prelude::*;
    items.par_iter().map_init(init, f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn ordered_map<T, S, R>(items: &[T], init: impl Fn() -> S, f: impl Fn(&mut S, &T) -> R) -> Vec<R> {
    let mut scratch = init();
    items.iter().map(|x| f(&mut scratch, x)).collect()
}

/// Runs `job` on a pool of `threads` workers (`None`: the global pool).
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: Option<usize>, job: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(job()),
        Some(0) => Err(Error::Domain("thread count must be at least 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(threads: Option<usize>, job: impl FnOnce() -> R + Send) -> Result<R> {
    if threads == Some(0) {
        return Err(Error::Domain("thread count must be at least 1".into()));
    }
    Ok(job())
}
