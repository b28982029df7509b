use crate::error::{Error, Result};

/// Runs `f` inside a dedicated rayon pool with `workers` threads. Every
/// parallel enumeration in the crate merges results in a fixed order, so
/// the output does not depend on `workers`.
pub fn with_workers<R, F>(workers: usize, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Workers(e.to_string()))?;
    Ok(pool.install(f))
}
