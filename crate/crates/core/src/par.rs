//! Data-parallel helpers.
//!
//! With the `parallel` feature these dispatch to rayon; without it they run
//! the same closures sequentially. Every helper returns results in index
//! order, so outputs do not depend on the number of worker threads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to consecutive `chunk`-sized pieces of `data`.
pub(crate) fn for_each_chunk_mut<F>(data: &mut [f64], chunk: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    if chunk == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    data.par_chunks_mut(chunk)
        .enumerate()
        .for_each(|(i, c)| f(i, c));
    #[cfg(not(feature = "parallel"))]
    data.chunks_mut(chunk)
        .enumerate()
        .for_each(|(i, c)| f(i, c));
}

/// Like [`for_each_chunk_mut`] with two equally chunked buffers walked in lockstep.
pub(crate) fn for_each_chunk_pair<F>(out: &mut [f64], input: &[f64], chunk: usize, f: F)
where
    F: Fn(usize, &mut [f64], &[f64]) + Sync + Send,
{
    if chunk == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    out.par_chunks_mut(chunk)
        .zip(input.par_chunks(chunk))
        .enumerate()
        .for_each(|(i, (o, x))| f(i, o, x));
    #[cfg(not(feature = "parallel"))]
    out.chunks_mut(chunk)
        .zip(input.chunks(chunk))
        .enumerate()
        .for_each(|(i, (o, x))| f(i, o, x));
}

/// Maps `f` over chunks, collecting one value per chunk.
pub(crate) fn map_chunks_mut<T, F>(data: &mut [f64], chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut [f64]) -> T + Sync + Send,
{
    if chunk == 0 {
        return Vec::new();
    }
    #[cfg(feature = "parallel")]
    return data
        .par_chunks_mut(chunk)
        .enumerate()
        .map(|(i, c)| f(i, c))
        .collect();
    #[cfg(not(feature = "parallel"))]
    return data
        .chunks_mut(chunk)
        .enumerate()
        .map(|(i, c)| f(i, c))
        .collect();
}

/// Maps `f` over `0..len`, preserving order.
pub(crate) fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    return (0..len).into_par_iter().map(f).collect();
    #[cfg(not(feature = "parallel"))]
    return (0..len).map(f).collect();
}

/// Number of worker threads the current context would use.
pub fn current_workers() -> usize {
    #[cfg(feature = "parallel")]
    return rayon::current_num_threads();
    #[cfg(not(feature = "parallel"))]
    return 1;
}

/// Runs `f` on a dedicated pool of `workers` threads. Without the `parallel`
/// feature this simply calls `f`.
pub fn with_workers<T, F>(workers: usize, f: F) -> crate::Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    if workers == 0 {
        return Err(crate::Error::config("worker count must be at least 1"));
    }
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| crate::Error::config(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(f))
    }
    #[cfg(not(feature = "parallel"))]
    Ok(f())
}
