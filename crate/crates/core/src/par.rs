//! Block-parallel map with a sequential fallback.
//!
//! Results always come back in block order, so any fold over them is
//! independent of the worker count.

use crate::error::Error;

/// Applies `f` to every block and returns the results in block order.
/// Uses a dedicated pool of `workers` threads when the `parallel` feature is
/// enabled and `workers > 1`.
pub fn map_blocks<B, T, F>(blocks: &[B], workers: usize, f: F) -> Result<Vec<T>, Error>
where
    B: Sync,
    T: Send,
    F: Fn(&B) -> Result<T, Error> + Sync + Send,
{
    if workers <= 1 || blocks.len() <= 1 {
        return map_sequential(blocks, f);
    }
    map_parallel(blocks, workers, f)
}

pub fn map_sequential<B, T, F>(blocks: &[B], f: F) -> Result<Vec<T>, Error>
where
    F: Fn(&B) -> Result<T, Error>,
{
    blocks.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<B, T, F>(blocks: &[B], workers: usize, f: F) -> Result<Vec<T>, Error>
where
    B: Sync,
    T: Send,
    F: Fn(&B) -> Result<T, Error> + Sync + Send,
{
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {}", e)))?;
    pool.install(|| blocks.par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
pub fn map_parallel<B, T, F>(blocks: &[B], _workers: usize, f: F) -> Result<Vec<T>, Error>
where
    B: Sync,
    T: Send,
    F: Fn(&B) -> Result<T, Error> + Sync + Send,
{
    map_sequential(blocks, f)
}

/// Splits `[lo, hi]` into half-open blocks `[a, b)` aligned to multiples of
/// `block_len`.
pub fn blocks(lo: u64, hi: u64, block_len: u64) -> Vec<(u64, u64)> {
    assert!(block_len > 0);
    let end = hi + 1;
    let mut out = Vec::new();
    let mut a = lo;
    while a < end {
        let b = ((a / block_len + 1) * block_len).min(end);
        out.push((a, b));
        a = b;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_cover_range() {
        assert_eq!(blocks(0, 9, 4), vec![(0, 4), (4, 8), (8, 10)]);
        assert_eq!(blocks(5, 5, 4), vec![(5, 6)]);
        assert_eq!(blocks(3, 8, 4), vec![(3, 4), (4, 8), (8, 9)]);
    }

    #[test]
    fn order_is_preserved() {
        let b: Vec<u64> = (0..100).collect();
        let seq = map_blocks(&b, 1, |&x| Ok(x * x)).unwrap();
        let par = map_blocks(&b, 4, |&x| Ok(x * x)).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn errors_propagate() {
        let b: Vec<u64> = (0..10).collect();
        let r = map_blocks(&b, 3, |&x| {
            if x == 7 {
                Err(Error::InvalidArgument("seven".into()))
            } else {
                Ok(x)
            }
        });
        assert!(r.is_err());
    }
}
