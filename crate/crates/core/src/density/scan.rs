//! Prime-range scans producing per-checkpoint histograms.
//!
//! The range `[2, x]` is cut into fixed blocks; each block is sieved and
//! classified independently and the partial histograms are added in block
//! order. Integer counts make the merge exact, so the outcome does not depend
//! on the worker count or block size.

use crate::catalog::FieldDescriptor;
use crate::error::Error;
use crate::par;
use crate::splitting::sieve::{isqrt, SEGMENT};
use crate::splitting::{ddf_degrees, frobenius_class, primes_in_range, simple_sieve, IntPolynomial};

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub workers: usize,
    pub block_len: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: 1,
            block_len: SEGMENT,
        }
    }
}

impl ScanOptions {
    pub fn with_workers(workers: usize) -> Self {
        ScanOptions {
            workers: workers.max(1),
            ..Default::default()
        }
    }
}

/// Ascending, distinct checkpoint values `≥ 2`; the last one is `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoints(Vec<u64>);

pub const DEFAULT_CHECKPOINTS: usize = 20;
pub const FIRST_CHECKPOINT: u64 = 1_000;

impl Checkpoints {
    /// `k` values spaced geometrically from `min(1000, x)` to `x`, rounded
    /// and deduplicated.
    pub fn geometric(x: u64, k: usize) -> Result<Self, Error> {
        if x < 2 {
            return Err(Error::InvalidArgument(format!("x must be at least 2, got {}", x)));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("checkpoint count must be positive".into()));
        }
        let lo = FIRST_CHECKPOINT.min(x);
        let mut v: Vec<u64> = if k == 1 {
            vec![x]
        } else {
            let ratio = (x as f64 / lo as f64).ln();
            (0..k)
                .map(|i| {
                    let t = i as f64 / (k - 1) as f64;
                    ((lo as f64) * (ratio * t).exp()).round() as u64
                })
                .collect()
        };
        if let Some(last) = v.last_mut() {
            *last = x;
        }
        for c in v.iter_mut() {
            *c = (*c).clamp(lo, x);
        }
        v.dedup();
        Ok(Checkpoints(v))
    }

    pub fn explicit(mut v: Vec<u64>) -> Result<Self, Error> {
        v.sort_unstable();
        v.dedup();
        if v.is_empty() || v[0] < 2 {
            return Err(Error::InvalidArgument("checkpoints must be non-empty and >= 2".into()));
        }
        Ok(Checkpoints(v))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> u64 {
        *self.0.last().unwrap()
    }

    /// Index of the first checkpoint `≥ n`, if any.
    pub fn bucket(&self, n: u64) -> Option<usize> {
        let i = self.0.partition_point(|&c| c < n);
        (i < self.0.len()).then_some(i)
    }
}

/// Cumulative histogram `counts[i][j]`: number of items with value
/// `≤ checkpoints[i]` in category `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub checkpoints: Checkpoints,
    pub counts: Vec<Vec<u64>>,
}

impl Histogram {
    fn from_buckets(checkpoints: Checkpoints, partials: Vec<Vec<Vec<u64>>>, width: usize) -> Self {
        let mut counts = vec![vec![0u64; width]; checkpoints.len()];
        for part in partials {
            for (row, prow) in counts.iter_mut().zip(part) {
                for (c, v) in row.iter_mut().zip(prow) {
                    *c += v;
                }
            }
        }
        for i in 1..counts.len() {
            let (done, rest) = counts.split_at_mut(i);
            for (c, prev) in rest[0].iter_mut().zip(&done[i - 1]) {
                *c += prev;
            }
        }
        Histogram { checkpoints, counts }
    }

    pub fn width(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    pub fn total_at(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }
}

fn prime_blocks(x: u64, opts: ScanOptions) -> (Vec<(u64, u64)>, Vec<u64>) {
    (par::blocks(2, x, opts.block_len), simple_sieve(isqrt(x)))
}

/// Good primes `≤ max checkpoint` counted by Frobenius class of `entry`.
pub fn scan_frobenius(
    entry: &FieldDescriptor,
    checkpoints: &Checkpoints,
    opts: ScanOptions,
) -> Result<Histogram, Error> {
    let width = entry.group().class_count();
    let (blocks, base) = prime_blocks(checkpoints.max(), opts);
    let partials = par::map_blocks(&blocks, opts.workers, |&(lo, hi)| {
        let mut part = vec![vec![0u64; width]; checkpoints.len()];
        for p in primes_in_range(lo, hi, &base) {
            if entry.is_bad_prime(p) {
                continue;
            }
            let c = frobenius_class(entry, p)?;
            let b = checkpoints.bucket(p).expect("p is at most the last checkpoint");
            part[b][c] += 1;
        }
        Ok(part)
    })?;
    Ok(Histogram::from_buckets(checkpoints.clone(), partials, width))
}

/// Primes of the field defined by `g` (one per irreducible factor of `g`
/// mod p, norm `p^d`) with norm `≤` each checkpoint, in a single column.
/// Primes in `bad` are skipped.
pub fn scan_norms(
    g: &IntPolynomial,
    bad: &[u64],
    checkpoints: &Checkpoints,
    opts: ScanOptions,
) -> Result<Histogram, Error> {
    let x = checkpoints.max();
    let (blocks, base) = prime_blocks(x, opts);
    let partials = par::map_blocks(&blocks, opts.workers, |&(lo, hi)| {
        let mut part = vec![vec![0u64; 1]; checkpoints.len()];
        for p in primes_in_range(lo, hi, &base) {
            if bad.binary_search(&p).is_ok() {
                continue;
            }
            for d in ddf_degrees(g, p)?.degrees() {
                if let Some(norm) = checked_pow(p, d) {
                    if let Some(b) = checkpoints.bucket(norm) {
                        part[b][0] += 1;
                    }
                }
            }
        }
        Ok(part)
    })?;
    Ok(Histogram::from_buckets(checkpoints.clone(), partials, 1))
}

fn checked_pow(p: u64, d: usize) -> Option<u64> {
    (0..d).try_fold(1u64, |acc, _| acc.checked_mul(p))
}

/// For each `s`, per-class sums `Σ p^{-s}` over good primes `p ≤ cutoff`.
/// Block partials are added in block order.
pub fn scan_dirichlet(
    entry: &FieldDescriptor,
    s_values: &[f64],
    cutoff: u64,
    opts: ScanOptions,
) -> Result<Vec<Vec<f64>>, Error> {
    let width = entry.group().class_count();
    let (blocks, base) = prime_blocks(cutoff, opts);
    let partials = par::map_blocks(&blocks, opts.workers, |&(lo, hi)| {
        let mut part = vec![vec![0f64; width]; s_values.len()];
        for p in primes_in_range(lo, hi, &base) {
            if entry.is_bad_prime(p) {
                continue;
            }
            let c = frobenius_class(entry, p)?;
            let lp = (p as f64).ln();
            for (row, &s) in part.iter_mut().zip(s_values) {
                row[c] += (-s * lp).exp();
            }
        }
        Ok(part)
    })?;
    let mut total = vec![vec![0f64; width]; s_values.len()];
    for part in partials {
        for (row, prow) in total.iter_mut().zip(part) {
            for (t, v) in row.iter_mut().zip(prow) {
                *t += v;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, find_entry};
    use crate::splitting::sieve_primes;

    #[test]
    fn geometric_checkpoints() {
        let c = Checkpoints::geometric(1_000_000, 20).unwrap();
        assert_eq!(c.len(), 20);
        assert_eq!(c.values()[0], 1000);
        assert_eq!(c.max(), 1_000_000);
        assert!(c.values().windows(2).all(|w| w[0] < w[1]));

        assert_eq!(Checkpoints::geometric(1000, 20).unwrap().values(), &[1000]);
        assert_eq!(Checkpoints::geometric(50, 3).unwrap().values(), &[50]);
        assert_eq!(Checkpoints::geometric(5000, 1).unwrap().values(), &[5000]);
        assert!(Checkpoints::geometric(1, 3).is_err());
        assert!(Checkpoints::geometric(10, 0).is_err());
    }

    #[test]
    fn buckets() {
        let c = Checkpoints::explicit(vec![10, 100]).unwrap();
        assert_eq!(c.bucket(2), Some(0));
        assert_eq!(c.bucket(10), Some(0));
        assert_eq!(c.bucket(11), Some(1));
        assert_eq!(c.bucket(101), None);
    }

    #[test]
    fn frobenius_histogram_partitions_good_primes() {
        let cat = builtin_catalog();
        let e = find_entry(&cat, "s3-cbrt2").unwrap();
        let cps = Checkpoints::explicit(vec![100, 1000, 20_000]).unwrap();
        let h = scan_frobenius(e, &cps, ScanOptions::default()).unwrap();
        for (i, &x) in cps.values().iter().enumerate() {
            let good = sieve_primes(x).filter(|&p| !e.is_bad_prime(p)).count() as u64;
            assert_eq!(h.total_at(i), good);
        }
    }

    #[test]
    fn partition_independent_of_blocks_and_workers() {
        let cat = builtin_catalog();
        let e = find_entry(&cat, "s4").unwrap();
        let cps = Checkpoints::geometric(200_000, 7).unwrap();
        let base = scan_frobenius(e, &cps, ScanOptions::default()).unwrap();
        for (workers, block_len) in [(2, SEGMENT), (8, SEGMENT), (3, 1_000), (1, 77_777)] {
            let h = scan_frobenius(e, &cps, ScanOptions { workers, block_len }).unwrap();
            assert_eq!(h, base, "workers={workers} block_len={block_len}");
        }
        let g = &e.subfields[0].poly.clone().unwrap();
        let a = scan_norms(g, e.bad_primes(), &cps, ScanOptions::default()).unwrap();
        let b = scan_norms(g, e.bad_primes(), &cps, ScanOptions { workers: 4, block_len: 5_000 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn norms_small_case() {
        // x^3 - 2 up to 30: p = 5 gives norms 5 and 25; p = 31 is out of range.
        let g = IntPolynomial::new(vec![-2, 0, 0, 1]).unwrap();
        let cps = Checkpoints::explicit(vec![4, 30]).unwrap();
        let h = scan_norms(&g, &[2, 3], &cps, ScanOptions::default()).unwrap();
        assert_eq!(h.counts[0][0], 0);
        let mut expected = 0;
        for p in sieve_primes(30).filter(|&p| p > 3) {
            expected += crate::splitting::count_prime_power_norms(&g, p, 30).unwrap().len() as u64;
        }
        assert_eq!(h.counts[1][0], expected);
    }
}
