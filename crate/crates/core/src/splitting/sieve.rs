//! Segmented sieve of Eratosthenes.

/// Numbers per segment. Block boundaries for parallel scans are multiples of
/// this, so results never depend on the worker count.
pub const SEGMENT: u64 = 1 << 16;

/// Primes `≤ limit` by a plain sieve. Used for the base primes of the
/// segmented sieve.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes in `[lo, hi)`. `base` must contain every prime `≤ √(hi - 1)`.
pub fn primes_in_range(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let lo = lo.max(2);
    if hi <= lo {
        return Vec::new();
    }
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &q in base {
        if q * q >= hi {
            break;
        }
        let mut start = q * q;
        if start < lo {
            start = lo.div_ceil(q) * q;
        }
        let mut m = start;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += q;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// Ascending iterator over the primes `≤ limit`, one segment in memory at a
/// time.
pub struct PrimeIter {
    base: Vec<u64>,
    limit: u64,
    next_lo: u64,
    buffer: std::vec::IntoIter<u64>,
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(p) = self.buffer.next() {
                return Some(p);
            }
            if self.next_lo > self.limit {
                return None;
            }
            let hi = (self.next_lo + SEGMENT).min(self.limit + 1);
            self.buffer = primes_in_range(self.next_lo, hi, &self.base).into_iter();
            self.next_lo = hi;
        }
    }
}

pub fn sieve_primes(limit: u64) -> PrimeIter {
    PrimeIter {
        base: simple_sieve(isqrt(limit)),
        limit,
        next_lo: 0,
        buffer: Vec::new().into_iter(),
    }
}

pub fn prime_count(limit: u64) -> usize {
    sieve_primes(limit).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division, independent of any sieve.
    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_limits() {
        assert_eq!(sieve_primes(10).collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(1).count(), 0);
        assert_eq!(sieve_primes(0).count(), 0);
        assert_eq!(sieve_primes(2).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn matches_trial_division_across_segments() {
        let limit = 3 * SEGMENT + 17;
        let seg: Vec<u64> = sieve_primes(limit).collect();
        let oracle: Vec<u64> = (0..=limit).filter(|&n| is_prime(n)).collect();
        assert_eq!(seg, oracle);
    }

    #[test]
    fn pi_of_a_million() {
        assert_eq!(prime_count(1_000_000), 78498);
        assert_eq!(simple_sieve(1_000_000).len(), 78498);
    }

    #[test]
    fn isqrt_exact() {
        for n in [0u64, 1, 3, 4, 15, 16, 17, 999_999, 1_000_000, u32::MAX as u64 * 7] {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
