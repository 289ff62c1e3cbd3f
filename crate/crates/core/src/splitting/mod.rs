//! How rational primes split: factor-degree patterns of integer polynomials
//! mod p and the Frobenius class they determine.

pub mod modpoly;
pub mod sieve;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{FieldDescriptor, Resolver};
use crate::error::Error;

pub use sieve::{prime_count, primes_in_range, sieve_primes, simple_sieve};

/// Monic integer polynomial of degree ≥ 1, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Result<Self, Error> {
        match coeffs.last() {
            None => Err(Error::InvalidPolynomial("empty coefficient list".into())),
            Some(&1) if coeffs.len() >= 2 => Ok(IntPolynomial { coeffs }),
            Some(&1) => Err(Error::InvalidPolynomial("degree must be at least 1".into())),
            Some(_) => Err(Error::InvalidPolynomial(format!(
                "{:?} is not monic (coefficients are ascending)",
                coeffs
            ))),
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact discriminant `(-1)^{n(n-1)/2} Res(f, f')` for monic `f`.
    pub fn discriminant(&self) -> BigInt {
        let f: Vec<BigInt> = self.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let df: Vec<BigInt> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        let res = resultant(&f, &df);
        let n = self.degree();
        if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }
}

impl TryFrom<Vec<i64>> for IntPolynomial {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self, Error> {
        IntPolynomial::new(v)
    }
}

impl From<IntPolynomial> for Vec<i64> {
    fn from(p: IntPolynomial) -> Vec<i64> {
        p.coeffs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{}x", a)?,
                (_, 1) => write!(f, "x^{}", i)?,
                _ => write!(f, "{}x^{}", a, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Determinant of the Sylvester matrix of `a` and `b` (ascending
/// coefficients), by fraction-free Bareiss elimination.
fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

/// Strips every factor in `primes` from `n`; what remains must be `±1` for
/// `primes` to cover all prime divisors of `n`.
pub fn cofactor_after(n: &BigInt, primes: &[u64]) -> BigInt {
    let mut m = n.abs();
    for &q in primes {
        let q = BigInt::from(q);
        if q <= BigInt::one() {
            continue;
        }
        while !m.is_zero() && (&m % &q).is_zero() {
            m /= &q;
        }
    }
    m
}

/// Factor-degree pattern of a squarefree polynomial mod p, as `(degree,
/// count)` pairs sorted by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType {
    parts: Vec<(usize, usize)>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<(usize, usize)>) -> Self {
        parts.retain(|&(_, m)| m > 0);
        parts.sort_unstable();
        SplittingType { parts }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    /// Sorted multiset of factor degrees, comparable to a cycle type.
    pub fn degrees(&self) -> Vec<usize> {
        self.parts
            .iter()
            .flat_map(|&(d, m)| std::iter::repeat(d).take(m))
            .collect()
    }

    pub fn total_degree(&self) -> usize {
        self.parts.iter().map(|&(d, m)| d * m).sum()
    }
}

fn check_prime_range(p: u64) -> Result<(), Error> {
    if p < 2 || p >= modpoly::MAX_PRIME {
        Err(Error::PrimeOutOfRange(p))
    } else {
        Ok(())
    }
}

/// Distinct-degree factorization pattern of `f` mod `p`. Fails when `f` is
/// not squarefree mod `p`.
pub fn ddf_degrees(f: &IntPolynomial, p: u64) -> Result<SplittingType, Error> {
    check_prime_range(p)?;
    let fp = modpoly::reduce(f.coefficients(), p);
    if !modpoly::is_squarefree(&fp, p) {
        return Err(Error::BadPrime {
            p,
            poly: f.to_string(),
        });
    }
    Ok(SplittingType::new(modpoly::distinct_degree(&fp, p)))
}

/// Inertia degrees `d` of the primes above `p` with norm `p^d ≤ x`,
/// ascending, from the factorization of `g` mod `p` alone.
pub fn count_prime_power_norms(g: &IntPolynomial, p: u64, x: u64) -> Result<Vec<usize>, Error> {
    if p > x {
        return Ok(Vec::new());
    }
    let split = ddf_degrees(g, p)?;
    Ok(split
        .degrees()
        .into_iter()
        .filter(|&d| norm_at_most(p, d, x))
        .collect())
}

/// `p^d ≤ x` without overflow.
pub fn norm_at_most(p: u64, d: usize, x: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..d {
        match acc.checked_mul(p) {
            Some(v) if v <= x => acc = v,
            _ => return false,
        }
    }
    true
}

/// Class id in the entry's Galois group of the Frobenius at `p`.
pub fn frobenius_class(entry: &FieldDescriptor, p: u64) -> Result<usize, Error> {
    if entry.is_bad_prime(p) {
        return Err(Error::BadPrime {
            p,
            poly: entry.poly.to_string(),
        });
    }
    match &entry.resolver {
        Resolver::CycleType => {
            let split = ddf_degrees(&entry.poly, p)?;
            let ct = split.degrees();
            entry
                .class_for_cycle_type(&ct)
                .ok_or_else(|| Error::UnresolvedCycleType {
                    entry: entry.name.clone(),
                    p,
                    cycle_type: ct,
                })
        }
        Resolver::Cyclotomic(n) => Ok(entry.class_for_residue(p % n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec()).unwrap()
    }

    /// Discriminant of the trinomial `x^n + a x + b`:
    /// `(-1)^{n(n-1)/2} (n^n b^{n-1} + (-1)^{n-1} (n-1)^{n-1} a^n)`.
    fn trinomial_disc(n: u32, a: i64, b: i64) -> BigInt {
        let n_i = BigInt::from(n);
        let t1 = n_i.pow(n) * BigInt::from(b).pow(n - 1);
        let t2 = BigInt::from(n - 1).pow(n - 1) * BigInt::from(a).pow(n);
        let inner = if (n - 1) % 2 == 0 { t1 + t2 } else { t1 - t2 };
        if (n * (n - 1) / 2) % 2 == 1 {
            -inner
        } else {
            inner
        }
    }

    #[test]
    fn discriminants_against_trinomial_formula() {
        assert_eq!(trinomial_disc(3, 0, -2), BigInt::from(-108));
        assert_eq!(poly(&[-2, 0, 0, 1]).discriminant(), BigInt::from(-108));
        assert_eq!(poly(&[-1, -1, 0, 0, 1]).discriminant(), trinomial_disc(4, -1, -1));
        assert_eq!(poly(&[-1, -1, 0, 0, 1]).discriminant(), BigInt::from(-283));
        assert_eq!(poly(&[-1, -1, 0, 0, 0, 1]).discriminant(), trinomial_disc(5, -1, -1));
        assert_eq!(poly(&[-1, -1, 0, 0, 0, 1]).discriminant(), BigInt::from(2869));
        for (n, a, b) in [(2u32, 1i64, 1i64), (3, -3, 1), (4, 2, -5), (5, 7, 3), (6, -2, 9)] {
            let mut c = vec![0i64; n as usize + 1];
            c[0] = b;
            c[1] += a;
            c[n as usize] = 1;
            assert_eq!(poly(&c).discriminant(), trinomial_disc(n, a, b), "n={n} a={a} b={b}");
        }
    }

    #[test]
    fn cyclotomic_discriminants() {
        assert_eq!(poly(&[1, 1, 1, 1, 1]).discriminant(), BigInt::from(125));
        assert_eq!(poly(&[1, 1, 1, 1, 1, 1, 1]).discriminant(), BigInt::from(-16807));
        assert_eq!(poly(&[1, 1, 1]).discriminant(), BigInt::from(-3));
    }

    #[test]
    fn polynomial_validation_and_display() {
        assert!(IntPolynomial::new(vec![]).is_err());
        assert!(IntPolynomial::new(vec![1]).is_err());
        assert!(IntPolynomial::new(vec![1, 2]).is_err());
        assert_eq!(poly(&[-2, 0, 0, 1]).to_string(), "x^3 - 2");
        assert_eq!(poly(&[-1, 1, 1]).to_string(), "x^2 + x - 1");
        assert_eq!(poly(&[0, -3, 1]).to_string(), "x^2 - 3x");
    }

    #[test]
    fn ddf_examples() {
        let f = poly(&[-2, 0, 0, 1]);
        assert_eq!(ddf_degrees(&f, 5).unwrap().parts(), &[(1, 1), (2, 1)]);
        assert_eq!(ddf_degrees(&f, 31).unwrap().parts(), &[(1, 3)]);
        assert_eq!(ddf_degrees(&f, 7).unwrap().parts(), &[(3, 1)]);
        assert!(matches!(ddf_degrees(&f, 2), Err(Error::BadPrime { p: 2, .. })));
        assert!(matches!(ddf_degrees(&f, 3), Err(Error::BadPrime { p: 3, .. })));
        assert!(matches!(ddf_degrees(&f, 1 << 41), Err(Error::PrimeOutOfRange(_))));
    }

    #[test]
    fn ddf_degree_sum() {
        let f = poly(&[-1, -1, 0, 0, 0, 1]);
        for p in sieve_primes(20_000).filter(|&p| p != 19 && p != 151) {
            assert_eq!(ddf_degrees(&f, p).unwrap().total_degree(), 5);
        }
    }

    #[test]
    fn prime_power_norms() {
        let g = poly(&[-2, 0, 0, 1]);
        assert_eq!(count_prime_power_norms(&g, 5, 30).unwrap(), vec![1, 2]);
        assert_eq!(count_prime_power_norms(&g, 5, 24).unwrap(), vec![1]);
        assert_eq!(count_prime_power_norms(&g, 31, 31).unwrap(), vec![1, 1, 1]);
        assert!(count_prime_power_norms(&g, 37, 31).unwrap().is_empty());
        assert!(norm_at_most(10, 18, u64::MAX));
        assert!(!norm_at_most(10, 20, u64::MAX));
    }

    #[test]
    fn cofactor() {
        assert_eq!(cofactor_after(&BigInt::from(-108), &[2, 3]), BigInt::one());
        assert_eq!(cofactor_after(&BigInt::from(2869), &[19]), BigInt::from(151));
    }
}
