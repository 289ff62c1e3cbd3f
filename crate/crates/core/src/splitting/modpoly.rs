//! Dense polynomials over `F_p`, coefficients ascending, no trailing zeros.
//!
//! Primes up to `2^40` are supported; products go through `u128`.

pub type Poly = Vec<u64>;

pub const MAX_PRIME: u64 = 1 << 40;

/// `a · b mod p` for `a, b < p`.
#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        // reduced operands, so the product fits in 64 bits
        (a * b) % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &Poly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn reduce(coeffs: &[i64], p: u64) -> Poly {
    let mut out: Poly = coeffs
        .iter()
        .map(|&c| c.rem_euclid(p as i64) as u64)
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn div_rem(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = if b[db] == 1 { 1 } else { inv_mod(b[db], p) };
    let mut rem = a.clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = mul_mod(rem[k], lead_inv, p);
        if c == 0 {
            continue;
        }
        quot[k - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let idx = k - db + j;
            rem[idx] = (rem[idx] + p - mul_mod(c, bj, p)) % p;
        }
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub fn rem(a: &Poly, b: &Poly, p: u64) -> Poly {
    div_rem(a, b, p).1
}

pub fn make_monic(a: &mut Poly, p: u64) {
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&mut x, p);
    x
}

pub fn derivative(a: &Poly, p: u64) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
        .collect();
    trim(&mut out);
    out
}

pub fn mul_rem(a: &Poly, b: &Poly, modulus: &Poly, p: u64) -> Poly {
    rem(&mul(a, b, p), modulus, p)
}

/// `base^e mod modulus` by square-and-multiply.
pub fn pow_rem(base: &Poly, mut e: u64, modulus: &Poly, p: u64) -> Poly {
    let mut acc = rem(&vec![1], modulus, p);
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, modulus, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_rem(&b, &b, modulus, p);
        }
    }
    acc
}

pub fn is_squarefree(a: &Poly, p: u64) -> bool {
    degree(&gcd(a, &derivative(a, p), p)) == Some(0)
}

/// Degrees and counts of the irreducible factors of a squarefree polynomial
/// of positive degree, grouped by degree, by repeated gcd with
/// `x^{p^d} - x`.
pub fn distinct_degree(f: &Poly, p: u64) -> Vec<(usize, usize)> {
    let x: Poly = vec![0, 1];
    let mut rest = f.clone();
    make_monic(&mut rest, p);
    let mut h = rem(&x, &rest, p);
    let mut out = Vec::new();
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        h = pow_rem(&h, p, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            out.push((d, dg / d));
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
        }
        d += 1;
    }
    if let Some(dr) = degree(&rest) {
        if dr > 0 {
            out.push((dr, 1));
        }
    }
    out
}
