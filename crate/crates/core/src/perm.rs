//! Permutations of `{0, .., degree - 1}`.
//!
//! Composition is right-to-left: `a.compose(&b)` maps `x` to `a(b(x))`.
//! Cycle notation is 1-based on input and output, e.g. `"(1 2 3)(4 5)"`,
//! with `"()"` for the identity.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Box<[usize]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image list, checking it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {:?} is not a bijection",
                    images
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses cycle notation on `degree` points.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self, Error> {
        let bad = |msg: &str| Error::InvalidPermutation(format!("{:?}: {}", s, msg));
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad("empty string"));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let cycle = body[..close]
                .split_whitespace()
                .map(|tok| {
                    let v: usize = tok.parse().map_err(|_| bad("non-numeric point"))?;
                    if v == 0 || v > degree {
                        return Err(bad("point out of range"));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (k, &a) in cycle.iter().enumerate() {
                if moved[a] {
                    return Err(bad("point repeated"));
                }
                moved[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse()
            .compose_unchecked(&self.compose_unchecked(g))
    }

    pub fn pow(&self, e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycles as 0-based point lists, each starting at its smallest point,
    /// ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of cycle lengths; sums to the degree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Parses cycle notation with the degree inferred from the largest point.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let degree = s
            .split(|c: char| c == '(' || c == ')' || c.is_whitespace())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Permutation::parse_cycles(s, degree)
    }
}
