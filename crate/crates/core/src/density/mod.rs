//! Normalized prime sums and their limits.
//!
//! Sums are accumulated exactly (integer class counts times rational
//! weights) and divided by `Li(x)` only when a ratio is reported.
//!
//! * [`gamma_series`]: primes with Frobenius in a given class.
//! * [`expectation_e`]: a class function on `H = Gal(L/E)`, summed over the
//!   degree-one primes of `E`, read off from the cosets of `H` fixed by the
//!   Frobenius.
//! * [`expectation_k`]: a class function on `G` evaluated at the Frobenius.
//! * [`expectation_e_independent`]: all primes of `E` by norm, counted from
//!   the factorization of a defining polynomial with no group theory.
//! * [`analytic_sides`]: truncated Dirichlet series over `-log(s - 1)`.

pub mod li;
pub mod reduce;
pub mod report;
pub mod scan;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::catalog::{FieldDescriptor, SubfieldDescriptor};
use crate::classfn::{rational_from_usize, rational_to_f64, ClassFunction, Rational};
use crate::error::Error;
use crate::group::Subgroup;

pub use li::{li_offset, LI_TOL};
pub use reduce::{cyclic_reduction, empirical_oracle, theoretical_oracle};
pub use scan::{Checkpoints, Histogram, ScanOptions};

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPoint {
    pub x: u64,
    pub exact_sum: Rational,
    pub li: f64,
}

impl SeriesPoint {
    /// `exact_sum / Li(x)`; `None` at `x = 2` where `Li` vanishes.
    pub fn ratio(&self) -> Option<f64> {
        (self.li > 0.0).then(|| rational_to_f64(&self.exact_sum) / self.li)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceSeries {
    pub label: String,
    pub points: Vec<SeriesPoint>,
    pub theoretical: Option<Rational>,
}

impl ConvergenceSeries {
    pub fn last(&self) -> &SeriesPoint {
        self.points.last().expect("series has at least one checkpoint")
    }

    pub fn final_ratio(&self) -> f64 {
        self.last().ratio().unwrap_or(f64::NAN)
    }

    /// `|final ratio − theoretical|`, when the limit is known.
    pub fn final_error(&self) -> Option<f64> {
        let t = rational_to_f64(self.theoretical.as_ref()?);
        Some((self.final_ratio() - t).abs())
    }

    pub fn exact_sums(&self) -> Vec<&Rational> {
        self.points.iter().map(|p| &p.exact_sum).collect()
    }
}

pub fn li_values(checkpoints: &Checkpoints) -> Vec<f64> {
    checkpoints
        .values()
        .iter()
        .map(|&x| li_offset(x as f64, LI_TOL).expect("checkpoints are >= 2"))
        .collect()
}

/// `Σ_j counts[i][j] · weights[j]` at every checkpoint.
pub fn weighted_series(
    label: impl Into<String>,
    hist: &Histogram,
    weights: &[Rational],
    theoretical: Option<Rational>,
) -> ConvergenceSeries {
    assert_eq!(weights.len(), hist.width());
    let lis = li_values(&hist.checkpoints);
    let points = hist
        .checkpoints
        .values()
        .iter()
        .zip(&hist.counts)
        .zip(lis)
        .map(|((&x, row), li)| SeriesPoint {
            x,
            exact_sum: row
                .iter()
                .zip(weights)
                .filter(|(&n, _)| n > 0)
                .map(|(&n, w)| w * Rational::from_integer(BigInt::from(n)))
                .sum(),
            li,
        })
        .collect();
    ConvergenceSeries {
        label: label.into(),
        points,
        theoretical,
    }
}

/// Frobenius class histogram of good primes up to `checkpoints.max()`.
pub fn frobenius_histogram(
    entry: &FieldDescriptor,
    checkpoints: &Checkpoints,
    opts: ScanOptions,
) -> Result<Histogram, Error> {
    scan::scan_frobenius(entry, checkpoints, opts)
}

pub fn class_label(entry: &FieldDescriptor, class: usize) -> String {
    format!("C{} {}", class, entry.group().class_representative(class))
}

/// `Γ_C(x) / Li(x)` with limit `|C| / |G|`.
pub fn gamma_series(
    entry: &FieldDescriptor,
    class: usize,
    hist: &Histogram,
) -> Result<ConvergenceSeries, Error> {
    let g = entry.group();
    let size = g.class(class)?.len();
    let mut weights = vec![Rational::zero(); g.class_count()];
    weights[class] = Rational::one();
    Ok(weighted_series(
        class_label(entry, class),
        hist,
        &weights,
        Some(rational_from_usize(size) / rational_from_usize(g.order())),
    ))
}

fn check_group(entry: &FieldDescriptor, h: &Subgroup) -> Result<(), Error> {
    if Arc::ptr_eq(h.parent(), entry.group()) {
        Ok(())
    } else {
        Err(Error::DomainMismatch)
    }
}

/// Per class `C` of `G`: `Σ φ(t)` over `t` in the fixed-coset conjugates of
/// the representative of `C`, i.e. the total of `φ` over the degree-one
/// primes of `E` above a prime with Frobenius in `C`.
pub fn e_side_weights(entry: &FieldDescriptor, phi: &ClassFunction) -> Result<Vec<Rational>, Error> {
    let h = phi.domain();
    check_group(entry, h)?;
    Ok(entry
        .group()
        .classes()
        .iter()
        .map(|c| {
            h.fixed_coset_conjugates_idx(c.representative)
                .into_iter()
                .map(|t| phi.eval_idx(t))
                .sum()
        })
        .collect())
}

/// Per class `C` of `G`: `φ'(C)`.
pub fn k_side_weights(entry: &FieldDescriptor, phi_g: &ClassFunction) -> Result<Vec<Rational>, Error> {
    let d = phi_g.domain();
    check_group(entry, d)?;
    if d.order() != entry.group().order() {
        return Err(Error::DomainMismatch);
    }
    Ok(entry
        .group()
        .classes()
        .iter()
        .map(|c| phi_g.eval_idx(c.representative))
        .collect())
}

/// Degree-one primes of `E` weighted by `φ`; limit `mean_H(φ)`.
pub fn expectation_e(
    entry: &FieldDescriptor,
    phi: &ClassFunction,
    hist: &Histogram,
) -> Result<ConvergenceSeries, Error> {
    let w = e_side_weights(entry, phi)?;
    Ok(weighted_series("E-side", hist, &w, Some(phi.mean())))
}

/// `φ'` at the Frobenius of each good prime; limit `mean_G(φ')`.
pub fn expectation_k(
    entry: &FieldDescriptor,
    phi_g: &ClassFunction,
    hist: &Histogram,
) -> Result<ConvergenceSeries, Error> {
    let w = k_side_weights(entry, phi_g)?;
    Ok(weighted_series("K-side", hist, &w, Some(phi_g.mean())))
}

/// All primes of `E` with norm `≤ x`, any inertia degree, from the
/// factorization of the subfield polynomial alone; limit 1.
pub fn expectation_e_independent(
    entry: &FieldDescriptor,
    subfield: &SubfieldDescriptor,
    checkpoints: &Checkpoints,
    opts: ScanOptions,
) -> Result<ConvergenceSeries, Error> {
    let g = subfield
        .poly
        .as_ref()
        .ok_or_else(|| Error::MissingSubfieldPoly(subfield.name.clone()))?;
    let hist = scan::scan_norms(g, entry.bad_primes(), checkpoints, opts)?;
    Ok(weighted_series(
        format!("{} all-norms", subfield.name),
        &hist,
        &[Rational::one()],
        Some(Rational::one()),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticRow {
    pub s: f64,
    pub e_side: f64,
    pub k_side: f64,
    pub theoretical: Rational,
}

fn check_s(s: f64) -> Result<(), Error> {
    if s.is_nan() || s <= 1.0 {
        Err(Error::InvalidArgument(format!("s must exceed 1, got {}", s)))
    } else {
        Ok(())
    }
}

fn dirichlet_value(weights: &[Rational], sums: &[f64], s: f64) -> f64 {
    let total: f64 = weights
        .iter()
        .zip(sums)
        .map(|(w, v)| rational_to_f64(w) * v)
        .sum();
    total / -(s - 1.0).ln()
}

/// Both sides of the analytic identity for `φ` on `H` and its induction,
/// truncated at `cutoff`: `Σ_{p ≤ cutoff} w(p) p^{-s} / -log(s - 1)`.
pub fn analytic_sides(
    entry: &FieldDescriptor,
    phi: &ClassFunction,
    s_values: &[f64],
    cutoff: u64,
    opts: ScanOptions,
) -> Result<Vec<AnalyticRow>, Error> {
    for &s in s_values {
        check_s(s)?;
    }
    if cutoff < 2 {
        return Err(Error::InvalidArgument("cutoff must be at least 2".into()));
    }
    let we = e_side_weights(entry, phi)?;
    let wk = k_side_weights(entry, &phi.induce())?;
    let sums = scan::scan_dirichlet(entry, s_values, cutoff, opts)?;
    Ok(s_values
        .iter()
        .zip(&sums)
        .map(|(&s, row)| AnalyticRow {
            s,
            e_side: dirichlet_value(&we, row, s),
            k_side: dirichlet_value(&wk, row, s),
            theoretical: phi.mean(),
        })
        .collect())
}

/// `Σ_{p ≤ cutoff} φ'(Frob_p) p^{-s} / -log(s - 1)` for a class function on `G`.
pub fn analytic_expectation(
    entry: &FieldDescriptor,
    phi_g: &ClassFunction,
    s: f64,
    cutoff: u64,
    opts: ScanOptions,
) -> Result<f64, Error> {
    check_s(s)?;
    if cutoff < 2 {
        return Err(Error::InvalidArgument("cutoff must be at least 2".into()));
    }
    let w = k_side_weights(entry, phi_g)?;
    let sums = scan::scan_dirichlet(entry, &[s], cutoff, opts)?;
    Ok(dirichlet_value(&w, &sums[0], s))
}
