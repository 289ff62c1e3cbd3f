//! Class densities from cyclic subgroups alone.
//!
//! For a class `C` with representative `σ` of order `n`, the class function
//! `φ = Σ_{e|n} (n / c_e) δ_{σ^e}` on `⟨σ⟩` induces to `Σ_{e|n} 1_{C^e}`. An
//! oracle giving the mean of `φ` over primes (the cyclic case) therefore
//! yields `Σ_{e|n} d(C^e)`; the classes `C^e` with `e > 1` have smaller
//! order, so processing classes by increasing order recovers every `d(C)`.

use std::ops::Sub;
use std::sync::Arc;

use crate::catalog::FieldDescriptor;
use crate::classfn::{divisors, rational_to_f64, sigma_phi, ClassFunction, Rational};
use crate::error::Error;
use crate::group::{FiniteGroup, Subgroup};

use super::{e_side_weights, weighted_series, Histogram};

/// Runs the reduction over every class of `group`. Returns `d(C)` indexed
/// by class id.
pub fn cyclic_reduction<T, F>(group: &Arc<FiniteGroup>, mut oracle: F) -> Result<Vec<T>, Error>
where
    T: Clone + Sub<Output = T>,
    F: FnMut(&Arc<Subgroup>, &ClassFunction) -> Result<T, Error>,
{
    let mut order: Vec<(u64, usize)> = group
        .classes()
        .iter()
        .enumerate()
        .map(|(c, cls)| (group.element_order(cls.representative), c))
        .collect();
    order.sort_unstable();

    let mut d: Vec<Option<T>> = vec![None; group.class_count()];
    for (n, c) in order {
        let sigma = group.class_representative(c);
        let (h, phi) = sigma_phi(group, sigma)?;
        let mut value = oracle(&h, &phi)?;
        for e in divisors(n).into_iter().filter(|&e| e > 1) {
            let ce = group.power_class(c, e)?;
            let prev = d[ce]
                .clone()
                .expect("powers have smaller order and were processed first");
            value = value - prev;
        }
        d[c] = Some(value);
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}

/// The cyclic-case limit `|H|⁻¹ Σ_{h∈H} φ(h)`.
pub fn theoretical_oracle(_h: &Arc<Subgroup>, phi: &ClassFunction) -> Result<Rational, Error> {
    Ok(phi.mean())
}

/// Final-checkpoint ratio of the degree-one estimator for `(H, φ)` over the
/// primes in `hist`.
pub fn empirical_oracle<'a>(
    entry: &'a FieldDescriptor,
    hist: &'a Histogram,
) -> impl FnMut(&Arc<Subgroup>, &ClassFunction) -> Result<f64, Error> + 'a {
    move |_h, phi| {
        let w = e_side_weights(entry, phi)?;
        let last = Histogram {
            checkpoints: super::Checkpoints::explicit(vec![hist.checkpoints.max()])?,
            counts: vec![hist.counts.last().unwrap().clone()],
        };
        let series = weighted_series("oracle", &last, &w, None);
        series
            .last()
            .ratio()
            .ok_or_else(|| Error::InvalidArgument("x too small for a ratio".into()))
    }
}

pub fn exact_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(rational_to_f64).collect()
}
