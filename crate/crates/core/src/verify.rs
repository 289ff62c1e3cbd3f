//! Exhaustive exact checks of the group-theoretic identities, plus the
//! per-prime comparison of polynomial factorization against coset orbits.
//!
//! Each suite stops at the first failure and reports its witnesses.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::catalog::FieldDescriptor;
use crate::classfn::{power_class_indicator_sum, sigma_phi, ClassFunction, Rational};
use crate::density::ScanOptions;
use crate::error::Error;
use crate::group::{all_subgroups, FiniteGroup, Subgroup};
use crate::par;
use crate::splitting::sieve::isqrt;
use crate::splitting::{ddf_degrees, frobenius_class, primes_in_range, simple_sieve, IntPolynomial};

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.name, self.checked),
            Some(w) => write!(f, "FAIL {}: {}", self.name, w),
        }
    }
}

struct Suite {
    name: String,
    checked: usize,
}

impl Suite {
    fn new(name: impl Into<String>) -> Self {
        Suite {
            name: name.into(),
            checked: 0,
        }
    }

    fn pass(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            checked: self.checked,
            failure: None,
        }
    }

    fn fail(self, witness: String) -> SuiteReport {
        SuiteReport {
            name: self.name,
            checked: self.checked,
            failure: Some(witness),
        }
    }
}

fn describe_subgroup(h: &Subgroup) -> String {
    let g = h.parent();
    let gens: Vec<String> = h
        .generator_indices()
        .iter()
        .map(|&i| g.element(i).to_string())
        .collect();
    format!("<{}> (order {})", gens.join(", "), h.order())
}

/// Class partition, cycle types constant on classes, orbit–stabilizer,
/// power classes independent of the representative, and for every subgroup
/// and element: orbit sizes sum to the index and fixed cosets match
/// size-one orbits.
pub fn check_group(label: &str, g: &Arc<FiniteGroup>, subgroups: &[Arc<Subgroup>]) -> SuiteReport {
    let mut s = Suite::new(format!("group-core {}", label));
    let total: usize = g.classes().iter().map(|c| c.len()).sum();
    s.checked += 1;
    if total != g.order() {
        return s.fail(format!("class sizes sum to {} but |G| = {}", total, g.order()));
    }
    for (c, cls) in g.classes().iter().enumerate() {
        let ct = g.cycle_type(cls.representative);
        for &m in &cls.members {
            s.checked += 1;
            if g.cycle_type(m) != ct {
                return s.fail(format!("{} and {} are conjugate with different cycle types", g.element(m), g.class_representative(c)));
            }
            let cz = g.centralizer_order(g.element(m)).unwrap();
            if cz * cls.len() != g.order() {
                return s.fail(format!("|C_G({})| · |class| = {} ≠ {}", g.element(m), cz * cls.len(), g.order()));
            }
            for e in 1..=g.element_order(cls.representative) + 1 {
                s.checked += 1;
                let expected = g.power_class(c, e).unwrap();
                if g.class_of(g.pow(m, e)) != expected {
                    return s.fail(format!("power class of {} at e = {} depends on representative", g.element(m), e));
                }
            }
        }
    }
    for h in subgroups {
        if h.index() * h.order() != g.order() {
            return s.fail(format!("Lagrange fails for {}", describe_subgroup(h)));
        }
        for x in 0..g.order() {
            s.checked += 1;
            let sizes = h.orbit_sizes_idx(x);
            if sizes.iter().sum::<usize>() != h.index() {
                return s.fail(format!("orbit sizes {:?} of {} on G/{} do not sum to the index", sizes, g.element(x), describe_subgroup(h)));
            }
            let ones = sizes.iter().filter(|&&k| k == 1).count();
            let fixed = h.fixed_coset_conjugates_idx(x);
            if fixed.len() != ones {
                return s.fail(format!("{} fixed cosets but {} size-one orbits for s = {} on G/{}", fixed.len(), ones, g.element(x), describe_subgroup(h)));
            }
            if let Some(&t) = fixed.iter().find(|&&t| !h.contains_idx(t)) {
                return s.fail(format!("conjugate {} of {} is outside {}", g.element(t), g.element(x), describe_subgroup(h)));
            }
        }
    }
    s.pass()
}

/// `mean_H(φ) = mean_G(Ind φ)` for every `φ` in the delta basis of each
/// subgroup, and `Ind φ` constant on `G`-classes.
pub fn check_reciprocity(label: &str, subgroups: &[Arc<Subgroup>]) -> SuiteReport {
    let mut s = Suite::new(format!("reciprocity {}", label));
    for h in subgroups {
        for phi in ClassFunction::delta_basis(h) {
            s.checked += 1;
            let gap = phi.reciprocity_gap();
            if !gap.is_zero() {
                return s.fail(format!("gap {} for {} on {}", gap, phi, describe_subgroup(h)));
            }
            let ind = phi.induce();
            let g = h.parent();
            for (x, v) in phi.induce_elementwise().iter().enumerate() {
                if *v != ind.eval_idx(x) {
                    return s.fail(format!("induction of {} is not constant on the class of {}", phi, g.element(x)));
                }
            }
        }
    }
    s.pass()
}

/// `Ind φ (s) = Σ φ(t)` over the fixed-coset conjugates `t` of `s`, for all
/// subgroups, elements and delta-basis functions.
pub fn check_pointwise_induction(label: &str, subgroups: &[Arc<Subgroup>]) -> SuiteReport {
    let mut s = Suite::new(format!("pointwise induction {}", label));
    for h in subgroups {
        let g = h.parent();
        for phi in ClassFunction::delta_basis(h) {
            let ind = phi.induce();
            for x in 0..g.order() {
                s.checked += 1;
                let rhs: Rational = h
                    .fixed_coset_conjugates_idx(x)
                    .into_iter()
                    .map(|t| phi.eval_idx(t))
                    .sum();
                if ind.eval_idx(x) != rhs {
                    return s.fail(format!(
                        "Ind({})({}) = {} but fixed-coset sum is {} on {}",
                        phi,
                        g.element(x),
                        ind.eval_idx(x),
                        rhs,
                        describe_subgroup(h)
                    ));
                }
            }
        }
    }
    s.pass()
}

/// `Ind sigma_phi(σ) = Σ_{e|n} 1_{C^e}` for every element `σ`.
pub fn check_sigma_phi(label: &str, g: &Arc<FiniteGroup>) -> SuiteReport {
    let mut s = Suite::new(format!("sigma-phi {}", label));
    for sigma in g.elements() {
        s.checked += 1;
        let (_, phi) = match sigma_phi(g, sigma) {
            Ok(v) => v,
            Err(e) => return s.fail(e.to_string()),
        };
        let expected = power_class_indicator_sum(g, sigma).unwrap();
        let got = phi.induce();
        if !got.same_as(&expected) {
            return s.fail(format!("σ = {}: Ind φ = {} but Σ 1_(C^e) = {}", sigma, got, expected));
        }
    }
    s.pass()
}

/// Induction computed with the default transversal and with the
/// last-element-of-each-coset transversal must agree.
pub fn check_transversal_independence(label: &str, subgroups: &[Arc<Subgroup>]) -> SuiteReport {
    let mut s = Suite::new(format!("transversal independence {}", label));
    for h in subgroups {
        let g = h.parent();
        let mut last = vec![0; h.index()];
        for x in 0..g.order() {
            last[h.coset_of(x)] = x;
        }
        let reps: Vec<_> = last.iter().map(|&i| g.element(i).clone()).collect();
        let alt = Subgroup::from_generator_indices(g, h.generator_indices().to_vec())
            .with_transversal(&reps)
            .map(Arc::new);
        let alt = match alt {
            Ok(a) => a,
            Err(e) => return s.fail(e.to_string()),
        };
        for (a, b) in ClassFunction::delta_basis(h).iter().zip(ClassFunction::delta_basis(&alt)) {
            s.checked += 1;
            if a.induce().values() != b.induce().values() {
                return s.fail(format!("induction of {} depends on the transversal for {}", a, describe_subgroup(h)));
            }
            for x in 0..g.order() {
                if h.orbit_sizes_idx(x) != alt.orbit_sizes_idx(x) {
                    return s.fail(format!("orbit sizes of {} depend on the transversal", g.element(x)));
                }
            }
        }
    }
    s.pass()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub p: u64,
    pub factor_degrees: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckOutcome {
    pub primes_checked: usize,
    pub mismatch: Option<Mismatch>,
}

/// For each good `p ≤ x`: factor degrees of `g` mod `p` against the orbit
/// sizes of the Frobenius on `G/H`. Stops at the first mismatch in prime
/// order.
pub fn crosscheck(
    entry: &FieldDescriptor,
    h: &Subgroup,
    g: &IntPolynomial,
    x: u64,
    opts: ScanOptions,
) -> Result<CrosscheckOutcome, Error> {
    if !Arc::ptr_eq(h.parent(), entry.group()) {
        return Err(Error::DomainMismatch);
    }
    if x < 2 {
        return Ok(CrosscheckOutcome { primes_checked: 0, mismatch: None });
    }
    let blocks = par::blocks(2, x, opts.block_len);
    let base = simple_sieve(isqrt(x));
    let grp = entry.group();
    let parts = par::map_blocks(&blocks, opts.workers, |&(lo, hi)| {
        let mut checked = 0usize;
        for p in primes_in_range(lo, hi, &base) {
            if entry.is_bad_prime(p) {
                continue;
            }
            checked += 1;
            let c = frobenius_class(entry, p)?;
            let orbits = h.orbit_sizes_idx(grp.classes()[c].representative);
            let degrees = ddf_degrees(g, p)?.degrees();
            if degrees != orbits {
                return Ok((checked, Some(Mismatch { p, factor_degrees: degrees, orbit_sizes: orbits })));
            }
        }
        Ok((checked, None))
    })?;
    let mut total = 0;
    for (checked, mismatch) in parts {
        total += checked;
        if mismatch.is_some() {
            return Ok(CrosscheckOutcome { primes_checked: total, mismatch });
        }
    }
    Ok(CrosscheckOutcome { primes_checked: total, mismatch: None })
}

/// Every subgroup of `g`, shared.
pub fn subgroups_of(g: &Arc<FiniteGroup>) -> Vec<Arc<Subgroup>> {
    all_subgroups(g).into_iter().map(Arc::new).collect()
}

/// All exact suites for one catalog entry, and the cross-check of every
/// subfield with a polynomial up to `crosscheck_bound`.
pub fn verify_entry(
    entry: &FieldDescriptor,
    crosscheck_bound: u64,
    opts: ScanOptions,
) -> Result<Vec<SuiteReport>, Error> {
    let g = entry.group();
    let subs = subgroups_of(g);
    let label = entry.name.as_str();
    let mut out = vec![
        check_group(label, g, &subs),
        check_reciprocity(label, &subs),
        check_pointwise_induction(label, &subs),
        check_sigma_phi(label, g),
        check_transversal_independence(label, &subs),
    ];
    for sub in &entry.subfields {
        let Some(poly) = &sub.poly else { continue };
        let mut s = Suite::new(format!("crosscheck {}/{} p <= {}", label, sub.name, crosscheck_bound));
        let outcome = crosscheck(entry, &sub.subgroup, poly, crosscheck_bound, opts)?;
        s.checked = outcome.primes_checked;
        out.push(match outcome.mismatch {
            None => s.pass(),
            Some(m) => s.fail(format!(
                "p = {}: factor degrees {:?} vs orbit sizes {:?}",
                m.p, m.factor_degrees, m.orbit_sizes
            )),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, find_entry};
    use crate::perm::Permutation;

    #[test]
    fn builtin_quick_verification_passes() {
        for e in builtin_catalog() {
            for r in verify_entry(&e, 2_000, ScanOptions::default()).unwrap() {
                assert!(r.passed(), "{}", r);
                assert!(r.checked > 0, "{}", r);
            }
        }
    }

    #[test]
    fn wrong_subgroup_is_caught() {
        let cat = builtin_catalog();
        let e = find_entry(&cat, "s3-cbrt2").unwrap();
        let g = e.subfield("root-field").unwrap().poly.clone().unwrap();
        // A3 has index 2, so x^3 - 2 cannot match its coset orbits.
        let wrong = &e.subfield("quadratic").unwrap().subgroup;
        let out = crosscheck(e, wrong, &g, 1_000, ScanOptions::default()).unwrap();
        let m = out.mismatch.unwrap();
        assert_eq!(m.p, 5);
        assert_eq!(m.factor_degrees, vec![1, 2]);
        assert_eq!(m.orbit_sizes, vec![2]);

        // Right index, wrong subgroup: a non-normal conjugate is fine, but
        // the wrong quadratic polynomial is not.
        let h = Arc::new(Subgroup::generate(e.group(), &[Permutation::parse_cycles("(1 3)", 3).unwrap()]).unwrap());
        let ok = crosscheck(e, &h, &g, 1_000, ScanOptions::default()).unwrap();
        assert!(ok.mismatch.is_none());
        let a3 = &e.subfield("quadratic").unwrap().subgroup;
        let x2_plus_1 = IntPolynomial::new(vec![1, 0, 1]).unwrap();
        let bad = crosscheck(e, a3, &x2_plus_1, 1_000, ScanOptions::default()).unwrap();
        assert!(bad.mismatch.is_some());
    }

    #[test]
    fn crosscheck_is_worker_independent() {
        let cat = builtin_catalog();
        let e = find_entry(&cat, "s5").unwrap();
        let sub = e.subfield("root-field").unwrap();
        let g = sub.poly.as_ref().unwrap();
        let a = crosscheck(e, &sub.subgroup, g, 30_000, ScanOptions::default()).unwrap();
        let b = crosscheck(e, &sub.subgroup, g, 30_000, ScanOptions { workers: 4, block_len: 3_000 }).unwrap();
        assert_eq!(a, b);
        assert!(a.mismatch.is_none());
    }
}
