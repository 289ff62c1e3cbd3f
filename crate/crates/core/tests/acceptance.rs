//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Oracles here are written independently of the library.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use frobenian::classfn::{rational, rational_to_f64};
use frobenian::density::{
    self, cyclic_reduction, empirical_oracle, li_offset, report, theoretical_oracle, Checkpoints, ScanOptions, LI_TOL,
};
use frobenian::group::DEFAULT_ORDER_CAP;
use frobenian::verify::{self, SuiteReport};
use frobenian::{builtin_catalog, find_entry, ClassFunction, FieldDescriptor, FiniteGroup, Permutation, Subgroup};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.1?}, limit {:?}", t, limit))?;
    Ok(t)
}

fn suites(reports: impl IntoIterator<Item = SuiteReport>) -> Result<usize, String> {
    let mut n = 0;
    for r in reports {
        if !r.passed() {
            return Err(r.to_string());
        }
        n += r.checked;
    }
    Ok(n)
}

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(s, n).unwrap()
}

fn group(gens: &[&str], n: usize) -> Arc<FiniteGroup> {
    let gens: Vec<_> = gens.iter().map(|g| perm(g, n)).collect();
    Arc::new(FiniteGroup::generate(&gens, DEFAULT_ORDER_CAP).unwrap())
}

// Brute-force oracles on image vectors.

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn closure(gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = gens[0].len();
    let mut elems = vec![(0..n).collect::<Vec<_>>()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = compose(g, &elems[i]);
            if !elems.contains(&h) {
                elems.push(h);
            }
        }
        i += 1;
    }
    elems
}

/// Size of the conjugacy class of `x` in the group generated by `gens`.
fn brute_class_size(gens: &[Vec<usize>], x: &[usize]) -> usize {
    let elems = closure(gens);
    elems
        .iter()
        .map(|g| compose(&inverse(g), &compose(x, g)))
        .collect::<BTreeSet<_>>()
        .len()
}

fn sieve(n: usize) -> Vec<bool> {
    let mut is = vec![true; n + 1];
    is[0] = false;
    if n >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            for j in (i * i..=n).step_by(i) {
                is[j] = false;
            }
        }
        i += 1;
    }
    is
}

fn pi(n: u64) -> u64 {
    sieve(n as usize).iter().filter(|&&b| b).count() as u64
}

/// `∫_2^x dt / ln t` as `∫ e^u / u du` over `[ln 2, ln x]`, composite Simpson.
fn li_simpson(x: f64, intervals: usize) -> f64 {
    let (a, b) = (2f64.ln(), x.ln());
    let h = (b - a) / intervals as f64;
    let f = |u: f64| u.exp() / u;
    let mut s = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

fn builtin_groups() -> Vec<(String, Arc<FiniteGroup>)> {
    builtin_catalog()
        .iter()
        .map(|e| (e.name.clone(), Arc::clone(e.group())))
        .collect()
}

/// Subgroups of `g` generated by at most two elements, deduplicated.
fn two_generated_subgroups(g: &Arc<FiniteGroup>) -> Vec<Arc<Subgroup>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let h = Subgroup::from_generator_indices(g, vec![a, b]);
            let key: Vec<usize> = h.elements().to_vec();
            if seen.insert(key) {
                out.push(Arc::new(h));
            }
        }
    }
    out
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for (name, g) in builtin_groups() {
        checked += suites([verify::check_reciprocity(&name, &verify::subgroups_of(&g))])?;
    }
    // Every subgroup of S4 is 2-generated; there are 30 of them.
    let s4 = group(&["(1 2 3 4)", "(1 2)"], 4);
    let subs = two_generated_subgroups(&s4);
    ensure(subs.len() == 30, || format!("{} subgroups of S4 found by brute force", subs.len()))?;
    checked += suites([verify::check_reciprocity("S4 brute force", &subs)])?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{} class functions, gap 0 everywhere, {:.1?}", checked, t))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for (name, g) in builtin_groups() {
        checked += suites([verify::check_pointwise_induction(&name, &verify::subgroups_of(&g))])?;
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{} (H, s, φ) triples, {:.1?}", checked, t))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for (name, g) in builtin_groups() {
        checked += suites([verify::check_sigma_phi(&name, &g)])?;
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{} elements, {:.1?}", checked, t))
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let cat = builtin_catalog();
    let mut summary = Vec::new();
    for (entry, sub) in [("s3-cbrt2", "root-field"), ("s3-cbrt2", "quadratic"), ("s4", "root-field"), ("s5", "root-field")] {
        let e = find_entry(&cat, entry).unwrap();
        let sf = e.subfield(sub).unwrap();
        let out = verify::crosscheck(e, &sf.subgroup, sf.poly.as_ref().unwrap(), 100_000, ScanOptions::default())
            .map_err(|e| e.to_string())?;
        if let Some(m) = out.mismatch {
            return Err(format!("{}/{} mismatch at p = {}: {:?} vs {:?}", entry, sub, m.p, m.factor_degrees, m.orbit_sizes));
        }
        let good = pi(100_000) - e.bad_primes().len() as u64;
        ensure(out.primes_checked as u64 == good, || {
            format!("{}/{} checked {} primes, expected {}", entry, sub, out.primes_checked, good)
        })?;
        summary.push(format!("{}/{} {}", entry, sub, out.primes_checked));
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("0 mismatches ({}), {:.1?}", summary.join(", "), t))
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for e in builtin_catalog() {
        let cps = Checkpoints::geometric(100_000, density::scan::DEFAULT_CHECKPOINTS).unwrap();
        let hist = density::frobenius_histogram(&e, &cps, ScanOptions::default()).map_err(|e| e.to_string())?;
        for h in verify::subgroups_of(e.group()) {
            for phi in ClassFunction::delta_basis(&h) {
                let es = density::expectation_e(&e, &phi, &hist).unwrap();
                let ks = density::expectation_k(&e, &phi.induce(), &hist).unwrap();
                for (a, b) in es.points.iter().zip(&ks.points) {
                    checked += 1;
                    ensure(a.exact_sum == b.exact_sum, || {
                        format!("{} φ = {} at x = {}: {} vs {}", e.name, phi, a.x, a.exact_sum, b.exact_sum)
                    })?;
                }
            }
        }
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{} checkpoint comparisons, all identical, {:.1?}", checked, t))
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let x = 1_000_000;
    let pi_x = pi(x);
    ensure(pi_x == 78_498, || format!("oracle sieve gives π(10^6) = {}", pi_x))?;
    ensure(frobenian::splitting::prime_count(x) as u64 == pi_x, || "library prime count disagrees".into())?;
    let cat = builtin_catalog();
    let mut worst = 0f64;
    for name in ["cyclo-5", "cyclo-7", "s3-cbrt2", "s4"] {
        let e = find_entry(&cat, name).unwrap();
        let g = e.group();
        let gens: Vec<Vec<usize>> = e.generators.iter().map(|p| p.images().to_vec()).collect();
        let order = closure(&gens).len();
        let cps = Checkpoints::geometric(x, density::scan::DEFAULT_CHECKPOINTS).unwrap();
        let hist = density::frobenius_histogram(e, &cps, ScanOptions::default()).map_err(|e| e.to_string())?;
        let good = pi_x - e.bad_primes().iter().filter(|&&p| p <= x).count() as u64;
        ensure(hist.total_at(hist.counts.len() - 1) == good, || format!("{}: primes lost in the scan", name))?;
        for c in 0..g.class_count() {
            let s = density::gamma_series(e, c, &hist).unwrap();
            let size = brute_class_size(&gens, g.class_representative(c).images());
            let err = (s.final_ratio() - size as f64 / order as f64).abs();
            worst = worst.max(err);
            ensure(err <= 0.01, || format!("{} {}: ratio {:.6} vs {}/{}", name, s.label, s.final_ratio(), size, order))?;
        }
    }
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!("π(10^6) = 78498, max |ratio − |C|/|G|| = {:.5}, {:.1?}", worst, t))
}

fn criterion_7() -> Verdict {
    let x = 1_000_000;
    let cps = Checkpoints::geometric(x, density::scan::DEFAULT_CHECKPOINTS).unwrap();
    let mut checked = 0;
    for e in builtin_catalog() {
        let hist = density::frobenius_histogram(&e, &cps, ScanOptions::default()).map_err(|e| e.to_string())?;
        for sf in e.subfields.iter().filter(|s| s.poly.is_some()) {
            let deg = sf.poly.as_ref().unwrap().degree() as i64;
            let one = ClassFunction::one(Arc::clone(&sf.subgroup));
            let degree_one = density::expectation_e(&e, &one, &hist).unwrap();
            let all = density::expectation_e_independent(&e, sf, &cps, ScanOptions::default()).map_err(|e| e.to_string())?;
            for (a, d) in all.points.iter().zip(&degree_one.points) {
                checked += 1;
                let diff = &a.exact_sum - &d.exact_sum;
                let bound = rational(deg * pi((a.x as f64).sqrt() as u64) as i64, 1);
                ensure(diff >= rational(0, 1) && diff <= bound, || {
                    format!("{}/{} at x = {}: difference {} outside [0, {}]", e.name, sf.name, a.x, diff, bound)
                })?;
            }
        }
    }
    Ok(format!("{} checkpoints within [0, deg·π(√x)]", checked))
}

fn criterion_8() -> Verdict {
    let groups: [(&str, Vec<&str>, usize); 5] = [
        ("S3", vec!["(1 2 3)", "(1 2)"], 3),
        ("S4", vec!["(1 2 3 4)", "(1 2)"], 4),
        ("S5", vec!["(1 2 3 4 5)", "(1 2)"], 5),
        ("C4", vec!["(1 2 3 4)"], 4),
        ("C6", vec!["(1 2 3 4 5 6)"], 6),
    ];
    for (name, gens, n) in groups {
        let g = group(&gens, n);
        let raw: Vec<Vec<usize>> = gens.iter().map(|s| perm(s, n).images().to_vec()).collect();
        let order = closure(&raw).len();
        let d = cyclic_reduction(&g, theoretical_oracle).map_err(|e| e.to_string())?;
        for c in 0..g.class_count() {
            let size = brute_class_size(&raw, g.class_representative(c).images());
            ensure(d[c] == rational(size as i64, order as i64), || {
                format!("{} class {}: {} vs {}/{}", name, g.class_representative(c), d[c], size, order)
            })?;
        }
    }
    let cat = builtin_catalog();
    let mut worst = 0f64;
    for name in ["s3-cbrt2", "s4"] {
        let e = find_entry(&cat, name).unwrap();
        let g = e.group();
        let cps = Checkpoints::explicit(vec![1_000_000]).unwrap();
        let hist = density::frobenius_histogram(e, &cps, ScanOptions::default()).map_err(|e| e.to_string())?;
        let d = cyclic_reduction(g, empirical_oracle(e, &hist)).map_err(|e| e.to_string())?;
        let raw: Vec<Vec<usize>> = e.generators.iter().map(|p| p.images().to_vec()).collect();
        for c in 0..g.class_count() {
            let target = brute_class_size(&raw, g.class_representative(c).images()) as f64 / g.order() as f64;
            let err = (d[c] - target).abs();
            worst = worst.max(err);
            ensure(err <= 0.02, || format!("{} class {}: {:.6} vs {:.6}", name, g.class_representative(c), d[c], target))?;
        }
    }
    Ok(format!("exact for S3, S4, S5, C4, C6; empirical max error {:.5}", worst))
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let cat = builtin_catalog();
    let e: &FieldDescriptor = find_entry(&cat, "cyclo-5").unwrap();
    let h = &e.subfield("real-quadratic").unwrap().subgroup;
    let phi = ClassFunction::delta_at(Arc::clone(h), &perm("(1 4)(2 3)", 4)).unwrap();
    let rows = density::analytic_sides(e, &phi, &[1.05], 10_000_000, ScanOptions::with_workers(4))
        .map_err(|e| e.to_string())?;
    let r = &rows[0];
    ensure(r.e_side.to_bits() == r.k_side.to_bits(), || format!("E-side {} vs K-side {}", r.e_side, r.k_side))?;
    let mean = rational_to_f64(&phi.mean());
    ensure(mean == 0.5, || format!("mean over H is {}", mean))?;
    let t = within(start, Duration::from_secs(600))?;
    let err = (r.e_side - mean).abs();
    ensure(err <= 0.2, || {
        format!(
            "termwise equal (both {:.6}) but |value − 1/2| = {:.4} exceeds 0.2 at s = 1.05, cutoff 10^7",
            r.e_side, err
        )
    })?;
    Ok(format!("both sides {:.6}, error {:.4}, {:.1?}", r.e_side, err, t))
}

fn criterion_10() -> Verdict {
    let x = 1e6;
    let ours = li_offset(x, LI_TOL).map_err(|e| e.to_string())?;
    let oracle = li_simpson(x, 200_000);
    ensure((ours - oracle).abs() <= 0.05, || format!("li(10^6) = {} vs Simpson {}", ours, oracle))?;

    let cat = builtin_catalog();
    let e = find_entry(&cat, "s5").unwrap();
    let root = &e.subfield("root-field").unwrap().subgroup;
    let cps = Checkpoints::geometric(1_000_000, density::scan::DEFAULT_CHECKPOINTS).unwrap();
    let mut outputs: Vec<Vec<u8>> = Vec::new();
    for workers in [1, 2, 8] {
        let opts = ScanOptions::with_workers(workers);
        let hist = density::frobenius_histogram(e, &cps, opts).map_err(|e| e.to_string())?;
        let mut series: Vec<_> = (0..e.group().class_count())
            .map(|c| density::gamma_series(e, c, &hist).unwrap())
            .collect();
        let phi = ClassFunction::delta_basis(root).pop().unwrap();
        series.push(density::expectation_e(e, &phi, &hist).unwrap());
        series.push(density::expectation_k(e, &phi.induce(), &hist).unwrap());
        let mut buf = Vec::new();
        report::write_series(&mut buf, &series).map_err(|e| e.to_string())?;
        let rows = density::analytic_sides(e, &phi, &[1.1, 1.05, 1.02], 1_000_000, opts).unwrap();
        report::write_analytic(&mut buf, &rows).map_err(|e| e.to_string())?;
        outputs.push(buf);
    }
    ensure(outputs[0] == outputs[1] && outputs[0] == outputs[2], || "CSV differs between worker counts".into())?;
    Ok(format!(
        "li(10^6) = {:.4}, Simpson {:.4}; {} CSV bytes identical for 1, 2, 8 workers",
        ours,
        oracle,
        outputs[0].len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Verdict); 10] = [
        (1, "exact reciprocity", criterion_1),
        (2, "pointwise induction", criterion_2),
        (3, "cyclic construction", criterion_3),
        (4, "splitting cross-check", criterion_4),
        (5, "finite-x induction identity", criterion_5),
        (6, "class densities at 10^6", criterion_6),
        (7, "degree-one discard bound", criterion_7),
        (8, "cyclic reduction", criterion_8),
        (9, "analytic variant", criterion_9),
        (10, "li accuracy and determinism", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, f) in criteria {
        let verdict = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {}", msg))
        });
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS {}: {}", n, name, detail),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {}: {}", n, name, why);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", 10 - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
