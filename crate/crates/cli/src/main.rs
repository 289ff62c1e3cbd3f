//! `frobenian`: experiments on Frobenius classes over a catalog of Galois
//! extensions. CSV goes to `--out` or standard output, verdicts to standard
//! error. Exit status: 0 all checks pass, 1 a check failed, 2 bad usage or
//! configuration.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use frobenian::classfn::{format_rational, rational_from_usize, rational_to_f64};
use frobenian::density::report::{self, ReductionRow, ReductionValue};
use frobenian::density::{
    self, cyclic_reduction, empirical_oracle, theoretical_oracle, Checkpoints, ScanOptions,
};
use frobenian::phi::parse_phi;
use frobenian::verify::{self, SuiteReport};
use frobenian::{builtin_catalog, find_entry, load_catalog, Error, FieldDescriptor, Subgroup};

const DEFAULT_X: u64 = 1_000_000;
const DEFAULT_CROSSCHECK_X: u64 = 100_000;
const QUICK_CROSSCHECK_X: u64 = 10_000;
const DEFAULT_CUTOFF: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "frobenian", version, about = "Frobenius class experiments over explicit Galois extensions of Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Catalog JSON file, or "builtin".
    #[arg(long, global = true, default_value = "builtin")]
    catalog: String,

    /// Catalog entry name.
    #[arg(long, global = true)]
    entry: Option<String>,

    /// Subfield name, or "G" for the whole group (the default).
    #[arg(long, global = true)]
    subgroup: Option<String>,

    /// Class function: one, zero, delta:<perm>, indicator:<k>, sigma-phi:<perm>.
    #[arg(long, global = true, default_value = "one")]
    phi: String,

    /// Prime bound. Defaults to 10^6, or 10^5 for crosscheck.
    #[arg(long, global = true)]
    x: Option<u64>,

    /// Number of geometric checkpoints up to x.
    #[arg(long, global = true, default_value_t = density::scan::DEFAULT_CHECKPOINTS)]
    checkpoints: usize,

    /// Comma-separated values of s > 1 for the analytic command.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [1.1, 1.05, 1.02])]
    s: Vec<f64>,

    /// Prime cutoff for the analytic command.
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    cutoff: u64,

    /// Write CSV here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for prime scans.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// verify: cross-check primes up to 10^4 instead of 10^5.
    #[arg(long, global = true)]
    quick: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Run every exact suite and the per-prime cross-check.
    Verify,
    /// Class-density convergence series for every class of an entry.
    Density,
    /// Both sides of the induction identity for (subgroup, phi).
    Induction,
    /// Factor degrees of the subfield polynomial against coset orbits.
    Crosscheck,
    /// Class densities from cyclic subgroups, exact and empirical.
    Reduce,
    /// Dirichlet-series version of the induction identity.
    Analytic,
}

enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("FAIL: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    if let Some(x) = cli.x {
        if x < 2 {
            return Err(Failure::Usage("--x must be at least 2".into()));
        }
    }
    if cli.command == Command::Analytic {
        if let Some(&s) = cli.s.iter().find(|&&s| !(s > 1.0)) {
            return Err(Failure::Usage(format!("--s values must exceed 1, got {}", s)));
        }
    }
    let catalog = match read_catalog(&cli.catalog) {
        Ok(c) => c,
        // A catalog that fails validation is a failed check for verify.
        Err(e @ (Error::CatalogValidation { .. } | Error::CatalogParse(_))) if cli.command == Command::Verify => {
            eprintln!("FAIL catalog validation: {}", e);
            return Err(Failure::Check("catalog validation".into()));
        }
        Err(e) => return Err(e.into()),
    };
    let opts = ScanOptions::with_workers(cli.workers);
    match cli.command {
        Command::Verify => cmd_verify(cli, &catalog, opts),
        Command::Density => cmd_density(cli, entry(cli, &catalog)?, opts),
        Command::Induction => cmd_induction(cli, entry(cli, &catalog)?, opts),
        Command::Crosscheck => cmd_crosscheck(cli, entry(cli, &catalog)?, opts),
        Command::Reduce => cmd_reduce(cli, entry(cli, &catalog)?, opts),
        Command::Analytic => cmd_analytic(cli, entry(cli, &catalog)?, opts),
    }
}

fn read_catalog(arg: &str) -> Result<Vec<FieldDescriptor>, Error> {
    if arg == "builtin" {
        Ok(builtin_catalog())
    } else {
        load_catalog(&std::fs::read_to_string(arg)?)
    }
}

fn entry<'a>(cli: &Cli, catalog: &'a [FieldDescriptor]) -> Result<&'a FieldDescriptor, Failure> {
    let name = cli
        .entry
        .as_deref()
        .ok_or_else(|| Failure::Usage("--entry is required".into()))?;
    Ok(find_entry(catalog, name)?)
}

fn subgroup(cli: &Cli, entry: &FieldDescriptor) -> Result<Arc<Subgroup>, Failure> {
    match cli.subgroup.as_deref() {
        None | Some("G") => Ok(Arc::clone(entry.whole())),
        Some(name) => Ok(Arc::clone(&entry.subfield(name)?.subgroup)),
    }
}

fn checkpoints(cli: &Cli, x: u64) -> Result<Checkpoints, Failure> {
    Ok(Checkpoints::geometric(x, cli.checkpoints)?)
}

fn output(cli: &Cli) -> Result<Box<dyn Write>, Failure> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_verify(cli: &Cli, catalog: &[FieldDescriptor], opts: ScanOptions) -> Outcome {
    let bound = cli
        .x
        .unwrap_or(if cli.quick { QUICK_CROSSCHECK_X } else { DEFAULT_CROSSCHECK_X });
    let entries: Vec<&FieldDescriptor> = match &cli.entry {
        Some(name) => vec![find_entry(catalog, name)?],
        None => catalog.iter().collect(),
    };
    eprintln!("PASS catalog validation ({} entries)", catalog.len());
    let mut reports: Vec<SuiteReport> = Vec::new();
    for e in entries {
        for r in verify::verify_entry(e, bound, opts)? {
            eprintln!("{}", r);
            reports.push(r);
        }
    }
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Failure::Check(r.to_string())),
        None => {
            eprintln!("all {} suites passed", reports.len() + 1);
            Ok(())
        }
    }
}

fn cmd_density(cli: &Cli, entry: &FieldDescriptor, opts: ScanOptions) -> Outcome {
    let cps = checkpoints(cli, cli.x.unwrap_or(DEFAULT_X))?;
    let hist = density::frobenius_histogram(entry, &cps, opts)?;
    let series = (0..entry.group().class_count())
        .map(|c| density::gamma_series(entry, c, &hist))
        .collect::<Result<Vec<_>, _>>()?;
    report::write_series(output(cli)?, &series)?;
    for s in &series {
        eprintln!(
            "{}: ratio {:.6} at x = {}, limit {}",
            s.label,
            s.final_ratio(),
            s.last().x,
            format_rational(s.theoretical.as_ref().expect("class series have a limit"))
        );
    }
    Ok(())
}

fn cmd_induction(cli: &Cli, entry: &FieldDescriptor, opts: ScanOptions) -> Outcome {
    let h = subgroup(cli, entry)?;
    let phi = parse_phi(&cli.phi, entry, cli.subgroup.as_ref().map(|_| &h))?;
    let cps = checkpoints(cli, cli.x.unwrap_or(DEFAULT_X))?;
    let hist = density::frobenius_histogram(entry, &cps, opts)?;
    let e_side = density::expectation_e(entry, &phi, &hist)?;
    let k_side = density::expectation_k(entry, &phi.induce(), &hist)?;
    report::write_series(output(cli)?, &[e_side.clone(), k_side.clone()])?;

    for (pe, pk) in e_side.points.iter().zip(&k_side.points) {
        if pe.exact_sum != pk.exact_sum {
            return Err(Failure::Check(format!(
                "at x = {}: E-side {} but K-side {}",
                pe.x,
                format_rational(&pe.exact_sum),
                format_rational(&pk.exact_sum)
            )));
        }
    }
    let mean = phi.mean();
    eprintln!("exact equality at all {} checkpoints", e_side.points.len());
    match e_side.last().ratio() {
        Some(r) => eprintln!(
            "ratio {:.6} at x = {}; mean over H = {} ({:.6}), error {:.6}",
            r,
            e_side.last().x,
            format_rational(&mean),
            rational_to_f64(&mean),
            (r - rational_to_f64(&mean)).abs()
        ),
        None => eprintln!("x too small for a ratio; mean over H = {}", format_rational(&mean)),
    }
    Ok(())
}

fn cmd_crosscheck(cli: &Cli, entry: &FieldDescriptor, opts: ScanOptions) -> Outcome {
    let x = cli.x.unwrap_or(DEFAULT_CROSSCHECK_X);
    let subfields: Vec<_> = match cli.subgroup.as_deref() {
        Some(name) => vec![entry.subfield(name)?],
        None => entry.subfields.iter().filter(|s| s.poly.is_some()).collect(),
    };
    if subfields.is_empty() {
        return Err(Failure::Usage(format!("entry {} has no subfield polynomials", entry.name)));
    }
    for sub in subfields {
        let poly = sub
            .poly
            .as_ref()
            .ok_or_else(|| Error::MissingSubfieldPoly(sub.name.clone()))?;
        let out = verify::crosscheck(entry, &sub.subgroup, poly, x, opts)?;
        match out.mismatch {
            None => eprintln!("{}/{}: OK {} primes", entry.name, sub.name, out.primes_checked),
            Some(m) => {
                return Err(Failure::Check(format!(
                    "{}/{}: mismatch at p = {}: factor degrees {:?} vs orbit sizes {:?}",
                    entry.name, sub.name, m.p, m.factor_degrees, m.orbit_sizes
                )))
            }
        }
    }
    Ok(())
}

fn cmd_reduce(cli: &Cli, entry: &FieldDescriptor, opts: ScanOptions) -> Outcome {
    let g = entry.group();
    let exact = cyclic_reduction(g, theoretical_oracle)?;
    let cps = Checkpoints::explicit(vec![cli.x.unwrap_or(DEFAULT_X)])?;
    let hist = density::frobenius_histogram(entry, &cps, opts)?;
    let approx = cyclic_reduction(g, empirical_oracle(entry, &hist))?;

    let target = |c: usize| rational_from_usize(g.classes()[c].len()) / rational_from_usize(g.order());
    let row = |oracle: &str, c: usize, value: ReductionValue| ReductionRow {
        oracle: oracle.into(),
        class: c,
        representative: g.class_representative(c).to_string(),
        order: g.element_order(g.classes()[c].representative),
        value,
        target: target(c),
    };
    let mut rows: Vec<ReductionRow> = Vec::new();
    rows.extend(exact.iter().enumerate().map(|(c, v)| row("theoretical", c, ReductionValue::Exact(v.clone()))));
    rows.extend(approx.iter().enumerate().map(|(c, &v)| row("empirical", c, ReductionValue::Approx(v))));
    report::write_reduction(output(cli)?, &rows)?;

    if let Some(c) = (0..exact.len()).find(|&c| exact[c] != target(c)) {
        return Err(Failure::Check(format!(
            "theoretical reduction gives {} for class {} but |C|/|G| = {}",
            format_rational(&exact[c]),
            c,
            format_rational(&target(c))
        )));
    }
    eprintln!("theoretical oracle: exact |C|/|G| for all {} classes", exact.len());
    let worst = rows
        .iter()
        .filter(|r| r.oracle == "empirical")
        .map(ReductionRow::abs_error)
        .fold(0.0, f64::max);
    eprintln!("empirical oracle at x = {}: max abs error {:.6}", cps.max(), worst);
    Ok(())
}

fn cmd_analytic(cli: &Cli, entry: &FieldDescriptor, opts: ScanOptions) -> Outcome {
    let h = subgroup(cli, entry)?;
    let phi = parse_phi(&cli.phi, entry, cli.subgroup.as_ref().map(|_| &h))?;
    let rows = density::analytic_sides(entry, &phi, &cli.s, cli.cutoff, opts)?;
    report::write_analytic(output(cli)?, &rows)?;
    for r in &rows {
        if r.e_side.to_bits() != r.k_side.to_bits() {
            return Err(Failure::Check(format!("s = {}: E-side {} but K-side {}", r.s, r.e_side, r.k_side)));
        }
        let t = rational_to_f64(&r.theoretical);
        eprintln!(
            "s = {}: both sides {:.6}; mean over H = {} ({:.6}), error {:.6}",
            r.s,
            r.e_side,
            format_rational(&r.theoretical),
            t,
            (r.e_side - t).abs()
        );
    }
    Ok(())
}
