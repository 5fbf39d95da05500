//! Command-line harness: families -> roots -> measures -> reports, with
//! CSV/JSON output and plot-ready data files.
//!
//! Exit codes: 0 when every generated report passes, 1 on usage or parse
//! errors, 2 when any report fails its inequality, 3 on numerical
//! non-convergence.

mod emit;

use clap::{Args, Parser, Subcommand};
use equidist_core::discrepancy::{
    self, builtin_test_function, BuiltinTestFunction, DiscrepancyReport, TestFunction,
};
use equidist_core::families::{self, FamilyKind, FamilySpec};
use equidist_core::intpoly::IntPolynomial;
use equidist_core::mahler;
use equidist_core::potential::Domain;
use equidist_core::rootfinder::{find_roots_seeded, RootSet};
use equidist_core::Error as CoreError;
use rayon::prelude::*;

const DEFAULT_SEED: u64 = 0x0051_f0c5;

#[derive(Parser)]
#[command(
    name = "equidist",
    about = "Mahler measures, equilibrium integrals and zero-distribution diagnostics for integer polynomials",
    disable_help_subcommand = true
)]
struct Cli {
    /// Optional key=value config file mirroring the long flags; explicit
    /// flags win.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one "re im radius" triple per root of the polynomial.
    Roots(RootsArgs),
    /// Measure report (Mahler, generalized, tilde, height, sup-norm) as JSON or CSV.
    Measure(MeasureArgs),
    /// Zero statistics: power means and a sector histogram.
    Stats(StatsArgs),
    /// Evaluate a discrepancy inequality across a family sweep or a literal polynomial.
    Verify(VerifyArgs),
    /// Sup-norm growth table across a family sweep.
    Growth(GrowthArgs),
    /// Measure reports across a family sweep.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct CommonIo {
    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
}

#[derive(Args)]
struct RootsArgs {
    /// Polynomial: coefficient list "c0,c1,..." or symbolic "z^4+z^3-z-1".
    poly: String,
    #[arg(long)]
    target_radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write an "re im" scatter file alongside the normal output.
    #[arg(long)]
    plot_data: Option<std::path::PathBuf>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct MeasureArgs {
    poly: String,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    target_radius: Option<f64>,
    /// Radius for the tail-product growth diagnostic.
    #[arg(long)]
    tail_radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct StatsArgs {
    /// Literal polynomial (exactly one of this or --family).
    poly: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// Relocate the family: x -> x + c (exact integer shift).
    #[arg(long)]
    shift: Option<i64>,
    /// Number of half-open argument bins.
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    target_radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct VerifyArgs {
    /// Literal polynomial (exactly one of this or --family).
    poly: Option<String>,
    #[arg(long, value_parser = ["et31", "thm31", "thm34", "energy", "cor32", "cor35", "cor36", "growth"])]
    theorem: String,
    #[arg(long)]
    family: Option<String>,
    /// Relocate the family: x -> x + c (exact integer shift).
    #[arg(long)]
    shift: Option<i64>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Parameter stride for family sweeps.
    #[arg(long)]
    step: Option<usize>,
    /// Regularization radius override for energy reports.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    bins: Option<usize>,
    /// Diagnostic: scale every right-hand side before the verdict (for
    /// sensitivity scans and for exercising the failure exit path).
    #[arg(long)]
    rhs_scale: Option<f64>,
    #[arg(long)]
    target_radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write "<prefix>.lhs.dat" and "<prefix>.rhs.dat" two-column series.
    #[arg(long)]
    plot_data: Option<String>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct GrowthArgs {
    #[arg(long)]
    family: Option<String>,
    /// Relocate the family: x -> x + c (exact integer shift).
    #[arg(long)]
    shift: Option<i64>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    step: Option<usize>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    family: Option<String>,
    /// Relocate the family: x -> x + c (exact integer shift).
    #[arg(long)]
    shift: Option<i64>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    step: Option<usize>,
    #[arg(long)]
    target_radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    io: CommonIo,
}

fn main() {
    let raw: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(config_merged_args(raw)) {
        Ok(c) => c,
        Err(e) => {
            // help/version are successful exits, everything else is usage
            use clap::error::ErrorKind::*;
            let code = match e.kind() {
                DisplayHelp | DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli.command) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                AppError::Core(CoreError::NonConvergence { .. })
                | AppError::Core(CoreError::QuadratureNonConvergence { .. })
                | AppError::Core(CoreError::InsufficientPrecision { .. }) => 3,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

#[derive(Debug)]
enum AppError {
    Core(CoreError),
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "{e}"),
            AppError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        AppError::Core(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

type AppResult<T> = Result<T, AppError>;

/// Splice config-file entries (key=value per line) in front of the CLI
/// flags, so explicit flags win.
fn config_merged_args(raw: Vec<String>) -> Vec<String> {
    let mut config_path = None;
    for (i, a) in raw.iter().enumerate() {
        if a == "--config" {
            config_path = raw.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            config_path = Some(p.to_string());
        }
    }
    let Some(path) = config_path else {
        return raw;
    };
    let Ok(body) = std::fs::read_to_string(&path) else {
        return raw; // clap will complain later if the path was required
    };
    let mut merged: Vec<String> = Vec::new();
    // binary name + subcommand stay in front
    let mut it = raw.into_iter();
    if let Some(bin) = it.next() {
        merged.push(bin);
    }
    let rest: Vec<String> = it.collect();
    if let Some(sub) = rest.first() {
        if !sub.starts_with('-') {
            merged.push(sub.clone());
        }
    }
    // explicit flags win: config keys already present on the command line
    // are dropped
    let explicit: Vec<String> = rest
        .iter()
        .filter_map(|a| {
            a.strip_prefix("--")
                .map(|t| t.split_once('=').map(|(k, _)| k).unwrap_or(t).to_string())
        })
        .collect();
    for line in body.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((k, v)) = line.split_once('=') {
            let key = k.trim();
            if explicit.iter().any(|e| e == key) {
                continue;
            }
            merged.push(format!("--{key}"));
            merged.push(v.trim().to_string());
        }
    }
    let skip = usize::from(merged.len() > 1);
    merged.extend(rest.into_iter().skip(skip));
    merged
}

fn run(cmd: Command) -> AppResult<bool> {
    match cmd {
        Command::Roots(a) => cmd_roots(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Growth(a) => cmd_growth(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn parse_poly(s: &str) -> AppResult<IntPolynomial> {
    Ok(IntPolynomial::parse(s)?)
}

fn parse_domain(s: Option<&str>) -> AppResult<Domain> {
    Ok(Domain::parse(s.unwrap_or("disk"))?)
}

fn solve(p: &IntPolynomial, target: Option<f64>, seed: Option<u64>) -> AppResult<RootSet> {
    let target = target.unwrap_or(equidist_core::rootfinder::DEFAULT_TARGET_RADIUS);
    find_roots_seeded(p, target, seed.unwrap_or(DEFAULT_SEED)).map_err(|e| {
        if let CoreError::NonConvergence { .. } = e {
            eprintln!("non-convergence while solving {p}");
        }
        AppError::Core(e)
    })
}

/// Family generation honoring the EQUIDIST_PRECISION override for the
/// round-and-verify digit count.
fn generate_member(spec: &FamilySpec) -> AppResult<IntPolynomial> {
    if spec.kind == FamilyKind::TotallyPositiveMinPoly {
        if let Ok(digits) = std::env::var("EQUIDIST_PRECISION") {
            let mut d: u32 = digits
                .parse()
                .map_err(|_| AppError::Usage("EQUIDIST_PRECISION must be an integer".into()))?;
            loop {
                match families::totally_positive_minpoly_with_digits(spec.parameter, d) {
                    Err(CoreError::InsufficientPrecision { .. }) if d < 960 => d *= 2,
                    other => return Ok(other?),
                }
            }
        }
    }
    Ok(spec.generate()?)
}

fn family_members(
    family: Option<&str>,
    poly: Option<&str>,
    shift: Option<i64>,
    n_min: Option<usize>,
    n_max: Option<usize>,
    step: Option<usize>,
) -> AppResult<Vec<(String, IntPolynomial)>> {
    match (family, poly) {
        (Some(_), Some(_)) => Err(AppError::Usage(
            "exactly one of a literal polynomial or --family must be given".into(),
        )),
        (None, Some(p)) => Ok(vec![(p.to_string(), parse_poly(p)?)]),
        (Some(f), None) => {
            let mut spec = FamilySpec::parse(f)?;
            spec.shift = shift.unwrap_or(0);
            if spec.parameter != 0 {
                let poly = generate_member(&spec)?;
                return Ok(vec![(format!("{f}"), poly)]);
            }
            let (lo, hi) = match (n_min, n_max) {
                (Some(lo), Some(hi)) if lo <= hi => (lo, hi),
                _ => {
                    return Err(AppError::Usage(
                        "family sweeps need --n-min and --n-max (a nonempty range)".into(),
                    ))
                }
            };
            let members = spec.members_in_degree_range(lo, hi, step.unwrap_or(1))?;
            let mut out = Vec::with_capacity(members.len());
            for (param, poly) in members {
                let poly = if spec.kind == FamilyKind::TotallyPositiveMinPoly
                    && std::env::var("EQUIDIST_PRECISION").is_ok()
                {
                    generate_member(&FamilySpec { parameter: param, ..spec })?
                } else {
                    poly
                };
                out.push((format!("{f}:{param}"), poly));
            }
            Ok(out)
        }
        (None, None) => Err(AppError::Usage(
            "exactly one of a literal polynomial or --family must be given".into(),
        )),
    }
}

fn cmd_roots(a: RootsArgs) -> AppResult<bool> {
    let p = parse_poly(&a.poly)?;
    let rs = solve(&p, a.target_radius, a.seed)?;
    let mut out = String::new();
    for (z, r) in rs.roots.iter().zip(rs.radii.iter()) {
        out.push_str(&format!(
            "{} {} {}\n",
            emit::fmt_f64(z.re),
            emit::fmt_f64(z.im),
            emit::fmt_f64(*r)
        ));
    }
    emit::write_out(a.io.output.as_deref(), &out)?;
    if let Some(path) = a.plot_data {
        let mut scatter = String::new();
        for z in &rs.roots {
            scatter.push_str(&format!("{} {}\n", emit::fmt_f64(z.re), emit::fmt_f64(z.im)));
        }
        std::fs::write(path, scatter)?;
    }
    Ok(true)
}

fn cmd_measure(a: MeasureArgs) -> AppResult<bool> {
    let p = parse_poly(&a.poly)?;
    let domain = parse_domain(a.domain.as_deref())?;
    let rs = solve(&p, a.target_radius, a.seed)?;
    let rep = mahler::measure(&p, &rs, &domain)?;
    let diag = mahler::growth_diagnostics(&p, &rs, a.tail_radius.unwrap_or(2.0));
    let body = match a.io.format.as_deref().unwrap_or("json") {
        "csv" => emit::measure_csv(&[("literal".to_string(), rep)]),
        _ => emit::measure_json(&rep, &diag),
    };
    emit::write_out(a.io.output.as_deref(), &body)?;
    Ok(true)
}

fn cmd_stats(a: StatsArgs) -> AppResult<bool> {
    let members =
        family_members(a.family.as_deref(), a.poly.as_deref(), a.shift, None, None, None)?;
    let bins = a.bins.unwrap_or(8);
    let mut rows = Vec::new();
    for (label, p) in members {
        let rs = solve(&p, a.target_radius, a.seed)?;
        let st = discrepancy::zero_stats(&rs, bins)?;
        rows.push((label, st));
    }
    let body = match a.io.format.as_deref().unwrap_or("csv") {
        "json" => emit::stats_json(&rows),
        _ => emit::stats_csv(&rows),
    };
    emit::write_out(a.io.output.as_deref(), &body)?;
    Ok(true)
}

fn default_phi_for(domain: &Domain) -> TestFunction {
    match domain {
        Domain::UnitDisk | Domain::DiskPlusPoints { .. } => {
            builtin_test_function(BuiltinTestFunction::Cor32)
        }
        Domain::Segment { a, b } => {
            if (*a - -2.0).abs() < 1e-12 && (*b - 2.0).abs() < 1e-12 {
                builtin_test_function(BuiltinTestFunction::Cor36)
            } else {
                builtin_test_function(BuiltinTestFunction::Cor35 { a: *a, b: *b })
            }
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> AppResult<bool> {
    if a.theorem == "growth" {
        return cmd_growth(GrowthArgs {
            family: a.family,
            shift: a.shift,
            domain: a.domain,
            n_min: a.n_min,
            n_max: a.n_max,
            step: a.step,
            io: a.io,
        });
    }
    let domain = parse_domain(a.domain.as_deref())?;
    let members = family_members(
        a.family.as_deref(),
        a.poly.as_deref(),
        a.shift,
        a.n_min,
        a.n_max,
        a.step,
    )?;
    let bins = a.bins.unwrap_or(8);
    let theorem = a.theorem.clone();
    let target = a.target_radius;
    let seed = a.seed;

    // fan out across members; results are reassembled in input order
    let results: Vec<AppResult<(String, DiscrepancyReport)>> = members
        .into_par_iter()
        .map(|(label, p)| {
            let rs = solve(&p, target, seed)?;
            let rep = one_report(&theorem, &p, &rs, &domain, bins, a.r)?;
            Ok((label, rep))
        })
        .collect();

    let mut rows = Vec::new();
    for r in results {
        rows.push(r?);
    }
    if let Some(scale) = a.rhs_scale {
        for (_, rep) in rows.iter_mut() {
            rep.rhs *= scale;
            if rep.pass.is_some() {
                rep.pass = Some(rep.lhs <= rep.rhs + rep.lhs_uncertainty);
            }
        }
    }

    let body = match a.io.format.as_deref().unwrap_or("csv") {
        "json" => emit::reports_json(&rows),
        _ => emit::reports_csv(&rows),
    };
    emit::write_out(a.io.output.as_deref(), &body)?;

    if let Some(prefix) = a.plot_data {
        if rows.is_empty() {
            return Err(AppError::Usage("no reports to plot".into()));
        }
        let mut lhs = String::new();
        let mut rhs = String::new();
        for (_, rep) in &rows {
            lhs.push_str(&format!("{} {}\n", rep.params.n, emit::fmt_f64(rep.lhs)));
            rhs.push_str(&format!("{} {}\n", rep.params.n, emit::fmt_f64(rep.rhs)));
        }
        std::fs::write(format!("{prefix}.lhs.dat"), lhs)?;
        std::fs::write(format!("{prefix}.rhs.dat"), rhs)?;
    }

    Ok(rows.iter().all(|(_, rep)| rep.pass != Some(false)))
}

fn one_report(
    theorem: &str,
    p: &IntPolynomial,
    rs: &RootSet,
    domain: &Domain,
    bins: usize,
    r: Option<f64>,
) -> AppResult<DiscrepancyReport> {
    let rep = match theorem {
        "et31" => discrepancy::erdos_turan_report(p, rs, bins)?,
        "thm31" => {
            let phi = builtin_test_function(BuiltinTestFunction::Cor32);
            discrepancy::thm31_report(p, rs, &phi)?
        }
        "thm34" => {
            let phi = default_phi_for(domain);
            discrepancy::thm34_report(p, rs, &phi, domain)?
        }
        "energy" => {
            let phi = default_phi_for(domain);
            discrepancy::energy_report(p, rs, &phi, r, domain)?
        }
        "cor32" => discrepancy::cor32_report(p, rs)?,
        "cor35" => discrepancy::cor35_report(p, rs, domain)?,
        "cor36" => discrepancy::cor36_report(p, rs)?,
        other => return Err(AppError::Usage(format!("unknown theorem {other:?}"))),
    };
    Ok(rep)
}

fn cmd_growth(a: GrowthArgs) -> AppResult<bool> {
    let family = a
        .family
        .as_deref()
        .ok_or_else(|| AppError::Usage("growth needs --family".into()))?;
    let mut spec = FamilySpec::parse(family)?;
    spec.shift = a.shift.unwrap_or(0);
    let domain = parse_domain(a.domain.as_deref())?;
    let (lo, hi) = match (a.n_min, a.n_max) {
        (Some(lo), Some(hi)) if lo <= hi => (lo, hi),
        _ => return Err(AppError::Usage("growth needs --n-min and --n-max".into())),
    };
    let rows = discrepancy::growth_report(&spec, &domain, lo, hi, a.step.unwrap_or(1))?;
    let body = match a.io.format.as_deref().unwrap_or("csv") {
        "json" => emit::growth_json(&rows),
        _ => emit::growth_csv(&rows),
    };
    emit::write_out(a.io.output.as_deref(), &body)?;
    Ok(true)
}

fn cmd_sweep(a: SweepArgs) -> AppResult<bool> {
    let members = family_members(a.family.as_deref(), None, a.shift, a.n_min, a.n_max, a.step)?;
    let domain = parse_domain(a.domain.as_deref())?;
    let target = a.target_radius;
    let seed = a.seed;
    let results: Vec<AppResult<(String, mahler::MeasureReport)>> = members
        .into_par_iter()
        .map(|(label, p)| {
            let rs = solve(&p, target, seed)?;
            let rep = mahler::measure(&p, &rs, &domain)?;
            Ok((label, rep))
        })
        .collect();
    let mut rows = Vec::new();
    for r in results {
        rows.push(r?);
    }
    let body = match a.io.format.as_deref().unwrap_or("csv") {
        "json" => emit::measures_json(&rows),
        _ => emit::measure_csv(&rows),
    };
    emit::write_out(a.io.output.as_deref(), &body)?;
    Ok(true)
}
