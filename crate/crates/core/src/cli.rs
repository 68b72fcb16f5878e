//! `altruist` command-line front end. Each command writes CSV files into
//! the output directory and prints a short summary to stdout.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::altruism::{
    f_ht, g_hi, solve_hierarchical_constant_with, verify_root_uniqueness, NormalCdf,
    StandardNormalCdf,
};
use crate::closed_form::{
    analytic_cost, heterarchical_pair, hierarchical_pair, reduction_bounds, Branch, CostKind,
    EstimatorPair, GaussianBelief,
};
use crate::distributions::{mixture_pdf, sample_gaussian, sample_mixture, MixtureSpec};
use crate::empirical::{
    lloyd_from, lloyd_heterarchical, lloyd_hierarchical, mc_cost, mc_cost_points, sanity_far_field,
    CostSurface1d, LloydConfig, LloydMode, LloydResult, PairCostKernel, SampleSet,
};
use crate::error::{Error, Result};
use crate::gaussian::std_upper_tail;
use crate::linalg::CovarianceMatrix;

const DEFAULT_GAUSSIAN_SAMPLES: usize = 1_000_000;
const DEFAULT_TRIMODAL_SAMPLES: usize = 99_999;
const MIN_EXAMPLE_SAMPLES: usize = 1_000;
const VERIFY_SAMPLES: usize = 100_000;

/// Upper bound on `cells × samples` for one dense 2-D cost surface.
/// Surfaces use the leading samples of the shared set up to this budget.
pub const SURFACE_WORK_BUDGET: usize = 2_500_000_000;

const HISTOGRAM_BINS: usize = 200;
const HISTOGRAM_RANGE: (f64, f64) = (-25.0, 25.0);

#[derive(Debug, Parser)]
#[command(
    name = "altruist",
    version,
    about = "Altruistic cooperative estimation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Sample count [default: 1000000 for the Gaussian examples, 99999 for
    /// the trimodal mixture]
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Grid resolution per axis (or the largest dimension for `bounds`)
    #[arg(long, global = true, default_value_t = 500)]
    pub grid: usize,

    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid_min: Option<f64>,

    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Scalar belief N(0, 100): closed forms, MC costs, Lloyd, cost surface
    #[command(name = "example-1d")]
    Example1d,
    /// Planar belief N(0, [[5, 1.5], [1.5, 1]]) with both cost slices
    #[command(name = "example-2d")]
    Example2d,
    /// Equal-weight mixture of N(-10, 4), N(0, 1), N(10, 4)
    Trimodal,
    /// Relative cost-reduction bounds against dimension
    Bounds,
    /// Pair cost surface for the trimodal mixture
    #[command(name = "cost-grid")]
    CostGrid,
    /// Root-structure, constant and far-field checks
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub samples: usize,
    pub out: PathBuf,
    pub grid: usize,
    pub grid_min: f64,
    pub grid_max: f64,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let (samples, range) = match cli.command {
            Command::Example1d => (DEFAULT_GAUSSIAN_SAMPLES, (-25.0, 25.0)),
            Command::Example2d => (DEFAULT_GAUSSIAN_SAMPLES, (-5.0, 5.0)),
            Command::Trimodal | Command::CostGrid => (DEFAULT_TRIMODAL_SAMPLES, (-20.0, 20.0)),
            Command::Bounds => (0, (0.0, 1.0)),
            Command::Verify => (VERIFY_SAMPLES, (0.0, 1.0)),
        };
        let cfg = Self {
            command: cli.command,
            seed: cli.seed,
            samples: cli.samples.unwrap_or(samples),
            out: cli.out.clone(),
            grid: cli.grid,
            grid_min: cli.grid_min.unwrap_or(range.0),
            grid_max: cli.grid_max.unwrap_or(range.1),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let needs_samples = !matches!(self.command, Command::Bounds);
        if needs_samples && self.samples < MIN_EXAMPLE_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "--samples must be at least {MIN_EXAMPLE_SAMPLES}, got {}",
                self.samples
            )));
        }
        if self.grid < 2 {
            return Err(Error::InvalidArgument(format!(
                "--grid must be at least 2, got {}",
                self.grid
            )));
        }
        if !(self.grid_min.is_finite()
            && self.grid_max.is_finite()
            && self.grid_min < self.grid_max)
        {
            return Err(Error::InvalidArgument(format!(
                "grid range [{}, {}] is empty",
                self.grid_min, self.grid_max
            )));
        }
        Ok(())
    }

    fn axis(&self) -> Vec<f64> {
        linspace(self.grid_min, self.grid_max, self.grid)
    }

    fn lloyd(&self) -> LloydConfig {
        LloydConfig {
            seed: self.seed,
            ..LloydConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 2,
        }
    }
}

/// Runs a command, writing its report to `stdout`.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    ensure_dir(&cfg.out)?;
    match cfg.command {
        Command::Example1d => run_example_1d(cfg, stdout),
        Command::Example2d => run_example_2d(cfg, stdout),
        Command::Trimodal => run_trimodal(cfg, stdout),
        Command::Bounds => run_bounds(cfg, stdout),
        Command::CostGrid => run_cost_grid(cfg, stdout),
        Command::Verify => run_verify(cfg, stdout),
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.12e}")
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

struct CsvOut {
    path: PathBuf,
    writer: csv::Writer<fs::File>,
}

impl CsvOut {
    fn create(dir: &Path, name: &str, header: &[&str]) -> Result<Self> {
        let path = dir.join(name);
        let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        let writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(file);
        let mut out = Self { path, writer };
        out.row(header.iter().map(|s| s.to_string()))?;
        Ok(out)
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<()> {
        let fields: Vec<String> = fields.into_iter().collect();
        self.writer
            .write_record(&fields)
            .map_err(|e| Error::io(&self.path, std::io::Error::other(e)))
    }

    fn finish(mut self) -> Result<PathBuf> {
        self.writer.flush().map_err(|e| Error::io(&self.path, e))?;
        Ok(self.path)
    }
}

fn io_out(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// One line of a `*_summary.csv` file.
struct SolutionRow {
    label: &'static str,
    first: Vec<f64>,
    second: Vec<f64>,
    analytic: Option<f64>,
    mc: Option<(f64, f64)>,
    lloyd: Option<(usize, bool, usize)>,
}

impl SolutionRow {
    fn closed(
        label: &'static str,
        pair: &EstimatorPair,
        analytic: f64,
        samples: &SampleSet,
    ) -> Result<Self> {
        let mc = mc_cost(samples, pair)?;
        Ok(Self {
            label,
            first: pair.first().to_vec(),
            second: pair.second().to_vec(),
            analytic: Some(analytic),
            mc: Some((mc.mean, mc.stderr)),
            lloyd: None,
        })
    }

    fn lloyd(label: &'static str, r: &LloydResult) -> Self {
        Self {
            label,
            first: r.pair.first().to_vec(),
            second: r.pair.second().to_vec(),
            analytic: None,
            mc: Some((r.mc_cost, r.mc_stderr)),
            lloyd: Some((r.iterations, r.converged, r.restart_index)),
        }
    }
}

fn write_summary(dir: &Path, name: &str, dim: usize, rows: &[SolutionRow]) -> Result<PathBuf> {
    let mut header: Vec<String> = vec!["solution".into()];
    header.extend((0..dim).map(|i| format!("first_{i}")));
    header.extend((0..dim).map(|i| format!("second_{i}")));
    header.extend(
        [
            "analytic_cost",
            "mc_cost",
            "mc_stderr",
            "iterations",
            "converged",
            "restart",
        ]
        .map(String::from),
    );
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = CsvOut::create(dir, name, &header_refs)?;
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for r in rows {
        let mut fields = vec![r.label.to_string()];
        fields.extend(r.first.iter().map(|x| fmt_f64(*x)));
        fields.extend(r.second.iter().map(|x| fmt_f64(*x)));
        fields.push(opt(r.analytic));
        fields.push(opt(r.mc.map(|m| m.0)));
        fields.push(opt(r.mc.map(|m| m.1)));
        match r.lloyd {
            Some((it, conv, restart)) => {
                fields.push(it.to_string());
                fields.push(conv.to_string());
                fields.push(restart.to_string());
            }
            None => fields.extend([String::new(), String::new(), String::new()]),
        }
        csv.row(fields)?;
    }
    csv.finish()
}

fn gaussian_rows(
    belief: &GaussianBelief,
    samples: &SampleSet,
    cfg: &RunConfig,
) -> Result<Vec<SolutionRow>> {
    let het = heterarchical_pair(belief)?;
    let hi_plus = hierarchical_pair(belief, Branch::Plus)?;
    let hi_minus = hierarchical_pair(belief, Branch::Minus)?;
    let j_ht = analytic_cost(belief, CostKind::Heterarchical)?.j_value;
    let j_hi = analytic_cost(belief, CostKind::Hierarchical)?.j_value;

    let mean = belief.mean().to_vec();
    let mmse_mc = mc_cost_points(samples, &mean, &mean)?;
    let mmse = SolutionRow {
        label: "mmse",
        first: mean.clone(),
        second: mean,
        analytic: Some(belief.mmse()),
        mc: Some((mmse_mc.mean, mmse_mc.stderr)),
        lloyd: None,
    };

    let lloyd_cfg = cfg.lloyd();
    Ok(vec![
        mmse,
        SolutionRow::closed("heterarchical", &het, j_ht, samples)?,
        SolutionRow::closed("hierarchical_plus", &hi_plus, j_hi, samples)?,
        SolutionRow::closed("hierarchical_minus", &hi_minus, j_hi, samples)?,
        SolutionRow::lloyd(
            "lloyd_heterarchical",
            &lloyd_heterarchical(samples, &lloyd_cfg)?,
        ),
        SolutionRow::lloyd(
            "lloyd_hierarchical",
            &lloyd_hierarchical(samples, &lloyd_cfg)?,
        ),
    ])
}

fn print_rows(stdout: &mut dyn Write, rows: &[SolutionRow]) -> Result<()> {
    for r in rows {
        let coords = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:.4}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let analytic = r
            .analytic
            .map(|a| format!("{a:.4}"))
            .unwrap_or_else(|| "-".into());
        let (mc, se) = r.mc.unwrap_or((f64::NAN, f64::NAN));
        writeln!(
            stdout,
            "{:<22} ({}) | ({})  J analytic {:>9}  J mc {:.4} ± {:.4}",
            r.label,
            coords(&r.first),
            coords(&r.second),
            analytic,
            mc,
            se
        )
        .map_err(io_out)?;
    }
    Ok(())
}

pub fn example_1d_belief() -> GaussianBelief {
    GaussianBelief::new(
        vec![0.0],
        CovarianceMatrix::diagonal(&[100.0]).expect("valid"),
    )
    .expect("valid")
}

pub fn example_2d_belief() -> GaussianBelief {
    let cov = CovarianceMatrix::from_rows(&[vec![5.0, 1.5], vec![1.5, 1.0]]).expect("valid");
    GaussianBelief::new(vec![0.0, 0.0], cov).expect("valid")
}

pub fn run_example_1d(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let belief = example_1d_belief();
    let samples = sample_gaussian(&belief, cfg.samples, cfg.seed)?;
    let rows = gaussian_rows(&belief, &samples, cfg)?;
    write_summary(&cfg.out, "example1d_summary.csv", 1, &rows)?;

    let surface = CostSurface1d::new(&samples)?;
    let axis = cfg.axis();
    let mut grid = CsvOut::create(
        &cfg.out,
        "example1d_grid.csv",
        &["theta1", "theta2", "cost"],
    )?;
    for &a in &axis {
        for &b in &axis {
            grid.row([fmt_f64(a), fmt_f64(b), fmt_f64(surface.cost(a, b))])?;
        }
    }
    grid.finish()?;

    writeln!(
        stdout,
        "example-1d: N(0, 100), {} samples, seed {}",
        cfg.samples, cfg.seed
    )
    .map_err(io_out)?;
    print_rows(stdout, &rows)?;
    Ok(Outcome::Success)
}

/// Number of leading samples used for a brute-force surface of `cells`.
pub fn surface_sample_count(cells: usize, available: usize) -> usize {
    (SURFACE_WORK_BUDGET / cells.max(1))
        .clamp(1_000, available.max(1))
        .min(available)
}

pub fn run_example_2d(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let belief = example_2d_belief();
    let samples = sample_gaussian(&belief, cfg.samples, cfg.seed)?;
    let rows = gaussian_rows(&belief, &samples, cfg)?;
    write_summary(&cfg.out, "example2d_summary.csv", 2, &rows)?;

    let axis = cfg.axis();
    let surface = PairCostKernel::new(
        &samples.head(surface_sample_count(axis.len() * axis.len(), samples.len())),
    );
    let mu = belief.mean();

    // first estimator mirrored through the mean
    let mut het = CsvOut::create(
        &cfg.out,
        "example2d_het_grid.csv",
        &["second_x", "second_y", "cost"],
    )?;
    for &x in &axis {
        for &y in &axis {
            let second = [x, y];
            let first = [2.0 * mu[0] - x, 2.0 * mu[1] - y];
            het.row([
                fmt_f64(x),
                fmt_f64(y),
                fmt_f64(surface.cost(&first, &second)),
            ])?;
        }
    }
    het.finish()?;

    // first estimator pinned at the mean
    let mut hier = CsvOut::create(
        &cfg.out,
        "example2d_hier_grid.csv",
        &["second_x", "second_y", "cost"],
    )?;
    for &x in &axis {
        for &y in &axis {
            let cost = surface.cost(mu, &[x, y]);
            hier.row([fmt_f64(x), fmt_f64(y), fmt_f64(cost)])?;
        }
    }
    hier.finish()?;

    writeln!(
        stdout,
        "example-2d: N(0, [[5, 1.5], [1.5, 1]]), {} samples ({} on surfaces), seed {}",
        cfg.samples,
        surface.len(),
        cfg.seed
    )
    .map_err(io_out)?;
    print_rows(stdout, &rows)?;
    Ok(Outcome::Success)
}

/// Both mirror-image solution sets for a symmetric 1-D distribution.
#[derive(Debug, Clone)]
pub struct TrimodalSolutions {
    pub best: LloydResult,
    pub mirror: LloydResult,
}

impl TrimodalSolutions {
    pub fn combined_stderr(&self) -> f64 {
        self.best.mc_stderr.hypot(self.mirror.mc_stderr)
    }

    pub fn costs_agree(&self) -> bool {
        (self.best.mc_cost - self.mirror.mc_cost).abs() <= 2.0 * self.combined_stderr()
    }
}

/// Best multi-start Lloyd solution plus the Lloyd fixed point reached from
/// its reflection through the origin.
pub fn trimodal_solutions(samples: &SampleSet, lloyd: &LloydConfig) -> Result<TrimodalSolutions> {
    let best = lloyd_heterarchical(samples, lloyd)?;
    let (a, b) = (best.pair.first()[0], best.pair.second()[0]);
    let mirror = lloyd_from(samples, &[-b], &[-a], LloydMode::Heterarchical, lloyd)?;
    Ok(TrimodalSolutions { best, mirror })
}

fn sorted_pair(r: &LloydResult) -> (f64, f64) {
    let (a, b) = (r.pair.first()[0], r.pair.second()[0]);
    (a.min(b), a.max(b))
}

pub fn run_trimodal(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let mixture = MixtureSpec::trimodal();
    let samples = sample_mixture(&mixture, cfg.samples, cfg.seed)?;

    let (lo, hi) = HISTOGRAM_RANGE;
    let width = (hi - lo) / HISTOGRAM_BINS as f64;
    let mut counts = vec![0usize; HISTOGRAM_BINS];
    for &x in samples.points() {
        if (lo..=hi).contains(&x) {
            let k = (((x - lo) / width) as usize).min(HISTOGRAM_BINS - 1);
            counts[k] += 1;
        }
    }
    let n = samples.len() as f64;
    let mut hist = CsvOut::create(
        &cfg.out,
        "trimodal_histogram.csv",
        &["bin_lo", "bin_hi", "count", "density", "pdf_center"],
    )?;
    for (k, c) in counts.iter().enumerate() {
        let b_lo = lo + width * k as f64;
        let b_hi = b_lo + width;
        hist.row([
            fmt_f64(b_lo),
            fmt_f64(b_hi),
            c.to_string(),
            fmt_f64(*c as f64 / (n * width)),
            fmt_f64(mixture_pdf(&mixture, 0.5 * (b_lo + b_hi))),
        ])?;
    }
    hist.finish()?;

    let sols = trimodal_solutions(&samples, &cfg.lloyd())?;
    let sample_mean = samples.mean()[0];
    let mut out = CsvOut::create(
        &cfg.out,
        "trimodal_solutions.csv",
        &[
            "solution",
            "low",
            "high",
            "boundary",
            "mc_cost",
            "mc_stderr",
            "iterations",
            "converged",
            "restart",
        ],
    )?;
    for (label, r) in [("lloyd_best", &sols.best), ("mirror", &sols.mirror)] {
        let (l, h) = sorted_pair(r);
        out.row([
            label.to_string(),
            fmt_f64(l),
            fmt_f64(h),
            fmt_f64(0.5 * (l + h)),
            fmt_f64(r.mc_cost),
            fmt_f64(r.mc_stderr),
            r.iterations.to_string(),
            r.converged.to_string(),
            r.restart_index.to_string(),
        ])?;
    }
    out.finish()?;

    let mut check = CsvOut::create(
        &cfg.out,
        "trimodal_checks.csv",
        &["check", "value", "passed"],
    )?;
    let diff = (sols.best.mc_cost - sols.mirror.mc_cost).abs();
    check.row([
        "cost_difference_within_2_stderr".into(),
        fmt_f64(diff / sols.combined_stderr()),
        sols.costs_agree().to_string(),
    ])?;
    check.row(["sample_mean".into(), fmt_f64(sample_mean), "true".into()])?;
    check.finish()?;

    writeln!(
        stdout,
        "trimodal: {} samples, seed {}",
        cfg.samples, cfg.seed
    )
    .map_err(io_out)?;
    for (label, r) in [("lloyd_best", &sols.best), ("mirror", &sols.mirror)] {
        let (l, h) = sorted_pair(r);
        writeln!(
            stdout,
            "{label:<11} {{{l:.3}, {h:.3}}}  boundary {:.3}  J {:.4} ± {:.4}",
            0.5 * (l + h),
            r.mc_cost,
            r.mc_stderr
        )
        .map_err(io_out)?;
    }
    writeln!(
        stdout,
        "sample mean {sample_mean:.4}; costs agree within 2 stderr: {}",
        sols.costs_agree()
    )
    .map_err(io_out)?;

    Ok(if sols.costs_agree() {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

pub fn run_bounds(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let mut csv = CsvOut::create(
        &cfg.out,
        "bounds.csv",
        &["dim", "ht_lower", "ht_upper", "hi_lower", "hi_upper"],
    )?;
    for dim in 1..=cfg.grid {
        let b = reduction_bounds(dim)?;
        csv.row([
            dim.to_string(),
            fmt_f64(b.ht_lower),
            fmt_f64(b.ht_upper),
            fmt_f64(b.hi_lower),
            fmt_f64(b.hi_upper),
        ])?;
    }
    let path = csv.finish()?;
    let b1 = reduction_bounds(1)?;
    writeln!(
        stdout,
        "bounds: dims 1..={} -> {}; upper bounds {:.6} (heterarchical), {:.6} (hierarchical)",
        cfg.grid,
        path.display(),
        b1.ht_upper,
        b1.hi_upper
    )
    .map_err(io_out)?;
    Ok(Outcome::Success)
}

pub fn run_cost_grid(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let samples = sample_mixture(&MixtureSpec::trimodal(), cfg.samples, cfg.seed)?;
    let surface = CostSurface1d::new(&samples)?;
    let axis = cfg.axis();
    let mut csv = CsvOut::create(&cfg.out, "cost_grid.csv", &["theta1", "theta2", "cost"])?;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for &a in &axis {
        for &b in &axis {
            let c = surface.cost(a, b);
            if c < best.0 {
                best = (c, a, b);
            }
            csv.row([fmt_f64(a), fmt_f64(b), fmt_f64(c)])?;
        }
    }
    csv.finish()?;
    writeln!(
        stdout,
        "cost-grid: trimodal mixture, {} samples, {}x{} grid; lowest cell ({:.3}, {:.3}) J {:.4}",
        cfg.samples, cfg.grid, cfg.grid, best.1, best.2, best.0
    )
    .map_err(io_out)?;
    Ok(Outcome::Success)
}

/// One line of the verification table.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

/// All verification checks, with `Φ` supplied by `cdf` for the constant
/// solver so that a broken distribution function can be injected.
pub fn verification_checks(cfg: &RunConfig, cdf: &dyn NormalCdf) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let scan = verify_root_uniqueness(1e-3, 10.0)?;
    checks.push(Check::new(
        "f_ht_negative_on_(0,10]",
        scan.f_ht_negative.passed,
        format!("max f_ht = {:.3e}", scan.f_ht_negative.worst_margin),
    ));
    checks.push(Check::new(
        "g_hi_single_crossing",
        scan.g_hi_single_crossing.passed,
        format!(
            "crossings near {:?}",
            scan.g_hi_single_crossing.sign_changes
        ),
    ));
    checks.push(Check::new(
        "g_hi_prime_single_crossing",
        scan.g_hi_prime_single_crossing.passed,
        format!(
            "crossings near {:?}",
            scan.g_hi_prime_single_crossing.sign_changes
        ),
    ));
    let antisym = (1..=100)
        .map(|k| 0.137 * k as f64)
        .map(|x| (f_ht(-x) + f_ht(x)).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "f_ht_antisymmetry",
        antisym <= 1e-12,
        format!("max |f(-x) + f(x)| = {antisym:.3e}"),
    ));

    match solve_hierarchical_constant_with(cdf) {
        Ok(c) => {
            let residual = g_hi(c.root).abs();
            checks.push(Check::new(
                "g_hi_root_residual",
                residual <= 1e-12,
                format!("|g_hi(w_hi/2)| = {residual:.3e}"),
            ));
            let relation = (c.c_hi - c.w_hi * c.w_hi * std_upper_tail(c.w_hi / 2.0)).abs();
            checks.push(Check::new(
                "c_hi_relation",
                relation <= 1e-12,
                format!("|c_hi - w_hi^2 (1 - Phi(w_hi/2))| = {relation:.3e}"),
            ));
            checks.push(Check::new(
                "w_hi_value",
                (c.w_hi - 1.224).abs() < 5e-4,
                format!("w_hi = {:.10}", c.w_hi),
            ));
            checks.push(Check::new(
                "c_hi_value",
                (c.c_hi - 0.405).abs() < 5e-4,
                format!("c_hi = {:.10}", c.c_hi),
            ));
            let fixed = (crate::gaussian::mills_ratio(c.root) / 2.0 - c.root).abs();
            checks.push(Check::new(
                "hierarchical_fixed_point",
                fixed <= 1e-12,
                format!("|M(chi)/2 - chi| = {fixed:.3e}"),
            ));
            checks.push(Check::new(
                "c_ht_value",
                (c.c_ht - 2.0 / PI).abs() == 0.0,
                format!("c_ht = {:.10}", c.c_ht),
            ));
        }
        Err(e) => checks.push(Check::new(
            "hierarchical_constant_solve",
            false,
            e.to_string(),
        )),
    }

    let samples = sample_gaussian(&example_1d_belief(), cfg.samples, cfg.seed)?;
    let far = sanity_far_field(&samples, 10.0)?;
    checks.push(Check::new(
        "far_field_cost_exceeds_mmse",
        far.passed,
        format!(
            "{} pairs, worst margin {:.3e} over 0.99 x {:.4}",
            far.pairs_checked, far.worst_margin, far.empirical_mmse
        ),
    ));
    Ok(checks)
}

pub fn run_verify(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    run_verify_with(cfg, &StandardNormalCdf, stdout)
}

pub fn run_verify_with(
    cfg: &RunConfig,
    cdf: &dyn NormalCdf,
    stdout: &mut dyn Write,
) -> Result<Outcome> {
    let checks = verification_checks(cfg, cdf)?;
    let mut csv = CsvOut::create(&cfg.out, "verify.csv", &["check", "passed", "detail"])?;
    for c in &checks {
        csv.row([c.name.to_string(), c.passed.to_string(), c.detail.clone()])?;
        writeln!(
            stdout,
            "{:<30} {}  {}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.detail
        )
        .map_err(io_out)?;
    }
    csv.finish()?;
    let all = checks.iter().all(|c| c.passed);
    writeln!(
        stdout,
        "{}",
        if all {
            "all checks passed"
        } else {
            "verification FAILED"
        }
    )
    .map_err(io_out)?;
    Ok(if all {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}
