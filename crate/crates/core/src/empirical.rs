//! Sample-based machinery for arbitrary posteriors: Voronoi assignment of
//! samples to the two estimators, Monte Carlo evaluation of the
//! min-of-squared-errors cost, and two-generator Lloyd iteration.
//!
//! A pair is optimal only if each estimator is the conditional mean of the
//! samples in its own Voronoi region (for the hierarchical mode, only the
//! second one; the first stays at the global mean). Lloyd iteration is the
//! fixed-point scheme for exactly those conditions. The cost is non-convex,
//! so it runs from several starts and keeps the cheapest converged result.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{EstimatorPair, PairKind};
use crate::distributions::rng;
use crate::error::{Error, Result};
use crate::linalg::{dot, normalize_sign, CovarianceMatrix};

const MAX_RESEEDS: usize = 3;
const FAR_FIELD_PAIRS: usize = 20;

/// `count × dim` matrix of draws, row-major, with the seed it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    dim: usize,
    points: Vec<f64>,
    seed: u64,
}

impl SampleSet {
    pub fn new(dim: usize, points: Vec<f64>, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "sample dimension must be positive".into(),
            ));
        }
        if points.is_empty() {
            return Err(Error::TooFewSamples {
                required: 1,
                found: 0,
            });
        }
        if !points.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: points.len() % dim,
            });
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, points, seed })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.points[k * self.dim..(k + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.points.chunks_exact(self.dim)
    }

    /// First `n` samples (all of them if `n` exceeds the count).
    pub fn head(&self, n: usize) -> SampleSet {
        let n = n.clamp(1, self.len());
        SampleSet {
            dim: self.dim,
            points: self.points[..n * self.dim].to_vec(),
            seed: self.seed,
        }
    }

    pub fn mean(&self) -> Vec<f64> {
        let mut sum = vec![0.0; self.dim];
        for p in self.iter() {
            sum.iter_mut().zip(p).for_each(|(s, x)| *s += x);
        }
        let n = self.len() as f64;
        sum.into_iter().map(|s| s / n).collect()
    }

    /// Unbiased sample covariance, row-major.
    pub fn covariance(&self) -> Vec<f64> {
        let d = self.dim;
        let mean = self.mean();
        let mut cov = vec![0.0; d * d];
        for p in self.iter() {
            for i in 0..d {
                let di = p[i] - mean[i];
                for j in 0..d {
                    cov[i * d + j] += di * (p[j] - mean[j]);
                }
            }
        }
        let denom = (self.len().max(2) - 1) as f64;
        cov.iter_mut().for_each(|c| *c /= denom);
        cov
    }

    /// Per-axis population standard deviation.
    pub fn axis_std(&self) -> Vec<f64> {
        let d = self.dim;
        let mean = self.mean();
        let mut ss = vec![0.0; d];
        for p in self.iter() {
            for i in 0..d {
                ss[i] += (p[i] - mean[i]).powi(2);
            }
        }
        let n = self.len() as f64;
        ss.into_iter().map(|s| (s / n).sqrt()).collect()
    }

    /// `mean ‖x - x̄‖²`, the cost of the sample-mean estimator.
    pub fn empirical_mmse(&self) -> f64 {
        let m = self.mean();
        mean_pair_cost(self, &m, &m)
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: dim,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiAssignment {
    pub labels: Vec<Region>,
    /// Fraction of samples in the first estimator's region.
    pub p1: f64,
}

impl VoronoiAssignment {
    pub fn count(&self, region: Region) -> usize {
        self.labels.iter().filter(|r| **r == region).count()
    }
}

/// Half-space membership: `⟨x - midpoint, second - first⟩ < 0` puts `x` in
/// the first region. Points on the bisector go to the second region.
#[inline]
fn in_first_region(x: &[f64], midpoint: &[f64], diff: &[f64]) -> bool {
    x.iter()
        .zip(midpoint)
        .zip(diff)
        .map(|((xi, mi), di)| (xi - mi) * di)
        .sum::<f64>()
        < 0.0
}

pub fn assign(samples: &SampleSet, pair: &EstimatorPair) -> Result<VoronoiAssignment> {
    samples.check_dim(pair.dim())?;
    let mid = pair.midpoint();
    let diff = pair.difference();
    let labels: Vec<Region> = samples
        .iter()
        .map(|x| {
            if in_first_region(x, &mid, &diff) {
                Region::First
            } else {
                Region::Second
            }
        })
        .collect();
    let first = labels.iter().filter(|r| **r == Region::First).count();
    Ok(VoronoiAssignment {
        p1: first as f64 / labels.len() as f64,
        labels,
    })
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
}

pub fn mc_cost(samples: &SampleSet, pair: &EstimatorPair) -> Result<McEstimate> {
    mc_cost_points(samples, pair.first(), pair.second())
}

/// Monte Carlo estimate of `E[min(‖a - θ‖², ‖b - θ‖²)]`. `a == b` is
/// allowed and gives the plain mean squared error about that point.
///
/// Accumulates sequentially in sample order (Welford), so the result
/// depends only on the sample set.
pub fn mc_cost_points(samples: &SampleSet, a: &[f64], b: &[f64]) -> Result<McEstimate> {
    samples.check_dim(a.len())?;
    samples.check_dim(b.len())?;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (k, x) in samples.iter().enumerate() {
        let v = sq_dist(x, a).min(sq_dist(x, b));
        let delta = v - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (v - mean);
    }
    let n = samples.len();
    let stderr = if n > 1 {
        (m2 / (n - 1) as f64 / n as f64).sqrt()
    } else {
        f64::NAN
    };
    Ok(McEstimate { mean, stderr })
}

/// Plain mean of the pair cost, without the error estimate. Used for cost
/// surfaces where only the value matters.
pub fn mean_pair_cost(samples: &SampleSet, a: &[f64], b: &[f64]) -> f64 {
    let sum: f64 = samples
        .iter()
        .map(|x| sq_dist(x, a).min(sq_dist(x, b)))
        .sum();
    sum / samples.len() as f64
}

/// Exact pair-cost evaluation over a 1-D sample set in `O(log N)` per pair,
/// from sorted samples and prefix sums of `x` and `x²`.
/// Pair-cost evaluator for dense surfaces in any dimension.
///
/// Uses `min(‖x−a‖², ‖x−b‖²) = ‖x−a‖² − max(0, 2⟨x, b−a⟩ + ‖a‖² − ‖b‖²)`:
/// the first term comes from the sample moments, so each pair costs one
/// pass of a linear form over column-major samples.
#[derive(Debug, Clone)]
pub struct PairCostKernel {
    columns: Vec<Vec<f64>>,
    mean: Vec<f64>,
    mean_sq_norm: f64,
}

const KERNEL_BLOCK: usize = 512;
const KERNEL_LANES: usize = 8;

impl PairCostKernel {
    pub fn new(samples: &SampleSet) -> Self {
        let dim = samples.dim();
        let mut columns = vec![Vec::with_capacity(samples.len()); dim];
        for x in samples.iter() {
            for (col, v) in columns.iter_mut().zip(x) {
                col.push(*v);
            }
        }
        let n = samples.len() as f64;
        let mean_sq_norm = samples.iter().map(|x| dot(x, x)).sum::<f64>() / n;
        Self {
            columns,
            mean: samples.mean(),
            mean_sq_norm,
        }
    }

    pub fn len(&self) -> usize {
        self.columns[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cost(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert!(a.len() == self.columns.len() && b.len() == self.columns.len());
        let n = self.len();
        let base = self.mean_sq_norm - 2.0 * dot(&self.mean, a) + dot(a, a);
        let slope: Vec<f64> = a.iter().zip(b).map(|(ai, bi)| 2.0 * (bi - ai)).collect();
        let offset = dot(a, a) - dot(b, b);

        let mut lanes = [0.0; KERNEL_LANES];
        if let [xs, ys] = self.columns.as_slice() {
            let (sx, sy) = (slope[0], slope[1]);
            let mut cx = xs.chunks_exact(KERNEL_LANES);
            let mut cy = ys.chunks_exact(KERNEL_LANES);
            for (bx, by) in (&mut cx).zip(&mut cy) {
                for k in 0..KERNEL_LANES {
                    let v = offset + sx * bx[k] + sy * by[k];
                    lanes[k] += if v > 0.0 { v } else { 0.0 };
                }
            }
            for (k, (x, y)) in cx.remainder().iter().zip(cy.remainder()).enumerate() {
                let v = offset + sx * x + sy * y;
                lanes[k] += if v > 0.0 { v } else { 0.0 };
            }
            return base - lanes.iter().sum::<f64>() / n as f64;
        }
        let mut t = [0.0; KERNEL_BLOCK];
        let mut start = 0;
        while start < n {
            let len = KERNEL_BLOCK.min(n - start);
            let t = &mut t[..len];
            t.fill(offset);
            for (col, s) in self.columns.iter().zip(&slope) {
                for (ti, x) in t.iter_mut().zip(&col[start..start + len]) {
                    *ti += s * x;
                }
            }
            let mut chunks = t.chunks_exact(KERNEL_LANES);
            for c in &mut chunks {
                for (acc, &v) in lanes.iter_mut().zip(c) {
                    *acc += if v > 0.0 { v } else { 0.0 };
                }
            }
            for (acc, &v) in lanes.iter_mut().zip(chunks.remainder()) {
                *acc += if v > 0.0 { v } else { 0.0 };
            }
            start += len;
        }
        base - lanes.iter().sum::<f64>() / n as f64
    }
}

#[derive(Debug, Clone)]
pub struct CostSurface1d {
    sorted: Vec<f64>,
    prefix: Vec<f64>,
    prefix_sq: Vec<f64>,
}

impl CostSurface1d {
    pub fn new(samples: &SampleSet) -> Result<Self> {
        samples.check_dim(1)?;
        let mut sorted = samples.points().to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut prefix = Vec::with_capacity(sorted.len() + 1);
        let mut prefix_sq = Vec::with_capacity(sorted.len() + 1);
        let (mut s, mut s2) = (0.0, 0.0);
        prefix.push(0.0);
        prefix_sq.push(0.0);
        for x in &sorted {
            s += x;
            s2 += x * x;
            prefix.push(s);
            prefix_sq.push(s2);
        }
        Ok(Self {
            sorted,
            prefix,
            prefix_sq,
        })
    }

    pub fn cost(&self, a: f64, b: f64) -> f64 {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let n = self.sorted.len();
        let mid = 0.5 * (lo + hi);
        let k = self.sorted.partition_point(|x| *x < mid);
        let (s_lo, s2_lo) = (self.prefix[k], self.prefix_sq[k]);
        let (s_hi, s2_hi) = (self.prefix[n] - s_lo, self.prefix_sq[n] - s2_lo);
        let left = s2_lo - 2.0 * lo * s_lo + lo * lo * k as f64;
        let right = s2_hi - 2.0 * hi * s_hi + hi * hi * (n - k) as f64;
        (left + right) / n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LloydConfig {
    pub max_iters: usize,
    /// Convergence threshold on estimator movement, per axis, in units of
    /// that axis' sample standard deviation.
    pub move_tol: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for LloydConfig {
    fn default() -> Self {
        Self {
            max_iters: 200,
            move_tol: 1e-8,
            restarts: 8,
            seed: 42,
        }
    }
}

impl LloydConfig {
    fn validate(&self) -> Result<()> {
        if self.max_iters == 0
            || self.restarts == 0
            || self.move_tol.is_nan()
            || self.move_tol <= 0.0
        {
            return Err(Error::InvalidArgument(
                "Lloyd iterations, restarts and tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LloydMode {
    Heterarchical,
    /// First estimator pinned at the sample mean.
    Hierarchical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LloydResult {
    pub pair: EstimatorPair,
    pub iterations: usize,
    pub converged: bool,
    pub mc_cost: f64,
    pub mc_stderr: f64,
    pub restart_index: usize,
    /// Per-coordinate standard error of each estimator as a sample mean
    /// over its region (over all samples for a pinned first estimator).
    pub stderr_first: Vec<f64>,
    pub stderr_second: Vec<f64>,
    /// Largest per-axis movement in the final iteration, in std units.
    pub last_movement: f64,
}

pub fn lloyd_heterarchical(samples: &SampleSet, cfg: &LloydConfig) -> Result<LloydResult> {
    lloyd_multistart(samples, cfg, LloydMode::Heterarchical)
}

pub fn lloyd_hierarchical(samples: &SampleSet, cfg: &LloydConfig) -> Result<LloydResult> {
    lloyd_multistart(samples, cfg, LloydMode::Hierarchical)
}

/// One Lloyd run from a given starting pair. For the hierarchical mode the
/// given first estimator is ignored and replaced by the sample mean.
pub fn lloyd_from(
    samples: &SampleSet,
    first: &[f64],
    second: &[f64],
    mode: LloydMode,
    cfg: &LloydConfig,
) -> Result<LloydResult> {
    cfg.validate()?;
    let stats = Stats::new(samples)?;
    samples.check_dim(first.len())?;
    samples.check_dim(second.len())?;
    let first = match mode {
        LloydMode::Heterarchical => first.to_vec(),
        LloydMode::Hierarchical => stats.mean.clone(),
    };
    if first == second {
        return Err(Error::DegeneratePair);
    }
    let mut rng = rng(cfg.seed);
    run_lloyd(
        samples,
        &stats,
        first,
        second.to_vec(),
        mode,
        cfg,
        &mut rng,
        0,
    )
    .ok_or(Error::AllRestartsFailed { restarts: 1 })
}

fn lloyd_multistart(
    samples: &SampleSet,
    cfg: &LloydConfig,
    mode: LloydMode,
) -> Result<LloydResult> {
    cfg.validate()?;
    let stats = Stats::new(samples)?;
    let axis = principal_axis(samples, &stats);
    let delta = 0.5 * stats.std.iter().cloned().fold(0.0, f64::max);

    let mut best: Option<LloydResult> = None;
    for restart in 0..cfg.restarts {
        let mut rng = rng(cfg.seed);
        rng.set_stream(restart as u64);

        let (first, second) = if restart == 0 {
            let plus: Vec<f64> = stats
                .mean
                .iter()
                .zip(&axis)
                .map(|(m, u)| m + delta * u)
                .collect();
            let minus: Vec<f64> = stats
                .mean
                .iter()
                .zip(&axis)
                .map(|(m, u)| m - delta * u)
                .collect();
            match mode {
                LloydMode::Heterarchical => (minus, plus),
                LloydMode::Hierarchical => (stats.mean.clone(), plus),
            }
        } else {
            match mode {
                LloydMode::Heterarchical => {
                    let a = random_point(samples, &mut rng, None);
                    let b = random_point(samples, &mut rng, Some(&a));
                    (a, b)
                }
                LloydMode::Hierarchical => {
                    let b = random_point(samples, &mut rng, Some(&stats.mean));
                    (stats.mean.clone(), b)
                }
            }
        };
        if first == second {
            continue;
        }

        let Some(result) = run_lloyd(samples, &stats, first, second, mode, cfg, &mut rng, restart)
        else {
            continue;
        };
        let better = match &best {
            None => true,
            Some(b) => (result.converged, -result.mc_cost) > (b.converged, -b.mc_cost),
        };
        if better {
            best = Some(result);
        }
    }
    best.ok_or(Error::AllRestartsFailed {
        restarts: cfg.restarts,
    })
}

struct Stats {
    mean: Vec<f64>,
    std: Vec<f64>,
    // movement scale per axis; 1 where an axis has no spread
    scale: Vec<f64>,
}

impl Stats {
    fn new(samples: &SampleSet) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples {
                required: 2,
                found: samples.len(),
            });
        }
        let std = samples.axis_std();
        if std.iter().all(|s| *s == 0.0) {
            return Err(Error::ZeroVariance);
        }
        let scale = std
            .iter()
            .map(|s| if *s > 0.0 { *s } else { 1.0 })
            .collect();
        Ok(Self {
            mean: samples.mean(),
            std,
            scale,
        })
    }
}

/// Leading eigenvector of the sample covariance, or the axis of largest
/// spread when the covariance is singular.
fn principal_axis(samples: &SampleSet, stats: &Stats) -> Vec<f64> {
    let d = samples.dim();
    let from_cov = CovarianceMatrix::new(d, samples.covariance())
        .and_then(|c| c.leading_eigenpair())
        .map(|e| e.vector);
    from_cov.unwrap_or_else(|_| {
        let k = stats
            .std
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .unwrap_or(0);
        let mut e = vec![0.0; d];
        e[k] = 1.0;
        e
    })
}

fn random_point(samples: &SampleSet, rng: &mut ChaCha8Rng, avoid: Option<&[f64]>) -> Vec<f64> {
    let n = samples.len();
    // bounded retries; the caller rejects a coincident pair
    for _ in 0..64 {
        let p = samples.point(rng.gen_range(0..n));
        if avoid != Some(p) {
            return p.to_vec();
        }
    }
    samples.point(rng.gen_range(0..n)).to_vec()
}

struct RegionSums {
    count: [usize; 2],
    sum: [Vec<f64>; 2],
    sum_sq: [Vec<f64>; 2],
}

fn region_sums(samples: &SampleSet, a: &[f64], b: &[f64]) -> RegionSums {
    let d = samples.dim();
    let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
    let diff: Vec<f64> = b.iter().zip(a).map(|(y, x)| y - x).collect();
    let mut out = RegionSums {
        count: [0, 0],
        sum: [vec![0.0; d], vec![0.0; d]],
        sum_sq: [vec![0.0; d], vec![0.0; d]],
    };
    for x in samples.iter() {
        let r = if in_first_region(x, &mid, &diff) {
            0
        } else {
            1
        };
        out.count[r] += 1;
        for (j, v) in x.iter().enumerate() {
            out.sum[r][j] += v;
            out.sum_sq[r][j] += v * v;
        }
    }
    out
}

impl RegionSums {
    fn centroid(&self, r: usize) -> Vec<f64> {
        let n = self.count[r] as f64;
        self.sum[r].iter().map(|s| s / n).collect()
    }

    fn centroid_stderr(&self, r: usize) -> Vec<f64> {
        let n = self.count[r] as f64;
        self.sum[r]
            .iter()
            .zip(&self.sum_sq[r])
            .map(|(s, s2)| {
                let m = s / n;
                let var = ((s2 / n - m * m) * n / (n - 1.0).max(1.0)).max(0.0);
                (var / n).sqrt()
            })
            .collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn run_lloyd(
    samples: &SampleSet,
    stats: &Stats,
    mut first: Vec<f64>,
    mut second: Vec<f64>,
    mode: LloydMode,
    cfg: &LloydConfig,
    rng: &mut ChaCha8Rng,
    restart_index: usize,
) -> Option<LloydResult> {
    let mut reseeds = 0;
    let mut converged = false;
    let mut iterations = 0;
    let mut movement = f64::INFINITY;

    while iterations < cfg.max_iters {
        iterations += 1;
        let sums = region_sums(samples, &first, &second);

        // An empty region leaves its estimator without a centroid; in the
        // hierarchical mode an empty first region collapses the pair.
        let starved = match mode {
            LloydMode::Heterarchical => sums.count.iter().position(|c| *c == 0),
            LloydMode::Hierarchical => sums.count.contains(&0).then_some(1),
        };
        if let Some(r) = starved {
            reseeds += 1;
            if reseeds > MAX_RESEEDS {
                return None;
            }
            let (moving, other) = if r == 0 {
                (&mut first, &second)
            } else {
                (&mut second, &first)
            };
            *moving = random_point(samples, rng, Some(other));
            if moving == other {
                return None;
            }
            continue;
        }

        let new_first = match mode {
            LloydMode::Heterarchical => sums.centroid(0),
            LloydMode::Hierarchical => first.clone(),
        };
        let new_second = sums.centroid(1);
        movement = axis_movement(&first, &new_first, &stats.scale).max(axis_movement(
            &second,
            &new_second,
            &stats.scale,
        ));
        first = new_first;
        second = new_second;
        if first == second {
            return None;
        }
        if movement <= cfg.move_tol {
            converged = true;
            break;
        }
    }

    let sums = region_sums(samples, &first, &second);
    if sums.count.contains(&0) {
        return None;
    }
    let stderr_first = match mode {
        LloydMode::Heterarchical => sums.centroid_stderr(0),
        LloydMode::Hierarchical => stats
            .std
            .iter()
            .map(|s| s / ((samples.len() - 1) as f64).sqrt())
            .collect(),
    };
    let stderr_second = sums.centroid_stderr(1);
    let cost = mc_cost_points(samples, &first, &second).ok()?;
    let kind = match mode {
        LloydMode::Heterarchical => PairKind::Heterarchical,
        LloydMode::Hierarchical => {
            let mut d: Vec<f64> = second.iter().zip(&first).map(|(b, a)| b - a).collect();
            let before = d.clone();
            normalize_sign(&mut d);
            if d == before {
                PairKind::HierarchicalPlus
            } else {
                PairKind::HierarchicalMinus
            }
        }
    };
    let pair = EstimatorPair::new(first, second, kind).ok()?;
    Some(LloydResult {
        pair,
        iterations,
        converged,
        mc_cost: cost.mean,
        mc_stderr: cost.stderr,
        restart_index,
        stderr_first,
        stderr_second,
        last_movement: movement,
    })
}

fn axis_movement(old: &[f64], new: &[f64], scale: &[f64]) -> f64 {
    old.iter()
        .zip(new)
        .zip(scale)
        .map(|((o, n), s)| (n - o).abs() / s)
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldReport {
    pub passed: bool,
    pub empirical_mmse: f64,
    /// Smallest `cost - 0.99·mmse` over the probed pairs.
    pub worst_margin: f64,
    pub violating: Option<(Vec<f64>, Vec<f64>)>,
    pub pairs_checked: usize,
}

/// Probes pairs with both estimators at least `radius_factor` times the
/// RMS sample norm away from the origin and checks that none of them beats
/// the MMSE estimator by more than 1%.
pub fn sanity_far_field(samples: &SampleSet, radius_factor: f64) -> Result<FarFieldReport> {
    if !radius_factor.is_finite() || radius_factor < 5.0 {
        return Err(Error::InvalidArgument(format!(
            "radius factor must be at least 5, got {radius_factor}"
        )));
    }
    let d = samples.dim();
    let rms = (samples.iter().map(|x| dot(x, x)).sum::<f64>() / samples.len() as f64).sqrt();
    let radius = radius_factor * rms.max(f64::MIN_POSITIVE);
    let mmse = samples.empirical_mmse();
    let threshold = 0.99 * mmse;

    let mut rng = rng(samples.seed() ^ 0x9e37_79b9_7f4a_7c15);
    let far_point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        let mut u: Vec<f64> = (0..d)
            .map(|_| rng.sample(rand_distr::StandardNormal))
            .collect();
        let n = dot(&u, &u).sqrt();
        let r = radius * (1.0 + rng.gen::<f64>());
        u.iter_mut().for_each(|x| *x *= r / n);
        u
    };

    let mut worst = f64::INFINITY;
    let mut violating = None;
    for _ in 0..FAR_FIELD_PAIRS {
        let a = far_point(&mut rng);
        let b = far_point(&mut rng);
        let margin = mean_pair_cost(samples, &a, &b) - threshold;
        if margin < worst {
            worst = margin;
        }
        if margin <= 0.0 && violating.is_none() {
            violating = Some((a, b));
        }
    }
    Ok(FarFieldReport {
        passed: violating.is_none(),
        empirical_mmse: mmse,
        worst_margin: worst,
        violating,
        pairs_checked: FAR_FIELD_PAIRS,
    })
}
