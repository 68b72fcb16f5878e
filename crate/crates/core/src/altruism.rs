//! Scalar altruism equations for the Gaussian case.
//!
//! After projecting onto the solution axis and standardizing, the optimal
//! inter-estimator boundary `χ` solves a scalar equation:
//!
//! * heterarchical: `f_ht(χ) = φ/(2[1-Φ]) - φ/(2Φ) - χ = 0`, whose only
//!   root is `χ = 0` (the boundary passes through the mean);
//! * hierarchical: `g_hi(χ) = φ - 2χ[1-Φ] = 0`, with a single positive root
//!   `χ* = w_hi / 2`.
//!
//! The hierarchical root fixes the constants `w_hi ≈ 1.224` (estimator
//! spacing in units of `√λ₁`) and `c_hi ≈ 0.405` (cost reduction per unit
//! of `λ₁`).

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gaussian::{mills_ratio, std_cdf, std_pdf, std_upper_tail};

const BISECTION_WIDTH: f64 = 1e-10;
const NEWTON_STEPS: usize = 5;
const ROOT_TOL: f64 = 1e-14;

/// Source of `Φ` for the hierarchical solver. The default uses the
/// library's normal distribution function; tests substitute broken ones.
pub trait NormalCdf {
    fn cdf(&self, x: f64) -> f64;

    fn upper_tail(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StandardNormalCdf;

impl NormalCdf for StandardNormalCdf {
    fn cdf(&self, x: f64) -> f64 {
        std_cdf(x)
    }

    fn upper_tail(&self, x: f64) -> f64 {
        std_upper_tail(x)
    }
}

impl<F: Fn(f64) -> f64> NormalCdf for F {
    fn cdf(&self, x: f64) -> f64 {
        self(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltruismConstants {
    /// Positive root of `g_hi`.
    pub root: f64,
    /// Hierarchical spacing factor, `2·root`.
    pub w_hi: f64,
    /// Hierarchical cost coefficient, `w_hi²·(1 - Φ(root))`.
    pub c_hi: f64,
    /// Heterarchical cost coefficient, `2/π`.
    pub c_ht: f64,
}

/// Process-wide constants, solved on first use.
pub fn constants() -> &'static AltruismConstants {
    static CONSTANTS: OnceLock<AltruismConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        solve_hierarchical_constant().expect("standard normal cdf brackets the hierarchical root")
    })
}

pub fn f_ht(chi: f64) -> f64 {
    0.5 * (mills_ratio(chi) - mills_ratio(-chi)) - chi
}

pub fn g_hi(chi: f64) -> f64 {
    g_hi_with(chi, &StandardNormalCdf)
}

pub fn g_hi_prime(chi: f64) -> f64 {
    chi * std_pdf(chi) - 2.0 * std_upper_tail(chi)
}

fn g_hi_with(chi: f64, cdf: &dyn NormalCdf) -> f64 {
    std_pdf(chi) - 2.0 * chi * cdf.upper_tail(chi)
}

fn g_hi_prime_with(chi: f64, cdf: &dyn NormalCdf) -> f64 {
    chi * std_pdf(chi) - 2.0 * cdf.upper_tail(chi)
}

pub fn solve_hierarchical_constant() -> Result<AltruismConstants> {
    solve_hierarchical_constant_with(&StandardNormalCdf)
}

/// Bisection on `(0, √3)` followed by a Newton polish.
pub fn solve_hierarchical_constant_with(cdf: &dyn NormalCdf) -> Result<AltruismConstants> {
    let g = |x: f64| g_hi_with(x, cdf);
    let (mut lo, mut hi) = (0.0, 3f64.sqrt());
    let (g_lo, g_hi) = (g(lo), g(hi));
    if g_lo.is_nan() || g_hi.is_nan() || g_lo * g_hi >= 0.0 {
        return Err(Error::BracketFailure { lo, hi, g_lo, g_hi });
    }
    let lo_positive = g_lo > 0.0;
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut root = 0.5 * (lo + hi);
    for _ in 0..NEWTON_STEPS {
        let value = g(root);
        if value.abs() <= ROOT_TOL {
            break;
        }
        let step = value / g_hi_prime_with(root, cdf);
        let next = root - step;
        if !(next > lo - BISECTION_WIDTH && next < hi + BISECTION_WIDTH) {
            break;
        }
        root = next;
    }

    let w_hi = 2.0 * root;
    Ok(AltruismConstants {
        root,
        w_hi,
        c_hi: w_hi * w_hi * cdf.upper_tail(root),
        c_ht: 2.0 / PI,
    })
}

/// Outcome of scanning one function over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    pub passed: bool,
    /// Grid locations (left end of the bracketing cell) where the sign flips.
    pub sign_changes: Vec<f64>,
    /// For the negativity scan: the largest value seen (must be < 0).
    /// For sign-change scans: distance of the crossing from the nearer end
    /// of `(0, √3)`, or `NaN` when there is no single crossing.
    pub worst_margin: f64,
    /// First grid point violating the expected shape.
    pub offending: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootScanReport {
    /// `f_ht < 0` on `(0, χ_max]`.
    pub f_ht_negative: ScanOutcome,
    /// `g_hi` changes sign exactly once, inside `(0, √3)`.
    pub g_hi_single_crossing: ScanOutcome,
    /// `g_hi'` changes sign exactly once, inside `(0, √3)`.
    pub g_hi_prime_single_crossing: ScanOutcome,
}

impl RootScanReport {
    pub fn passed(&self) -> bool {
        self.f_ht_negative.passed
            && self.g_hi_single_crossing.passed
            && self.g_hi_prime_single_crossing.passed
    }
}

pub fn verify_root_uniqueness(grid_step: f64, chi_max: f64) -> Result<RootScanReport> {
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::InvalidArgument(format!(
            "grid step must lie in (0, 1e-3], got {grid_step}"
        )));
    }
    if !chi_max.is_finite() || chi_max < 10.0 {
        return Err(Error::InvalidArgument(format!(
            "scan range must reach at least 10, got {chi_max}"
        )));
    }
    let steps = (chi_max / grid_step).floor() as usize;
    let grid: Vec<f64> = (1..=steps).map(|k| k as f64 * grid_step).collect();

    let mut max_f = f64::NEG_INFINITY;
    let mut offending = None;
    for &x in &grid {
        let v = f_ht(x);
        if v > max_f {
            max_f = v;
        }
        if v >= 0.0 && offending.is_none() {
            offending = Some(x);
        }
    }
    let f_ht_negative = ScanOutcome {
        passed: offending.is_none(),
        sign_changes: Vec::new(),
        worst_margin: max_f,
        offending,
    };

    Ok(RootScanReport {
        f_ht_negative,
        g_hi_single_crossing: single_crossing(&grid, g_hi),
        g_hi_prime_single_crossing: single_crossing(&grid, g_hi_prime),
    })
}

fn single_crossing(grid: &[f64], f: impl Fn(f64) -> f64) -> ScanOutcome {
    let upper = 3f64.sqrt();
    let mut sign_changes = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in grid {
        let v = f(x);
        if let Some((px, pv)) = prev {
            if (pv > 0.0) != (v > 0.0) {
                sign_changes.push(px);
            }
        }
        prev = Some((x, v));
    }
    let (passed, worst_margin, offending) = match sign_changes.as_slice() {
        [x] if *x > 0.0 && *x < upper => (true, x.min(upper - x), None),
        [] => (false, f64::NAN, None),
        [x] => (false, f64::NAN, Some(*x)),
        [_, second, ..] => (false, f64::NAN, Some(*second)),
    };
    ScanOutcome {
        passed,
        sign_changes,
        worst_margin,
        offending,
    }
}
