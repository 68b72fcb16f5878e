//! C ABI for `altruist`.
//!
//! Conventions:
//!
//! * every fallible function returns an [`AltStatus`]; `ALT_STATUS_OK` is 0;
//! * results come back through out-pointers, which are written only on success;
//! * beliefs and sample sets are opaque handles owned by the caller and
//!   released with the matching `*_free` function;
//! * the message of the last failure on the calling thread is available from
//!   [`alt_last_error_message`];
//! * vectors are `double` arrays of the handle's dimension, matrices are
//!   row-major.
//!
//! Panics never cross the boundary; they are reported as `ALT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use altruist::closed_form::{self, Branch};
use altruist::distributions::{self, MixtureComponent};
use altruist::empirical;
use altruist::{
    CostKind, CovarianceMatrix, Error, GaussianBelief, LloydConfig, MixtureSpec, SampleSet,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotSymmetric = 4,
    NotPositiveDefinite = 5,
    NonFinite = 6,
    NotConverged = 7,
    DegeneratePair = 8,
    TooFewSamples = 9,
    BracketFailure = 10,
    LloydFailed = 11,
    BufferTooSmall = 12,
    Panic = 13,
    Internal = 14,
}

impl From<&Error> for AltStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DimensionMismatch { .. } => AltStatus::DimensionMismatch,
            Error::EmptyMatrix | Error::NotUnitVector { .. } => AltStatus::InvalidArgument,
            Error::InvalidMixture(_) | Error::InvalidArgument(_) => AltStatus::InvalidArgument,
            Error::NotSymmetric { .. } => AltStatus::NotSymmetric,
            Error::NotPositiveDefinite { .. } => AltStatus::NotPositiveDefinite,
            Error::NonFinite => AltStatus::NonFinite,
            Error::NotConverged { .. } => AltStatus::NotConverged,
            Error::DegeneratePair | Error::ZeroVariance => AltStatus::DegeneratePair,
            Error::TooFewSamples { .. } => AltStatus::TooFewSamples,
            Error::BracketFailure { .. } => AltStatus::BracketFailure,
            Error::AllRestartsFailed { .. } => AltStatus::LloydFailed,
            _ => AltStatus::Internal,
        }
    }
}

/// Opaque Gaussian belief `N(mean, cov)`.
pub struct AltBelief(GaussianBelief);

/// Opaque sample set.
pub struct AltSamples(SampleSet);

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub enum AltCostKind {
    Heterarchical = 0,
    Hierarchical = 1,
}

impl From<AltCostKind> for CostKind {
    fn from(k: AltCostKind) -> Self {
        match k {
            AltCostKind::Heterarchical => CostKind::Heterarchical,
            AltCostKind::Hierarchical => CostKind::Hierarchical,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub enum AltBranch {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AltConstants {
    pub root: f64,
    pub w_hi: f64,
    pub c_hi: f64,
    pub c_ht: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AltCostReport {
    pub j_ms: f64,
    pub j_value: f64,
    pub upsilon: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AltBounds {
    pub ht_lower: f64,
    pub ht_upper: f64,
    pub hi_lower: f64,
    pub hi_upper: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AltMcEstimate {
    pub mean: f64,
    pub stderr: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AltLloydConfig {
    pub max_iters: usize,
    pub move_tol: f64,
    pub restarts: usize,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AltLloydSummary {
    pub iterations: usize,
    pub converged: bool,
    pub restart_index: usize,
    pub mc_cost: f64,
    pub mc_stderr: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(AltStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(AltStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(AltStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> AltStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AltStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside altruist".into());
            AltStatus::Panic
        }
    }
}

unsafe fn input<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a>(p: *mut f64, len: usize, what: &str) -> Result<&'a mut [f64], Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len` bytes). Returns the full message length excluding
/// the terminator, or 0 if there is none.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn alt_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_constants(out: *mut AltConstants) -> AltStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let c = altruist::constants();
        *out = AltConstants {
            root: c.root,
            w_hi: c.w_hi,
            c_hi: c.c_hi,
            c_ht: c.c_ht,
        };
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn alt_std_cdf(x: f64) -> f64 {
    altruist::gaussian::std_cdf(x)
}

#[no_mangle]
pub extern "C" fn alt_mills_ratio(x: f64) -> f64 {
    altruist::gaussian::mills_ratio(x)
}

/// Creates a belief from a `dim` mean and a row-major `dim × dim` covariance.
///
/// # Safety
/// `mean` must hold `dim` doubles, `cov` `dim * dim`; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_belief_new(
    dim: usize,
    mean: *const f64,
    cov: *const f64,
    out: *mut *mut AltBelief,
) -> AltStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let entries = dim
            .checked_mul(dim)
            .ok_or_else(|| Fail(AltStatus::InvalidArgument, "dimension overflows".into()))?;
        let mean = input(mean, dim, "mean")?.to_vec();
        let cov = CovarianceMatrix::new(dim, input(cov, entries, "cov")?.to_vec())?;
        let belief = GaussianBelief::new(mean, cov)?;
        *out = Box::into_raw(Box::new(AltBelief(belief)));
        Ok(())
    })
}

/// # Safety
/// `belief` must be null or a handle from [`alt_belief_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn alt_belief_free(belief: *mut AltBelief) {
    if !belief.is_null() {
        drop(Box::from_raw(belief));
    }
}

/// Dimension of the belief, or 0 for a null handle.
///
/// # Safety
/// `belief` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alt_belief_dim(belief: *const AltBelief) -> usize {
    belief.as_ref().map_or(0, |b| b.0.dim())
}

/// Leading eigenvalue and unit eigenvector of the belief covariance.
///
/// # Safety
/// `vector` must hold `dim` doubles; the other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn alt_belief_leading_eigenpair(
    belief: *const AltBelief,
    value: *mut f64,
    vector: *mut f64,
) -> AltStatus {
    guard(|| {
        let b = &handle(belief, "belief")?.0;
        let value = out_ref(value, "value")?;
        let vector = output(vector, b.dim(), "vector")?;
        let eig = b.cov().leading_eigenpair()?;
        *value = eig.value;
        vector.copy_from_slice(&eig.vector);
        Ok(())
    })
}

unsafe fn write_pair(
    pair: &altruist::EstimatorPair,
    first: *mut f64,
    second: *mut f64,
) -> Result<(), Fail> {
    let dim = pair.dim();
    let f = output(first, dim, "first")?;
    let s = output(second, dim, "second")?;
    f.copy_from_slice(pair.first());
    s.copy_from_slice(pair.second());
    Ok(())
}

/// Closed-form heterarchical pair.
///
/// # Safety
/// `first` and `second` must each hold `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn alt_heterarchical_pair(
    belief: *const AltBelief,
    first: *mut f64,
    second: *mut f64,
) -> AltStatus {
    guard(|| {
        let b = &handle(belief, "belief")?.0;
        write_pair(&closed_form::heterarchical_pair(b)?, first, second)
    })
}

/// Closed-form hierarchical pair; `first` receives the belief mean.
///
/// # Safety
/// `first` and `second` must each hold `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn alt_hierarchical_pair(
    belief: *const AltBelief,
    branch: AltBranch,
    first: *mut f64,
    second: *mut f64,
) -> AltStatus {
    guard(|| {
        let b = &handle(belief, "belief")?.0;
        let branch = match branch {
            AltBranch::Plus => Branch::Plus,
            AltBranch::Minus => Branch::Minus,
        };
        write_pair(&closed_form::hierarchical_pair(b, branch)?, first, second)
    })
}

/// # Safety
/// `belief` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_analytic_cost(
    belief: *const AltBelief,
    kind: AltCostKind,
    out: *mut AltCostReport,
) -> AltStatus {
    guard(|| {
        let b = &handle(belief, "belief")?.0;
        let out = out_ref(out, "out")?;
        let r = closed_form::analytic_cost(b, kind.into())?;
        *out = AltCostReport {
            j_ms: r.j_ms,
            j_value: r.j_value,
            upsilon: r.upsilon,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_reduction_bounds(dim: usize, out: *mut AltBounds) -> AltStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let r = closed_form::reduction_bounds(dim)?;
        *out = AltBounds {
            ht_lower: r.ht_lower,
            ht_upper: r.ht_upper,
            hi_lower: r.hi_lower,
            hi_upper: r.hi_upper,
        };
        Ok(())
    })
}

/// Wraps `count` row-major points of dimension `dim` (copied).
///
/// # Safety
/// `points` must hold `count * dim` doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_samples_new(
    dim: usize,
    count: usize,
    points: *const f64,
    out: *mut *mut AltSamples,
) -> AltStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let len = dim
            .checked_mul(count)
            .ok_or_else(|| Fail(AltStatus::InvalidArgument, "sample buffer overflows".into()))?;
        let set = SampleSet::new(dim, input(points, len, "points")?.to_vec(), 0)?;
        *out = Box::into_raw(Box::new(AltSamples(set)));
        Ok(())
    })
}

/// Draws `count` seeded samples from the belief.
///
/// # Safety
/// `belief` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_sample_gaussian(
    belief: *const AltBelief,
    count: usize,
    seed: u64,
    out: *mut *mut AltSamples,
) -> AltStatus {
    guard(|| {
        let b = &handle(belief, "belief")?.0;
        let out = out_ref(out, "out")?;
        let set = distributions::sample_gaussian(b, count, seed)?;
        *out = Box::into_raw(Box::new(AltSamples(set)));
        Ok(())
    })
}

/// Draws `count` seeded samples from a scalar Gaussian mixture of
/// `components` terms.
///
/// # Safety
/// `weights`, `means` and `variances` must each hold `components` doubles.
#[no_mangle]
pub unsafe extern "C" fn alt_sample_mixture(
    components: usize,
    weights: *const f64,
    means: *const f64,
    variances: *const f64,
    count: usize,
    seed: u64,
    out: *mut *mut AltSamples,
) -> AltStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let w = input(weights, components, "weights")?;
        let m = input(means, components, "means")?;
        let v = input(variances, components, "variances")?;
        let spec = MixtureSpec::new(
            (0..components)
                .map(|i| MixtureComponent {
                    weight: w[i],
                    mean: m[i],
                    variance: v[i],
                })
                .collect(),
        )?;
        let set = distributions::sample_mixture(&spec, count, seed)?;
        *out = Box::into_raw(Box::new(AltSamples(set)));
        Ok(())
    })
}

/// # Safety
/// `samples` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alt_samples_free(samples: *mut AltSamples) {
    if !samples.is_null() {
        drop(Box::from_raw(samples));
    }
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `samples` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alt_samples_len(samples: *const AltSamples) -> usize {
    samples.as_ref().map_or(0, |s| s.0.len())
}

/// Point dimension, or 0 for a null handle.
///
/// # Safety
/// `samples` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alt_samples_dim(samples: *const AltSamples) -> usize {
    samples.as_ref().map_or(0, |s| s.0.dim())
}

/// Copies the row-major points into `buf`, which holds `len` doubles.
///
/// # Safety
/// `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn alt_samples_copy(
    samples: *const AltSamples,
    buf: *mut f64,
    len: usize,
) -> AltStatus {
    guard(|| {
        let s = &handle(samples, "samples")?.0;
        let pts = s.points();
        if len < pts.len() {
            return Err(Fail(
                AltStatus::BufferTooSmall,
                format!("buffer holds {len} values, need {}", pts.len()),
            ));
        }
        output(buf, pts.len(), "buf")?.copy_from_slice(pts);
        Ok(())
    })
}

/// Monte Carlo pair cost over the sample set. Coincident points are allowed.
///
/// # Safety
/// `first` and `second` must hold `dim` doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_mc_cost(
    samples: *const AltSamples,
    first: *const f64,
    second: *const f64,
    out: *mut AltMcEstimate,
) -> AltStatus {
    guard(|| {
        let s = &handle(samples, "samples")?.0;
        let out = out_ref(out, "out")?;
        let a = input(first, s.dim(), "first")?;
        let b = input(second, s.dim(), "second")?;
        let e = empirical::mc_cost_points(s, a, b)?;
        *out = AltMcEstimate {
            mean: e.mean,
            stderr: e.stderr,
        };
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn alt_lloyd_config_default() -> AltLloydConfig {
    let c = LloydConfig::default();
    AltLloydConfig {
        max_iters: c.max_iters,
        move_tol: c.move_tol,
        restarts: c.restarts,
        seed: c.seed,
    }
}

/// Multi-start Lloyd iteration. `config` may be null for the defaults.
///
/// # Safety
/// `first` and `second` must hold `dim` doubles; `summary` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn alt_lloyd(
    samples: *const AltSamples,
    kind: AltCostKind,
    config: *const AltLloydConfig,
    summary: *mut AltLloydSummary,
    first: *mut f64,
    second: *mut f64,
) -> AltStatus {
    guard(|| {
        let s = &handle(samples, "samples")?.0;
        let summary = out_ref(summary, "summary")?;
        let cfg = config
            .as_ref()
            .map_or_else(LloydConfig::default, |c| LloydConfig {
                max_iters: c.max_iters,
                move_tol: c.move_tol,
                restarts: c.restarts,
                seed: c.seed,
            });
        let result = match kind {
            AltCostKind::Heterarchical => empirical::lloyd_heterarchical(s, &cfg)?,
            AltCostKind::Hierarchical => empirical::lloyd_hierarchical(s, &cfg)?,
        };
        write_pair(&result.pair, first, second)?;
        *summary = AltLloydSummary {
            iterations: result.iterations,
            converged: result.converged,
            restart_index: result.restart_index,
            mc_cost: result.mc_cost,
            mc_stderr: result.mc_stderr,
        };
        Ok(())
    })
}
