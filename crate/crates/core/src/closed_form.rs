//! Closed-form altruistic estimator pairs and costs for Gaussian beliefs.
//!
//! With `θ | Z ~ N(μ, R)` and `(λ₁, v)` the leading eigenpair of `R`:
//!
//! * heterarchical: `μ ± √(2λ₁/π)·v`, cost `tr R - (2/π)·λ₁`;
//! * hierarchical: `μ` and `μ ± w_hi·√λ₁·v`, cost `tr R - c_hi·λ₁`.
//!
//! The hierarchical `±` is a genuine two-fold symmetry, so callers choose
//! the branch explicitly.

use std::f64::consts::PI;

use crate::altruism::constants;
use crate::error::{Error, Result};
use crate::linalg::{norm, CovarianceMatrix, EigenPair};

/// Posterior `N(mean, cov)` of the parameter given the shared data.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBelief {
    mean: Vec<f64>,
    cov: CovarianceMatrix,
}

impl GaussianBelief {
    pub fn new(mean: Vec<f64>, cov: CovarianceMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                found: mean.len(),
            });
        }
        if mean.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { mean, cov })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn cov(&self) -> &CovarianceMatrix {
        &self.cov
    }

    /// MMSE cost, `tr R`.
    pub fn mmse(&self) -> f64 {
        self.cov.trace()
    }

    fn offset(&self, scale: f64, eig: &EigenPair) -> Vec<f64> {
        self.mean
            .iter()
            .zip(&eig.vector)
            .map(|(m, v)| m + scale * v)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    Heterarchical,
    HierarchicalPlus,
    HierarchicalMinus,
}

impl PairKind {
    pub fn cost_kind(self) -> CostKind {
        match self {
            PairKind::Heterarchical => CostKind::Heterarchical,
            PairKind::HierarchicalPlus | PairKind::HierarchicalMinus => CostKind::Hierarchical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostKind {
    Heterarchical,
    Hierarchical,
}

impl CostKind {
    /// Cost reduction per unit of `λ₁`.
    pub fn coefficient(self) -> f64 {
        match self {
            CostKind::Heterarchical => 2.0 / PI,
            CostKind::Hierarchical => constants().c_hi,
        }
    }
}

/// Two distinct estimates of the same parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorPair {
    first: Vec<f64>,
    second: Vec<f64>,
    kind: PairKind,
}

impl EstimatorPair {
    pub fn new(first: Vec<f64>, second: Vec<f64>, kind: PairKind) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                found: second.len(),
            });
        }
        if first.is_empty() {
            return Err(Error::InvalidArgument(
                "estimators must be non-empty".into(),
            ));
        }
        if first.iter().chain(&second).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if first == second {
            return Err(Error::DegeneratePair);
        }
        Ok(Self {
            first,
            second,
            kind,
        })
    }

    pub fn first(&self) -> &[f64] {
        &self.first
    }

    pub fn second(&self) -> &[f64] {
        &self.second
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.first
            .iter()
            .zip(&self.second)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    /// `second - first`.
    pub fn difference(&self) -> Vec<f64> {
        self.second
            .iter()
            .zip(&self.first)
            .map(|(b, a)| b - a)
            .collect()
    }

    /// Unit direction from the first estimator to the second.
    pub fn axis(&self) -> Vec<f64> {
        let d = self.difference();
        let n = norm(&d);
        d.into_iter().map(|x| x / n).collect()
    }

    pub fn separation(&self) -> f64 {
        norm(&self.difference())
    }

    /// Same pair with the estimators exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            first: self.second.clone(),
            second: self.first.clone(),
            kind: self.kind,
        }
    }
}

/// Analytic and optionally Monte Carlo costs of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub j_ms: f64,
    pub j_value: f64,
    /// `(j_ms - j_value) / j_ms`.
    pub upsilon: f64,
    pub mc_value: Option<f64>,
    pub mc_stderr: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionBounds {
    pub ht_lower: f64,
    pub ht_upper: f64,
    pub hi_lower: f64,
    pub hi_upper: f64,
}

pub fn heterarchical_pair(belief: &GaussianBelief) -> Result<EstimatorPair> {
    let eig = belief.cov.leading_eigenpair()?;
    let scale = (2.0 * eig.value / PI).sqrt();
    EstimatorPair::new(
        belief.offset(scale, &eig),
        belief.offset(-scale, &eig),
        PairKind::Heterarchical,
    )
}

pub fn hierarchical_pair(belief: &GaussianBelief, branch: Branch) -> Result<EstimatorPair> {
    let eig = belief.cov.leading_eigenpair()?;
    let scale = constants().w_hi * eig.value.sqrt();
    let (scale, kind) = match branch {
        Branch::Plus => (scale, PairKind::HierarchicalPlus),
        Branch::Minus => (-scale, PairKind::HierarchicalMinus),
    };
    EstimatorPair::new(belief.mean.clone(), belief.offset(scale, &eig), kind)
}

pub fn analytic_cost(belief: &GaussianBelief, kind: CostKind) -> Result<CostReport> {
    let lambda = belief.cov.leading_eigenpair()?.value;
    let j_ms = belief.mmse();
    let j_value = j_ms - kind.coefficient() * lambda;
    Ok(CostReport {
        j_ms,
        j_value,
        upsilon: (j_ms - j_value) / j_ms,
        mc_value: None,
        mc_stderr: None,
    })
}

/// Relative cost reduction against the MMSE estimator.
pub fn upsilon(belief: &GaussianBelief, kind: CostKind) -> Result<f64> {
    let lambda = belief.cov.leading_eigenpair()?.value;
    Ok(kind.coefficient() * lambda / belief.mmse())
}

/// Range of [`upsilon`] over all covariances of dimension `n`. The lower
/// bounds are attained by isotropic covariances; the upper bounds are
/// approached as the spectrum collapses onto one axis.
pub fn reduction_bounds(n: usize) -> Result<ReductionBounds> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let n = n as f64;
    let c_ht = CostKind::Heterarchical.coefficient();
    let c_hi = CostKind::Hierarchical.coefficient();
    Ok(ReductionBounds {
        ht_lower: c_ht / n,
        ht_upper: c_ht,
        hi_lower: c_hi / n,
        hi_upper: c_hi,
    })
}
