//! Scalar normal density, distribution function, and the truncated and
//! folded first moments built on them.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

// Above this the tail is small enough that `erfc` loses relative accuracy
// faster than the continued fraction converges.
const MILLS_CF_THRESHOLD: f64 = 8.0;
const MILLS_CF_TERMS: u32 = 120;

/// `N(mean, std²)` with `std > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarGaussian {
    mean: f64,
    std: f64,
}

impl ScalarGaussian {
    pub fn new(mean: f64, std: f64) -> Result<Self> {
        if !mean.is_finite() || !std.is_finite() {
            return Err(Error::NonFinite);
        }
        if std <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "standard deviation must be positive, got {std}"
            )));
        }
        Ok(Self { mean, std })
    }

    pub fn standard() -> Self {
        Self {
            mean: 0.0,
            std: 1.0,
        }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn std(&self) -> f64 {
        self.std
    }

    fn standardize(&self, x: f64) -> f64 {
        (x - self.mean) / self.std
    }

    /// `E[Y | Y > x]`.
    pub fn trunc_mean_upper(&self, x: f64) -> f64 {
        self.mean + self.std * mills_ratio(self.standardize(x))
    }

    /// `E[Y | Y < x]`.
    pub fn trunc_mean_lower(&self, x: f64) -> f64 {
        self.mean - self.std * mills_ratio(-self.standardize(x))
    }

    /// `E|Y|`, the first absolute moment of the folded normal.
    pub fn folded_abs_mean(&self) -> f64 {
        let (mu, sigma) = (self.mean, self.std);
        let r = mu / sigma;
        sigma * (2.0 / PI).sqrt() * (-0.5 * r * r).exp() + mu * (1.0 - 2.0 * std_cdf(-r))
    }
}

pub fn std_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// `Φ(x)`.
pub fn std_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// `1 - Φ(x)`, computed without cancellation.
pub fn std_upper_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// Inverse Mills ratio `φ(x) / (1 - Φ(x))`, the standard normal hazard.
///
/// Uses the Laplace continued fraction in the far upper tail, where the
/// quotient of two underflowing quantities would otherwise lose precision.
pub fn mills_ratio(x: f64) -> f64 {
    if x > MILLS_CF_THRESHOLD {
        let mut t = x;
        for k in (1..=MILLS_CF_TERMS).rev() {
            t = x + f64::from(k) / t;
        }
        t
    } else {
        std_pdf(x) / std_upper_tail(x)
    }
}
