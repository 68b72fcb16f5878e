//! Seeded sampling from Gaussian beliefs and 1-D Gaussian mixtures.
//!
//! Every sampler draws from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a given `(distribution, count, seed)` always yields
//! the same sample set on the same build.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::closed_form::GaussianBelief;
use crate::empirical::SampleSet;
use crate::error::{Error, Result};
use crate::gaussian::std_pdf;

const WEIGHT_SUM_TOL: f64 = 1e-12;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureComponent {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

/// Finite mixture of scalar normals.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    components: Vec<MixtureComponent>,
}

impl MixtureSpec {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidMixture("no components".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if !(c.weight.is_finite() && c.mean.is_finite() && c.variance.is_finite()) {
                return Err(Error::NonFinite);
            }
            if c.weight <= 0.0 {
                return Err(Error::InvalidMixture(format!(
                    "component {i} has non-positive weight {}",
                    c.weight
                )));
            }
            if c.variance <= 0.0 {
                return Err(Error::InvalidMixture(format!(
                    "component {i} has non-positive variance {}",
                    c.variance
                )));
            }
        }
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidMixture(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { components })
    }

    /// Equal-weight mixture of `N(0, 1)`, `N(10, 4)` and `N(-10, 4)`.
    pub fn trimodal() -> Self {
        let w = 1.0 / 3.0;
        let component = |mean, variance| MixtureComponent {
            weight: w,
            mean,
            variance,
        };
        // 3·(1/3) rounds to exactly 1.0
        Self::new(vec![
            component(0.0, 1.0),
            component(10.0, 4.0),
            component(-10.0, 4.0),
        ])
        .expect("trimodal mixture is valid")
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    pub fn mean(&self) -> f64 {
        self.components.iter().map(|c| c.weight * c.mean).sum()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        mixture_pdf(self, x)
    }
}

pub fn mixture_pdf(mixture: &MixtureSpec, x: f64) -> f64 {
    mixture
        .components
        .iter()
        .map(|c| {
            let sigma = c.variance.sqrt();
            c.weight * std_pdf((x - c.mean) / sigma) / sigma
        })
        .sum()
}

/// Draws `x = μ + L·z` with `L` the Cholesky factor of the covariance.
pub fn sample_gaussian(belief: &GaussianBelief, n_samples: usize, seed: u64) -> Result<SampleSet> {
    if n_samples == 0 {
        return Err(Error::TooFewSamples {
            required: 1,
            found: 0,
        });
    }
    let dim = belief.dim();
    let chol = belief.cov().cholesky()?;
    let mean = belief.mean();
    let mut rng = rng(seed);
    let mut z = vec![0.0; dim];
    let mut points = Vec::with_capacity(n_samples * dim);
    for _ in 0..n_samples {
        z.iter_mut()
            .for_each(|zi| *zi = StandardNormal.sample(&mut rng));
        for i in 0..dim {
            let row = &chol[i * dim..i * dim + i + 1];
            let offset: f64 = row.iter().zip(&z).map(|(l, zk)| l * zk).sum();
            points.push(mean[i] + offset);
        }
    }
    SampleSet::new(dim, points, seed)
}

pub fn sample_mixture(mixture: &MixtureSpec, n_samples: usize, seed: u64) -> Result<SampleSet> {
    sample_mixture_labeled(mixture, n_samples, seed).map(|(samples, _)| samples)
}

/// Like [`sample_mixture`], also returning the component index of each draw.
pub fn sample_mixture_labeled(
    mixture: &MixtureSpec,
    n_samples: usize,
    seed: u64,
) -> Result<(SampleSet, Vec<usize>)> {
    if n_samples == 0 {
        return Err(Error::TooFewSamples {
            required: 1,
            found: 0,
        });
    }
    let picker = WeightedIndex::new(mixture.components.iter().map(|c| c.weight))
        .map_err(|e| Error::InvalidMixture(e.to_string()))?;
    let sigmas: Vec<f64> = mixture
        .components
        .iter()
        .map(|c| c.variance.sqrt())
        .collect();
    let mut rng = rng(seed);
    let mut points = Vec::with_capacity(n_samples);
    let mut labels = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let k = picker.sample(&mut rng);
        let z: f64 = StandardNormal.sample(&mut rng);
        points.push(mixture.components[k].mean + sigmas[k] * z);
        labels.push(k);
    }
    Ok((SampleSet::new(1, points, seed)?, labels))
}
