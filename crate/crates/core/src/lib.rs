//! Altruistic cooperative estimation for two information-sharing estimators.
//!
//! Two estimators cooperate to minimize the expected *minimum* of their
//! squared errors, `J = E[min(|a - θ|², |b - θ|²)]`, so that at least one
//! of them lands close to the true parameter. Two cooperation modes are
//! supported:
//!
//! * **heterarchical**: both estimators are optimized jointly;
//! * **hierarchical**: the first estimator is pinned to the conditional
//!   mean (the MMSE estimator) and only the second one is optimized.
//!
//! For Gaussian beliefs both problems have closed-form solutions along the
//! leading eigenvector of the covariance ([`closed_form`]). For arbitrary
//! distributions, [`empirical`] runs a two-generator Lloyd iteration over a
//! sample set, whose fixed points are exactly the centroidal Voronoi
//! conditions the optimum must satisfy.

pub mod altruism;
pub mod cli;
pub mod closed_form;
pub mod distributions;
pub mod empirical;
mod error;
pub mod gaussian;
pub mod linalg;

pub use altruism::{constants, AltruismConstants};
pub use closed_form::{CostKind, CostReport, EstimatorPair, GaussianBelief, PairKind};
pub use distributions::MixtureSpec;
pub use empirical::{
    LloydConfig, LloydResult, McEstimate, PairCostKernel, SampleSet, VoronoiAssignment,
};
pub use error::{Error, Result};
pub use gaussian::ScalarGaussian;
pub use linalg::{CovarianceMatrix, EigenPair};
