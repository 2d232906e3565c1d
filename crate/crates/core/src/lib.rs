//! Greedy feature selection for binomial and multinomial classification
//! built on orthogonal least squares.
//!
//! Candidate features are ranked by the squared orthogonal correlation
//! coefficient (SOCC): the squared Pearson correlation between a centred,
//! orthogonalised feature and the centred response. Summed over an
//! orthogonal response basis, the criterion equals the squared multiple
//! correlation of the candidate with the response, so each greedy step
//! maximises the gain in the sum of squared canonical correlations at the
//! cost of a single Gram–Schmidt projection per candidate.
//!
//! The crate is organised as:
//!
//! - [`dataset`]: CSV loading, response and categorical dummy encoding,
//!   discretisation.
//! - [`linalg`]: centring, unnormalised classical Gram–Schmidt, Pearson
//!   correlation.
//! - [`socc`]: the SOCC criteria and the historical error-reduction ratio.
//! - [`selector`]: the greedy selection loops (vector, response-matrix, and
//!   categorical-block variants) with incremental basis reuse.
//! - [`oracle`]: definition-based reference implementations (normal
//!   equations, CCA eigenproblem, Fisher's criterion, exhaustive search)
//!   used to certify the fast path.
//! - [`synth`]: synthetic benchmark generators (multivariate normal
//!   features with Wishart-sampled covariance, logistic responses) and
//!   recovery-rate trials.
//!
//! Numerical kernels are generic over the scalar type through [`Scalar`];
//! the aliases at the crate root fix `f64`, which is what the command-line
//! tool and all reference checks use.

use std::fmt;
use std::iter::Sum;

use ndarray::ScalarOperand;
use num_traits::{Float, FromPrimitive};

pub mod dataset;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod selector;
pub mod socc;
pub mod synth;

pub use error::{Error, Result};

/// Floating-point scalar usable by the numerical kernels (`f32` or `f64`).
///
/// Tolerances throughout the crate are tuned for `f64`; the `f32`
/// instantiation is structurally supported but looser.
pub trait Scalar:
    Float + FromPrimitive + Sum + ScalarOperand + Send + Sync + fmt::Debug + fmt::Display + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + Sum
        + ScalarOperand
        + Send
        + Sync
        + fmt::Debug
        + fmt::Display
        + 'static
{
}

/// Default-precision aliases used by the CLI and the acceptance checks.
pub type FeatureMatrix = dataset::FeatureMatrix<f64>;
pub type EncodedResponse = dataset::EncodedResponse<f64>;
pub type FeatureBlock = dataset::FeatureBlock<f64>;
pub type CenteredMatrix = linalg::CenteredMatrix<f64>;
pub type OrthoBasis = linalg::OrthoBasis<f64>;
pub type CriterionValue = socc::CriterionValue<f64>;
pub type CcaResult = oracle::CcaResult<f64>;
pub type LdaResult = oracle::LdaResult<f64>;
