//! Deterministic numerical kernels: Gaussian-weighted expectations, bracketing
//! root finding, integer argmax, and two-outcome Fisher information.

mod argmax;
mod fisher;
mod quad;
mod root;

pub use argmax::{integer_argmax, IntegerArgmax};
pub use fisher::{
    default_fisher_step, fisher_from_slope, fisher_two_outcome, PROBABILITY_SLACK,
};
pub use quad::{
    gaussian_expectation, integrate, truncated_gaussian_expectation, GaussianKernel, Integral,
    IntegrandHint, QuadratureSpec, TruncatedGaussianTime,
};
pub use root::find_root;
