use thiserror::Error;

/// Errors produced by the numerical kernels and the estimation models.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "quadrature did not converge: achieved error {achieved:.3e} > required {required:.3e} \
         after {panels} panels"
    )]
    QuadratureNoConvergence {
        achieved: f64,
        required: f64,
        panels: usize,
    },

    #[error(
        "oscillation hint requires {required} panels over [{lo}, {hi}], \
         exceeding the subdivision budget {budget}"
    )]
    OscillationBudget {
        required: usize,
        budget: usize,
        lo: f64,
        hi: f64,
    },

    #[error("integrand returned a non-finite value at {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("no sign change over [{lo}, {hi}]: g(lo) = {g_lo:.6e}, g(hi) = {g_hi:.6e}")]
    NoSignChange { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },

    #[error("root finder exceeded {max_iterations} iterations (last x = {last})")]
    RootIterationLimit { max_iterations: usize, last: f64 },

    #[error("no interior optimum in [{lo}, {hi}]: search converged onto a bracket edge")]
    NoInteriorOptimum { lo: f64, hi: f64 },

    #[error("probability {value} outside [0, 1] beyond tolerance")]
    InvalidProbability { value: f64 },

    #[error("qubit count {n} exceeds the statevector cap {cap}")]
    QubitCap { n: usize, cap: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("unsupported scenario: {0}")]
    Unsupported(String),

    #[error("divergent optimum: {0}")]
    Divergence(String),

    #[error("curve row at delta = {delta} failed: {message}")]
    CurveRow { delta: f64, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
