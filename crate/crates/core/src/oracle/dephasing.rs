//! Single-qubit pure dephasing channel.

use crate::error::{Error, Result};
use crate::oracle::linalg::Mat2;

/// Applies pure dephasing with accumulated exponent `gamma_value`: diagonal
/// entries unchanged, off-diagonal entries multiplied by `exp(-gamma_value)`.
///
/// Uses the signal-level decay convention `exp(-γ)`.
pub fn apply_dephasing(rho: &Mat2, gamma_value: f64) -> Result<Mat2> {
    if gamma_value.is_nan() || gamma_value < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "dephasing exponent must be >= 0, got {gamma_value}"
        )));
    }
    validate_density_matrix(rho)?;
    let decay = (-gamma_value).exp();
    Ok([
        [rho[0][0], rho[0][1] * decay],
        [rho[1][0] * decay, rho[1][1]],
    ])
}

fn validate_density_matrix(rho: &Mat2) -> Result<()> {
    let tol = 1e-10;
    let trace = rho[0][0] + rho[1][1];
    if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
        return Err(Error::InvalidDensityMatrix(format!(
            "trace is {trace}, expected 1"
        )));
    }
    if rho[0][0].im.abs() > tol || rho[1][1].im.abs() > tol {
        return Err(Error::InvalidDensityMatrix(
            "diagonal entries must be real".into(),
        ));
    }
    if rho[0][0].re < -tol || rho[1][1].re < -tol {
        return Err(Error::InvalidDensityMatrix(
            "diagonal entries must be non-negative".into(),
        ));
    }
    if (rho[0][1] - rho[1][0].conj()).norm() > tol {
        return Err(Error::InvalidDensityMatrix("matrix is not Hermitian".into()));
    }
    let det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
    if det < -tol {
        return Err(Error::InvalidDensityMatrix(format!(
            "matrix is not positive semidefinite (det = {det})"
        )));
    }
    Ok(())
}
