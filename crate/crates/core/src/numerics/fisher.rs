//! Fisher information of a parametrized two-outcome distribution.

use crate::error::{Error, Result};

/// Slack allowed when validating probabilities against [0, 1].
pub const PROBABILITY_SLACK: f64 = 1e-12;

/// Default central-difference step: `1e-6 · max(1, |x|)`.
pub fn default_fisher_step(x: f64) -> f64 {
    1e-6 * x.abs().max(1.0)
}

fn checked_probability(p: f64) -> Result<f64> {
    if !p.is_finite() || p < -PROBABILITY_SLACK || p > 1.0 + PROBABILITY_SLACK {
        return Err(Error::InvalidProbability { value: p });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Fisher information `(p')^2/p + (p')^2/(1-p)` from a probability and its
/// derivative with respect to the parameter.
///
/// The degenerate limit `p ∈ {0, 1}` with `p' = 0` yields 0 rather than NaN;
/// a nonzero slope at a saturated probability yields `+∞`.
pub fn fisher_from_slope(p: f64, dp: f64) -> Result<f64> {
    let p = checked_probability(p)?;
    if !dp.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "probability slope must be finite, got {dp}"
        )));
    }
    if dp == 0.0 {
        return Ok(0.0);
    }
    let spread = p * (1.0 - p);
    if spread == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(dp * dp / spread)
}

/// Fisher information at `x` with the derivative taken by central finite
/// difference of step `dx`. Prefer [`fisher_from_slope`] when the model
/// supplies an analytic derivative.
pub fn fisher_two_outcome<P: Fn(f64) -> f64>(p: P, x: f64, dx: f64) -> Result<f64> {
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {dx}"
        )));
    }
    let p_mid = checked_probability(p(x))?;
    let p_hi = checked_probability(p(x + dx))?;
    let p_lo = checked_probability(p(x - dx))?;
    fisher_from_slope(p_mid, (p_hi - p_lo) / (2.0 * dx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn ideal_interferometry_gives_unit_information() {
        let f = fisher_two_outcome(
            |x| 0.5 * (1.0 + x.cos()),
            FRAC_PI_2,
            default_fisher_step(FRAC_PI_2),
        )
        .unwrap();
        assert!((f - 1.0).abs() < 1e-9, "{f}");
    }

    #[test]
    fn reduced_visibility_squares_into_the_information() {
        // p = (1 + V cos x)/2 with V = exp(-0.18): F(pi/2) = V^2 = exp(-0.36).
        let vis = (-0.18f64).exp();
        let f = fisher_two_outcome(
            |x| 0.5 * (1.0 + vis * x.cos()),
            FRAC_PI_2,
            default_fisher_step(FRAC_PI_2),
        )
        .unwrap();
        let expected = (-0.36f64).exp();
        assert!((f - expected).abs() < 1e-9, "{f} vs {expected}");
    }

    #[test]
    fn constant_probability_carries_no_information() {
        let f = fisher_two_outcome(|_| 0.42, 1.0, 1e-6).unwrap();
        assert_eq!(f, 0.0);
    }

    #[test]
    fn saturated_probability_with_zero_slope_is_zero() {
        assert_eq!(fisher_from_slope(1.0, 0.0).unwrap(), 0.0);
        assert_eq!(fisher_from_slope(0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn out_of_range_probability_is_rejected() {
        assert!(matches!(
            fisher_from_slope(1.0 + 1e-6, 0.1),
            Err(Error::InvalidProbability { .. })
        ));
        assert!(matches!(
            fisher_two_outcome(|_| -0.5, 0.0, 1e-6),
            Err(Error::InvalidProbability { .. })
        ));
    }

    #[test]
    fn finite_difference_tracks_analytic_slope() {
        // Fringe family p = (1 + V cos(m x))/2 across visibilities and phases.
        for vis in [1.0, 0.9, (-0.18f64).exp(), 0.3] {
            for m in [1.0, 2.0, 5.0] {
                for frac in [0.2, 0.5, 0.8] {
                    let x = frac * std::f64::consts::PI / m;
                    let p = |y: f64| 0.5 * (1.0 + vis * (m * y).cos());
                    let dp = -0.5 * vis * m * (m * x).sin();
                    let fd = fisher_two_outcome(p, x, default_fisher_step(x)).unwrap();
                    let exact = fisher_from_slope(p(x), dp).unwrap();
                    assert!(
                        (fd - exact).abs() <= 1e-6 * exact.abs().max(1e-12),
                        "vis={vis} m={m} x={x}: {fd} vs {exact}"
                    );
                }
            }
        }
    }
}
