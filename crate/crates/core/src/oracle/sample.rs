//! Reproducible outcome sampling and maximum-likelihood phase estimation.

use crate::error::{Error, Result};
use crate::oracle::measure::ParityDistribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

/// Draws `shots` parity outcomes; returns `(even, odd)` counts.
///
/// The generator state is derived from `seed` alone, so identical seeds give
/// identical counts.
pub fn sample_outcomes(
    dist: &ParityDistribution,
    shots: u64,
    seed: u64,
) -> Result<(u64, u64)> {
    if shots < 1 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let binomial = Binomial::new(shots, dist.p_even)
        .map_err(|e| Error::InvalidArgument(format!("invalid sampling setup: {e}")))?;
    let even = binomial.sample(&mut rng);
    Ok((even, shots - even))
}

/// Absolute convergence tolerance of the phase search.
const PHASE_TOLERANCE: f64 = 1e-10;

/// Maximum-likelihood phase from parity counts via golden-section search.
///
/// `model` maps a phase to the even-outcome probability and must be monotone
/// or unimodal over the bracket. A likelihood maximum sitting on a bracket
/// edge is reported as an error rather than returned.
pub fn mle_phase<M: Fn(f64) -> f64>(
    counts: (u64, u64),
    model: M,
    bracket: (f64, f64),
) -> Result<f64> {
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "bracket must be finite with lo < hi, got [{lo}, {hi}]"
        )));
    }
    let (even, odd) = (counts.0 as f64, counts.1 as f64);
    if counts.0 + counts.1 == 0 {
        return Err(Error::InvalidArgument("counts are empty".into()));
    }

    let log_likelihood = |phi: f64| -> f64 {
        let p = model(phi);
        if !p.is_finite() {
            return f64::NEG_INFINITY;
        }
        let p = p.clamp(0.0, 1.0);
        let mut ll = 0.0;
        if even > 0.0 {
            if p <= 0.0 {
                return f64::NEG_INFINITY;
            }
            ll += even * p.ln();
        }
        if odd > 0.0 {
            if p >= 1.0 {
                return f64::NEG_INFINITY;
            }
            ll += odd * (1.0 - p).ln();
        }
        ll
    };

    // Golden-section search for the maximum.
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = log_likelihood(c);
    let mut fd = log_likelihood(d);
    while (b - a) > PHASE_TOLERANCE {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = log_likelihood(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = log_likelihood(d);
        }
    }
    let estimate = 0.5 * (a + b);

    let edge_margin = 100.0 * PHASE_TOLERANCE;
    if estimate - lo < edge_margin || hi - estimate < edge_margin {
        return Err(Error::NoInteriorOptimum { lo, hi });
    }
    Ok(estimate)
}
