//! Exhaustive argmax over a positive-integer domain.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegerArgmax {
    pub n: u32,
    pub value: f64,
    /// Set when the maximum sits at `n_max`, i.e. the scan may have been
    /// truncated before the true optimum (divergence indicator).
    pub at_cap: bool,
}

/// Returns the smallest `n` in `[1, n_max]` maximizing `f(n)`.
///
/// Ties resolve to the smallest `n`. The scan is exhaustive, so the result is
/// deterministic and never exceeds `n_max`.
pub fn integer_argmax<F: Fn(u32) -> f64>(f: F, n_max: u32) -> Result<IntegerArgmax> {
    if n_max < 1 {
        return Err(Error::InvalidArgument(format!(
            "n_max must be at least 1, got {n_max}"
        )));
    }
    let mut best_n = 1u32;
    let mut best = f(1);
    if best.is_nan() {
        return Err(Error::InvalidArgument("f(1) is NaN".into()));
    }
    for n in 2..=n_max {
        let v = f(n);
        if v.is_nan() {
            return Err(Error::InvalidArgument(format!("f({n}) is NaN")));
        }
        if v > best {
            best = v;
            best_n = n;
        }
    }
    Ok(IntegerArgmax {
        n: best_n,
        value: best,
        at_cap: best_n == n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_reference_objective_peaks_at_seven() {
        // n^2 exp(-2 n^2 delta^2) at delta = 0.1; continuous optimum ~7.07.
        let r = integer_argmax(|n| {
            let n = n as f64;
            n * n * (-2.0 * n * n * 0.01).exp()
        }, 1000)
        .unwrap();
        assert_eq!(r.n, 7);
        assert!(!r.at_cap);
    }

    #[test]
    fn independent_reference_objective_peaks_at_hundred() {
        // n^2 exp(-2 n delta^2) at delta = 0.1; continuous optimum 100.
        let r = integer_argmax(|n| {
            let n = n as f64;
            n * n * (-2.0 * n * 0.01).exp()
        }, 1000)
        .unwrap();
        assert_eq!(r.n, 100);
        assert!(!r.at_cap);
    }

    #[test]
    fn monotone_objective_flags_the_cap() {
        let r = integer_argmax(|n| (n * n) as f64, 10).unwrap();
        assert_eq!(r.n, 10);
        assert!(r.at_cap);
    }

    #[test]
    fn ties_resolve_to_smallest() {
        let r = integer_argmax(|_| 1.0, 50).unwrap();
        assert_eq!(r.n, 1);
        assert!(!r.at_cap);
    }

    #[test]
    fn zero_cap_is_rejected() {
        assert!(integer_argmax(|_| 0.0, 0).is_err());
    }
}
