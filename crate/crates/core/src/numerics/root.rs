//! Bracketing root finder (Brent's method).

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;

/// Finds a root of `g` inside `bracket` by Brent's method (bisection with
/// inverse-quadratic/secant refinement). Requires a sign change over the
/// bracket; an endpoint with `g == 0` is returned directly. Deterministic for
/// fixed inputs.
pub fn find_root<F: Fn(f64) -> f64>(g: F, bracket: (f64, f64), rel_tol: f64) -> Result<f64> {
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "bracket must be finite with lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(rel_tol > 0.0) || !rel_tol.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "rel_tol must be positive and finite, got {rel_tol}"
        )));
    }

    let f_lo = g(lo);
    let f_hi = g(hi);
    if !f_lo.is_finite() || !f_hi.is_finite() {
        return Err(Error::NonFiniteIntegrand {
            at: if f_lo.is_finite() { hi } else { lo },
        });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            g_lo: f_lo,
            g_hi: f_hi,
        });
    }

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f_lo, f_hi);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs().max(1.0) * 1e-4;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation (secant when a == c).
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = g(b);
        if !fb.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: b });
        }
    }

    Err(Error::RootIterationLimit {
        max_iterations: MAX_ITERATIONS,
        last: b,
    })
}
