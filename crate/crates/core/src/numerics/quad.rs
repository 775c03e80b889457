//! Adaptive Gauss–Kronrod quadrature and Gaussian-weighted expectations.
//!
//! Two weighting laws appear throughout the estimation models: a zero-mean
//! Gaussian over a reference-basis rotation angle, and a Gaussian over the
//! interrogation time truncated to `[0, ∞)`. Both expectations are evaluated
//! as a ratio of two integrals over a window of ±8 standard deviations, where
//! the discarded tail mass is below 1e-15 of the total.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

/// Zero-mean Gaussian smearing law for a reference-basis rotation angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianKernel {
    sigma: f64,
}

impl GaussianKernel {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Gaussian kernel width must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Normalized density at `x`.
    pub fn density(&self, x: f64) -> f64 {
        let z = x / self.sigma;
        (-0.5 * z * z).exp() / (self.sigma * (2.0 * std::f64::consts::PI).sqrt())
    }
}

/// Gaussian law for the interrogation time, truncated to non-negative times.
///
/// The density is proportional to `exp(-(t - center)^2 / (2 width^2))` on
/// `[0, ∞)` and zero for `t < 0`. `width == 0` denotes the point mass at
/// `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedGaussianTime {
    center: f64,
    width: f64,
}

impl TruncatedGaussianTime {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !(center >= 0.0) || !center.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "time-law center must be finite and >= 0, got {center}"
            )));
        }
        if !(width >= 0.0) || !width.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "time-law width must be finite and >= 0, got {width}"
            )));
        }
        Ok(Self { center, width })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn is_point_mass(&self) -> bool {
        self.width == 0.0
    }

    /// Unnormalized density at `t` (zero for negative times).
    pub fn unnormalized_density(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let z = (t - self.center) / self.width;
        (-0.5 * z * z).exp()
    }
}

/// Tolerances and budget for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 10_000,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidArgument(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidArgument(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Caller-provided knowledge about an integrand.
///
/// `oscillation` is the dominant angular frequency; the integrator seeds the
/// mesh with at least 20 panels per oscillation period. `support_cap` marks a
/// time beyond which the integrand is negligible (used for signals damped by
/// `exp(-n γ(t))`, where everything past `n γ(t) = 700` underflows); the
/// integration window is clipped there and the discarded tail is bounded by
/// the damping factor itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegrandHint {
    pub oscillation: Option<f64>,
    pub support_cap: Option<f64>,
}

impl IntegrandHint {
    pub fn smooth() -> Self {
        Self::default()
    }

    pub fn oscillating(angular_frequency: f64) -> Self {
        Self {
            oscillation: Some(angular_frequency),
            support_cap: None,
        }
    }

    pub fn with_support_cap(mut self, cap: f64) -> Self {
        self.support_cap = Some(cap);
        self
    }
}

/// Minimum number of mesh panels per oscillation period.
const PANELS_PER_PERIOD: f64 = 20.0;

/// Window half-width in standard deviations; tail mass beyond is < 1e-15.
const WINDOW_SIGMAS: f64 = 8.0;

#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

// 15-point Kronrod abscissae (positive half) with embedded 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_panel<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Panel> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { at: x })
        }
    };

    let f_center = eval(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let x = half * XGK[j];
        let sum = eval(center - x)? + eval(center + x)?;
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    kronrod *= half;
    gauss *= half;

    Ok(Panel {
        lo,
        hi,
        value: kronrod,
        error: (kronrod - gauss).abs(),
    })
}

/// Adaptive integral of `f` over `[lo, hi]`.
///
/// The mesh starts from the oscillation hint (20 panels per period, at least
/// 4 panels total) and the panel with the largest error estimate is bisected
/// until the summed estimate meets `max(abs_tol, rel_tol · |value|)` or the
/// subdivision budget runs out.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    hint: IntegrandHint,
    spec: &QuadratureSpec,
) -> Result<Integral> {
    spec.validate()?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must be finite, got [{lo}, {hi}]"
        )));
    }
    let hi = match hint.support_cap {
        Some(cap) => hi.min(cap),
        None => hi,
    };
    if hi <= lo {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            panels: 0,
        });
    }

    let mut initial = 4usize;
    if let Some(omega) = hint.oscillation {
        if omega.abs() > 0.0 {
            let periods = (hi - lo) * omega.abs() / (2.0 * std::f64::consts::PI);
            let required = (periods * PANELS_PER_PERIOD).ceil() as usize;
            if required > spec.max_subdivisions {
                return Err(Error::OscillationBudget {
                    required,
                    budget: spec.max_subdivisions,
                    lo,
                    hi,
                });
            }
            initial = initial.max(required);
        }
    }
    initial = initial.min(spec.max_subdivisions);

    let mut heap = BinaryHeap::with_capacity(initial + 16);
    let step = (hi - lo) / initial as f64;
    let mut value = 0.0;
    let mut error = 0.0;
    for i in 0..initial {
        let a = lo + step * i as f64;
        let b = if i + 1 == initial { hi } else { a + step };
        let panel = gauss_kronrod_panel(&f, a, b)?;
        value += panel.value;
        error += panel.error;
        heap.push(panel);
    }

    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
        if error <= tol {
            break;
        }
        if heap.len() >= spec.max_subdivisions {
            return Err(Error::QuadratureNoConvergence {
                achieved: error,
                required: tol,
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = gauss_kronrod_panel(&f, worst.lo, mid)?;
        let right = gauss_kronrod_panel(&f, mid, worst.hi)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum the final mesh; the incremental accumulator drifts slightly.
    let panels = heap.len();
    let (mut value, mut error) = (0.0, 0.0);
    for panel in heap {
        value += panel.value;
        error += panel.error;
    }
    Ok(Integral {
        value,
        error_estimate: error,
        panels,
    })
}

/// Expectation of `f` under the truncated Gaussian time law.
///
/// For `width == 0` this is exactly `f(center)`. Otherwise both the weighted
/// integral and the normalization are evaluated over
/// `[max(0, center − 8 width), center + 8 width]`; the support cap from the
/// hint clips the numerator window only.
pub fn truncated_gaussian_expectation<F: Fn(f64) -> f64>(
    f: F,
    law: &TruncatedGaussianTime,
    hint: IntegrandHint,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if law.is_point_mass() {
        let v = f(law.center());
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: law.center() });
        }
        return Ok(v);
    }

    let lo = (law.center() - WINDOW_SIGMAS * law.width()).max(0.0);
    let hi = law.center() + WINDOW_SIGMAS * law.width();

    let weighted = integrate(
        |t| f(t) * law.unnormalized_density(t),
        lo,
        hi,
        hint,
        spec,
    )?;
    let normalization = integrate(
        |t| law.unnormalized_density(t),
        lo,
        hi,
        IntegrandHint::smooth(),
        spec,
    )?;
    Ok(weighted.value / normalization.value)
}

/// Expectation of `f` under a zero-mean Gaussian of width `kernel.sigma()`,
/// evaluated over the symmetric window `[-8σ, 8σ]`.
pub fn gaussian_expectation<F: Fn(f64) -> f64>(
    f: F,
    kernel: &GaussianKernel,
    hint: IntegrandHint,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let half = WINDOW_SIGMAS * kernel.sigma();
    let weighted = integrate(|x| f(x) * kernel.density(x), -half, half, hint, spec)?;
    let normalization = integrate(
        |x| kernel.density(x),
        -half,
        half,
        IntegrandHint::smooth(),
        spec,
    )?;
    Ok(weighted.value / normalization.value)
}
