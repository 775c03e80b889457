//! Ramsey frequency estimation with a coarsened interrogation-time reference:
//! power-law dephasing, optimal interrogation times, the averaged Ramsey
//! signal, frequency variance, precision-versus-jitter curves, and crossover
//! detection between probe preparations.

use crate::error::{Error, Result};
use crate::numerics::{
    find_root, truncated_gaussian_expectation, IntegrandHint, QuadratureSpec,
    TruncatedGaussianTime,
};

/// Damping exponents beyond `exp(-700)` underflow; signal integrands are
/// clipped there and the discarded tail is bounded by that factor.
const DECAY_EXPONENT_CAP: f64 = 700.0;

/// Denominators below this raise the infinite-uncertainty sentinel.
const DENOMINATOR_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DephasingKind {
    /// `γ(t) = γ₀ t`
    Markovian,
    /// `γ(t) = γ₀ t²`
    NonMarkovian,
}

impl DephasingKind {
    pub fn exponent(&self) -> u32 {
        match self {
            DephasingKind::Markovian => 1,
            DephasingKind::NonMarkovian => 2,
        }
    }
}

impl std::fmt::Display for DephasingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DephasingKind::Markovian => write!(f, "markov"),
            DephasingKind::NonMarkovian => write!(f, "nonmarkov"),
        }
    }
}

/// Power-law dephasing `γ(t) = γ₀ tᵉ` with exponent 1 or 2.
///
/// `gamma0` is a plain rate parameter for both exponents; its units differ
/// between the two laws and are not converted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingModel {
    gamma0: f64,
    kind: DephasingKind,
}

impl DephasingModel {
    pub fn new(gamma0: f64, kind: DephasingKind) -> Result<Self> {
        if !(gamma0 >= 0.0) || !gamma0.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "dephasing rate must be finite and >= 0, got {gamma0}"
            )));
        }
        Ok(Self { gamma0, kind })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn kind(&self) -> DephasingKind {
        self.kind
    }

    /// Accumulated dephasing exponent `γ(t)`.
    pub fn gamma(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "time must be >= 0, got {t}"
            )));
        }
        Ok(match self.kind {
            DephasingKind::Markovian => self.gamma0 * t,
            DephasingKind::NonMarkovian => self.gamma0 * t * t,
        })
    }

    fn gamma_prime(&self, t: f64) -> f64 {
        match self.kind {
            DephasingKind::Markovian => self.gamma0,
            DephasingKind::NonMarkovian => 2.0 * self.gamma0 * t,
        }
    }
}

/// Probe preparation for the Ramsey sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyProbe {
    Product,
    Ghz,
}

impl std::fmt::Display for FrequencyProbe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FrequencyProbe::Product => write!(f, "product"),
            FrequencyProbe::Ghz => write!(f, "ghz"),
        }
    }
}

/// A full Ramsey configuration: probe, dephasing law, total time budget `T`,
/// the jittered interrogation-time law, and the detuning `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyScenario {
    pub probe: FrequencyProbe,
    pub n: u64,
    pub dephasing: DephasingModel,
    pub total_time: f64,
    pub jitter: TruncatedGaussianTime,
    pub detuning: f64,
}

impl FrequencyScenario {
    pub fn new(
        probe: FrequencyProbe,
        n: u64,
        dephasing: DephasingModel,
        total_time: f64,
        jitter: TruncatedGaussianTime,
        detuning: f64,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("probe count must be >= 1".into()));
        }
        if !(total_time > 0.0) || !total_time.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "total time must be positive, got {total_time}"
            )));
        }
        if !(jitter.center() > 0.0) {
            return Err(Error::InvalidArgument(
                "interrogation time center must be positive".into(),
            ));
        }
        if !detuning.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "detuning must be finite, got {detuning}"
            )));
        }
        Ok(Self {
            probe,
            n,
            dephasing,
            total_time,
            jitter,
            detuning,
        })
    }

    /// Collective multiplier: the GHZ probe accumulates phase and dephasing
    /// n-fold; each product qubit is a single interferometer.
    fn collective(&self) -> f64 {
        match self.probe {
            FrequencyProbe::Product => 1.0,
            FrequencyProbe::Ghz => self.n as f64,
        }
    }
}

/// Optimal interrogation time from `2 m t γ'(t) = 1`, with `m = n` for the
/// entangled probe and `m = 1` for the product probe, located by the
/// bracketing root finder.
pub fn optimal_t0(model: &DephasingModel, n: u64, entangled: bool) -> Result<f64> {
    if model.gamma0() == 0.0 {
        return Err(Error::Divergence(
            "the optimal interrogation time diverges for a vanishing dephasing rate".into(),
        ));
    }
    let m = if entangled { n as f64 } else { 1.0 };
    let closed_form = match model.kind() {
        DephasingKind::Markovian => 1.0 / (2.0 * m * model.gamma0()),
        DephasingKind::NonMarkovian => 1.0 / (2.0 * (m * model.gamma0()).sqrt()),
    };
    find_root(
        |t| 2.0 * m * t * model.gamma_prime(t) - 1.0,
        (0.25 * closed_form, 4.0 * closed_form),
        1e-14,
    )
}

/// Builds a scenario at the optimal interrogation time with the detuning set
/// by the first fringe quadrature point `m φ t₀ = π/2`.
pub fn make_scenario(
    probe: FrequencyProbe,
    n: u64,
    model: DephasingModel,
    total_time: f64,
    delta: f64,
) -> Result<FrequencyScenario> {
    let entangled = matches!(probe, FrequencyProbe::Ghz);
    let t0 = optimal_t0(&model, n, entangled)?;
    let m = if entangled { n as f64 } else { 1.0 };
    let detuning = std::f64::consts::FRAC_PI_2 / (m * t0);
    let jitter = TruncatedGaussianTime::new(t0, delta)?;
    FrequencyScenario::new(probe, n, model, total_time, jitter, detuning)
}

/// Averaging helper: all three signal moments entering the variance.
struct SignalMoments {
    /// `<cos(m φ t) exp(-m γ(t))>`
    fringe: f64,
    /// `<t sin(m φ t) exp(-m γ(t))>`
    slope: f64,
    /// `<t>`
    mean_time: f64,
}

fn signal_moments(scenario: &FrequencyScenario, quad: &QuadratureSpec) -> Result<SignalMoments> {
    let m = scenario.collective();
    let model = scenario.dephasing;
    let alpha = m * scenario.detuning;

    let mut hint = IntegrandHint::oscillating(alpha.abs());
    if model.gamma0() > 0.0 {
        let cap = match model.kind() {
            DephasingKind::Markovian => DECAY_EXPONENT_CAP / (m * model.gamma0()),
            DephasingKind::NonMarkovian => (DECAY_EXPONENT_CAP / (m * model.gamma0())).sqrt(),
        };
        hint = hint.with_support_cap(cap);
    }

    let damped = |t: f64| (-m * model.gamma(t).unwrap_or(f64::NAN)).exp();
    let fringe = truncated_gaussian_expectation(
        |t| (alpha * t).cos() * damped(t),
        &scenario.jitter,
        hint,
        quad,
    )?;
    let slope = truncated_gaussian_expectation(
        |t| t * (alpha * t).sin() * damped(t),
        &scenario.jitter,
        hint,
        quad,
    )?;
    let mean_time = truncated_gaussian_expectation(
        |t| t,
        &scenario.jitter,
        IntegrandHint::smooth(),
        quad,
    )?;
    Ok(SignalMoments {
        fringe,
        slope,
        mean_time,
    })
}

/// The averaged Ramsey signal `<(1 + cos(m φ t) exp(-m γ(t)))/2>`.
pub fn ramsey_signal(scenario: &FrequencyScenario, quad: &QuadratureSpec) -> Result<f64> {
    let moments = signal_moments(scenario, quad)?;
    Ok(0.5 * (1.0 + moments.fringe))
}

/// Frequency variance
/// `δω² = (1 - <cos(mφt) e^{-mγ}>²) <t> / (M T <t sin(mφt) e^{-mγ}>²)`
/// with `(m, M) = (1, n)` for the product probe and `(n, n²)` for the GHZ
/// probe. A vanishing denominator returns `f64::INFINITY` (the curve stays
/// plottable) rather than an error.
pub fn freq_variance(scenario: &FrequencyScenario, quad: &QuadratureSpec) -> Result<f64> {
    let moments = signal_moments(scenario, quad)?;
    let shots_weight = match scenario.probe {
        FrequencyProbe::Product => scenario.n as f64,
        FrequencyProbe::Ghz => (scenario.n as f64) * (scenario.n as f64),
    };
    let numerator = (1.0 - moments.fringe * moments.fringe) * moments.mean_time;
    let denominator = shots_weight * scenario.total_time * moments.slope * moments.slope;
    if denominator.abs() < DENOMINATOR_FLOOR {
        return Ok(f64::INFINITY);
    }
    Ok(numerator / denominator)
}

/// A probe/dephasing family whose jitter spread is swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencySetup {
    pub probe: FrequencyProbe,
    pub n: u64,
    pub dephasing: DephasingModel,
    pub total_time: f64,
}

impl FrequencySetup {
    pub fn new(
        probe: FrequencyProbe,
        n: u64,
        dephasing: DephasingModel,
        total_time: f64,
    ) -> Self {
        Self {
            probe,
            n,
            dephasing,
            total_time,
        }
    }

    pub fn scenario(&self, delta: f64) -> Result<FrequencyScenario> {
        make_scenario(self.probe, self.n, self.dephasing, self.total_time, delta)
    }

    pub fn variance_at(&self, delta: f64, quad: &QuadratureSpec) -> Result<f64> {
        freq_variance(&self.scenario(delta)?, quad)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPoint {
    pub delta: f64,
    pub dw2: f64,
}

/// Frequency variance per jitter spread, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionCurve {
    pub rows: Vec<PrecisionPoint>,
}

/// Evaluates a setup over a strictly increasing, non-negative `delta` grid.
/// A failing row aborts the curve, naming its `delta`.
pub fn precision_curve(
    setup: &FrequencySetup,
    deltas: &[f64],
    quad: &QuadratureSpec,
) -> Result<PrecisionCurve> {
    if deltas.is_empty() {
        return Err(Error::InvalidArgument("delta grid is empty".into()));
    }
    for pair in deltas.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::InvalidArgument(format!(
                "delta grid must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    if deltas[0] < 0.0 {
        return Err(Error::InvalidArgument("deltas must be >= 0".into()));
    }
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let dw2 = setup.variance_at(delta, quad).map_err(|e| Error::CurveRow {
            delta,
            message: e.to_string(),
        })?;
        rows.push(PrecisionPoint { delta, dw2 });
    }
    Ok(PrecisionCurve { rows })
}

/// Default jitter grid: `δ = 0` plus `points` logarithmic steps from
/// `4·10⁻⁴ t₀` up to `4 t₀`, where `t₀` is the larger of the two product-probe
/// interrogation times for `gamma0`. Wide enough to expose every crossing of
/// the four standard curves.
pub fn default_delta_grid(gamma0: f64, points: usize) -> Result<Vec<f64>> {
    if !(gamma0 > 0.0) || points < 2 {
        return Err(Error::InvalidArgument(
            "default grid needs gamma0 > 0 and at least 2 points".into(),
        ));
    }
    let t0_markov = 1.0 / (2.0 * gamma0);
    let t0_nonmarkov = 1.0 / (2.0 * gamma0.sqrt());
    let upper = 4.0 * t0_markov.max(t0_nonmarkov);
    let lower = 1e-4 * upper;
    let ratio = (upper / lower).ln();
    let mut grid = Vec::with_capacity(points + 1);
    grid.push(0.0);
    for i in 0..points {
        let f = i as f64 / (points - 1) as f64;
        grid.push(lower * (ratio * f).exp());
    }
    Ok(grid)
}

/// Jitter spread at which two setups exchange precision ordering.
///
/// Returns `Ok(None)` when the variance difference has no sign change over
/// the bracket, and the endpoint itself when the curves coincide there (the
/// degenerate crossing at `δ = 0` of preparations with equal jitter-free
/// variance). Identical setups report no crossover.
pub fn crossover_delta(
    a: &FrequencySetup,
    b: &FrequencySetup,
    bracket: (f64, f64),
    quad: &QuadratureSpec,
) -> Result<Option<f64>> {
    let (lo, hi) = bracket;
    if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "bracket must satisfy 0 <= lo < hi, got [{lo}, {hi}]"
        )));
    }
    let difference = |delta: f64| -> Result<(f64, f64)> {
        let va = a.variance_at(delta, quad)?;
        let vb = b.variance_at(delta, quad)?;
        if !va.is_finite() || !vb.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "variance is not finite at delta = {delta}"
            )));
        }
        Ok((va - vb, va.abs().max(vb.abs())))
    };

    let (g_lo, scale_lo) = difference(lo)?;
    let (g_hi, scale_hi) = difference(hi)?;
    let lo_zero = g_lo.abs() <= 1e-9 * scale_lo;
    let hi_zero = g_hi.abs() <= 1e-9 * scale_hi;
    match (lo_zero, hi_zero) {
        (true, true) => return Ok(None),
        (true, false) => return Ok(Some(lo)),
        (false, true) => return Ok(Some(hi)),
        (false, false) => {}
    }
    if g_lo.signum() == g_hi.signum() {
        return Ok(None);
    }
    let root = find_root(
        |delta| match difference(delta) {
            Ok((g, _)) => g,
            Err(_) => f64::NAN,
        },
        (lo, hi),
        1e-9,
    )?;
    Ok(Some(root))
}
