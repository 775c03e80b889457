//! Cross-validation drivers: the oracle/closed-form equivalence grid and the
//! Monte-Carlo Cramér–Rao check. Shared by the CLI and the acceptance suite.

use crate::error::{Error, Result};
use crate::numerics::{GaussianKernel, QuadratureSpec};
use crate::oracle::{
    mle_phase, sample_outcomes, smeared_parity_distribution, ProbeStateKind, ProbeStateSpec,
    ReferenceKind, STATEVECTOR_QUBIT_CAP,
};
use crate::phase::{fisher_phase, parity_probabilities, PhaseScenario};

/// Tolerance of the oracle/closed-form equivalence (absolute, on parity
/// probabilities).
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-8;

/// Default sampling seed used when none is supplied (arbitrary fixed
/// constant; determinism by default).
pub const DEFAULT_SEED: u64 = 0xC0A25E;

/// Accepted band for MLE variance over the Cramér–Rao bound.
pub const MC_RATIO_BAND: (f64, f64) = (0.9, 1.2);

/// Worst deviation between oracle and closed form for one probe/reference
/// combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceSummary {
    pub state: ProbeStateKind,
    pub reference: ReferenceKind,
    pub max_deviation: f64,
    pub worst_n: usize,
    pub worst_delta: f64,
    pub worst_phi: f64,
}

pub fn state_kind_name(kind: ProbeStateKind) -> &'static str {
    match kind {
        ProbeStateKind::Ghz => "ghz",
        ProbeStateKind::Product => "product",
        ProbeStateKind::Alternating => "alternating",
    }
}

/// Runs the full equivalence grid: `n = 1..=n_max`, the given coarsening
/// spreads, phases `{0, π/(4n), π/(2n), π/n}`, all probe kinds crossed with
/// all references (except the alternating probe under independent
/// references, which has no closed form).
pub fn oracle_equivalence_grid(
    n_max: usize,
    deltas: &[f64],
    quad: &QuadratureSpec,
) -> Result<Vec<EquivalenceSummary>> {
    if n_max < 1 || n_max > STATEVECTOR_QUBIT_CAP {
        return Err(Error::QubitCap {
            n: n_max,
            cap: STATEVECTOR_QUBIT_CAP,
        });
    }
    for &delta in deltas {
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "coarsening spreads must be finite and >= 0, got {delta}"
            )));
        }
    }

    let combos = [
        (ProbeStateKind::Ghz, ReferenceKind::Perfect),
        (ProbeStateKind::Ghz, ReferenceKind::Common),
        (ProbeStateKind::Ghz, ReferenceKind::Independent),
        (ProbeStateKind::Product, ReferenceKind::Perfect),
        (ProbeStateKind::Product, ReferenceKind::Common),
        (ProbeStateKind::Product, ReferenceKind::Independent),
        (ProbeStateKind::Alternating, ReferenceKind::Perfect),
        (ProbeStateKind::Alternating, ReferenceKind::Common),
    ];

    let mut summaries = Vec::with_capacity(combos.len());
    for (kind, reference) in combos {
        let mut summary = EquivalenceSummary {
            state: kind,
            reference,
            max_deviation: 0.0,
            worst_n: 0,
            worst_delta: 0.0,
            worst_phi: 0.0,
        };
        for n in 1..=n_max {
            let quarter = std::f64::consts::PI / (4.0 * n as f64);
            for &delta in deltas {
                let kernel = if delta > 0.0 {
                    Some(GaussianKernel::new(delta)?)
                } else {
                    None
                };
                for phi in [0.0, quarter, 2.0 * quarter, 4.0 * quarter] {
                    let probe = ProbeStateSpec::new(kind, n, phi)?;
                    let oracle =
                        smeared_parity_distribution(&probe, reference, kernel.as_ref(), quad)?;
                    let scenario = PhaseScenario::new(probe, reference, delta, 1)?;
                    let closed = parity_probabilities(&scenario)?;
                    let deviation = (oracle.p_even - closed.p_even)
                        .abs()
                        .max((oracle.p_odd - closed.p_odd).abs());
                    if deviation > summary.max_deviation {
                        summary.max_deviation = deviation;
                        summary.worst_n = n;
                        summary.worst_delta = delta;
                        summary.worst_phi = phi;
                    }
                }
            }
        }
        summaries.push(summary);
    }
    Ok(summaries)
}

/// One Monte-Carlo Cramér–Rao case: a single-probe phase estimation run at
/// the optimal operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCase {
    pub n: usize,
    pub delta: f64,
    pub phi: f64,
}

impl McCase {
    pub fn standard_cases() -> Vec<McCase> {
        vec![
            McCase {
                n: 1,
                delta: 0.0,
                phi: std::f64::consts::FRAC_PI_2,
            },
            McCase {
                n: 1,
                delta: 0.3,
                phi: std::f64::consts::FRAC_PI_2,
            },
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    pub case: McCase,
    pub shots: u64,
    pub repetitions: u64,
    pub variance: f64,
    pub cr_bound: f64,
    pub ratio: f64,
}

impl McResult {
    pub fn within_band(&self) -> bool {
        self.ratio >= MC_RATIO_BAND.0 && self.ratio <= MC_RATIO_BAND.1
    }
}

/// Repeatedly samples parity counts at the true phase, re-estimates the phase
/// by maximum likelihood, and compares the estimator variance against
/// `1/(shots · F)`.
pub fn mc_crb_check(
    case: &McCase,
    shots: u64,
    repetitions: u64,
    seed: u64,
) -> Result<McResult> {
    if shots < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "the variance check needs at least 10^4 shots, got {shots}"
        )));
    }
    if repetitions < 100 {
        return Err(Error::InvalidArgument(format!(
            "the variance check needs at least 100 repetitions, got {repetitions}"
        )));
    }

    let scenario_at = |phi: f64| -> Result<PhaseScenario> {
        let probe = ProbeStateSpec::new(ProbeStateKind::Ghz, case.n, phi)?;
        PhaseScenario::new(probe, ReferenceKind::Common, case.delta, 1)
    };
    let model = |phi: f64| -> f64 {
        parity_probabilities(&scenario_at(phi).expect("valid scenario"))
            .expect("valid probabilities")
            .p_even
    };

    let truth_dist = parity_probabilities(&scenario_at(case.phi)?)?;
    let m = case.n as f64;
    let bracket = (case.phi - 1.2 / m, case.phi + 1.2 / m);

    let mut estimates = Vec::with_capacity(repetitions as usize);
    for rep in 0..repetitions {
        let rep_seed = seed.wrapping_add(rep.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let counts = sample_outcomes(&truth_dist, shots, rep_seed)?;
        estimates.push(mle_phase(counts, model, bracket)?);
    }

    let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
    let variance = estimates
        .iter()
        .map(|e| (e - mean) * (e - mean))
        .sum::<f64>()
        / (estimates.len() - 1) as f64;

    let fisher = fisher_phase(&scenario_at(case.phi)?, case.phi)?;
    let cr_bound = 1.0 / (shots as f64 * fisher);
    Ok(McResult {
        case: *case,
        shots,
        repetitions,
        variance,
        cr_bound,
        ratio: variance / cr_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_is_equivalent() {
        let summaries =
            oracle_equivalence_grid(3, &[0.0, 0.3], &QuadratureSpec::default()).unwrap();
        assert_eq!(summaries.len(), 8);
        for s in &summaries {
            assert!(
                s.max_deviation <= EQUIVALENCE_TOLERANCE,
                "{:?}/{:?}: {}",
                s.state,
                s.reference,
                s.max_deviation
            );
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(oracle_equivalence_grid(13, &[0.1], &QuadratureSpec::default()).is_err());
        let case = McCase {
            n: 1,
            delta: 0.0,
            phi: std::f64::consts::FRAC_PI_2,
        };
        assert!(mc_crb_check(&case, 100, 200, 1).is_err());
        assert!(mc_crb_check(&case, 100_000, 10, 1).is_err());
    }
}
