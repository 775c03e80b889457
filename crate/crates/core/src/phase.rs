//! Closed-form phase estimation under coarsened reference bases: fringe
//! visibilities, parity probabilities, Fisher information, resolutions, and
//! the optimal probe number.

use crate::error::{Error, Result};
use crate::numerics::{integer_argmax, IntegerArgmax};
use crate::oracle::{ParityDistribution, ProbeStateKind, ProbeStateSpec, ReferenceKind};

/// One phase-estimation configuration: probe state, reference coarsening
/// spread `delta`, and number of repetitions `experiments`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseScenario {
    pub state: ProbeStateSpec,
    pub reference: ReferenceKind,
    pub delta: f64,
    pub experiments: u64,
}

impl PhaseScenario {
    pub fn new(
        state: ProbeStateSpec,
        reference: ReferenceKind,
        delta: f64,
        experiments: u64,
    ) -> Result<Self> {
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "coarsening spread must be finite and >= 0, got {delta}"
            )));
        }
        if experiments < 1 {
            return Err(Error::InvalidArgument(
                "experiment count must be at least 1".into(),
            ));
        }
        Ok(Self {
            state,
            reference,
            delta,
            experiments,
        })
    }
}

/// The factor multiplying `cos(n φ)` in the parity fringe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Visibility(f64);

impl Visibility {
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Fringe visibility of a scenario.
///
/// Perfect references give 1 for every state. With spread Δ:
/// entangled probes lose `exp(-n²Δ²)` under a common reference and
/// `exp(-nΔ²)` under independent ones; product probes lose `exp(-Δ²)` per
/// qubit; the alternating state is immune to common coarsening for even `n`
/// and degrades like a single qubit for odd `n`.
pub fn visibility(scenario: &PhaseScenario) -> Result<Visibility> {
    let n = scenario.state.n as f64;
    let d2 = scenario.delta * scenario.delta;
    let value = match (scenario.state.kind, scenario.reference) {
        (_, ReferenceKind::Perfect) => 1.0,
        (ProbeStateKind::Ghz, ReferenceKind::Common) => (-n * n * d2).exp(),
        (ProbeStateKind::Ghz, ReferenceKind::Independent) => (-n * d2).exp(),
        (ProbeStateKind::Product, _) => (-d2).exp(),
        (ProbeStateKind::Alternating, ReferenceKind::Common) => {
            if scenario.state.n % 2 == 0 {
                1.0
            } else {
                (-d2).exp()
            }
        }
        (ProbeStateKind::Alternating, ReferenceKind::Independent) => {
            return Err(Error::Unsupported(
                "alternating probe under independent references".into(),
            ));
        }
    };
    Ok(Visibility(value))
}

/// The phase multiplier of the fringe: `n` for collectively encoded probes,
/// 1 for the per-qubit product readout.
fn fringe_multiplier(scenario: &PhaseScenario) -> f64 {
    match scenario.state.kind {
        ProbeStateKind::Product => 1.0,
        _ => scenario.state.n as f64,
    }
}

/// Parity probabilities `p_even = (1 + V cos(m φ))/2` with `m` the fringe
/// multiplier. Product probes are per-qubit distributions (`m = 1`).
pub fn parity_probabilities(scenario: &PhaseScenario) -> Result<ParityDistribution> {
    let vis = visibility(scenario)?.value();
    let m = fringe_multiplier(scenario);
    let p_even = 0.5 * (1.0 + vis * (m * scenario.state.phase).cos());
    ParityDistribution::new(p_even)
}

/// Fisher information about the encoded phase at `phi`.
///
/// Entangled probes: `n² sin²(nφ) V² / (1 - cos²(nφ) V²)`. Product probes
/// accumulate `n` independent single-qubit contributions:
/// `n sin²(φ) V² / (1 - cos²(φ) V²)`.
///
/// The expression is 0/0 at a fringe extremum with unit visibility (the
/// outcome is deterministic there); that point takes the degenerate value 0,
/// matching [`crate::numerics::fisher_from_slope`] at `p ∈ {0, 1}`, `p' = 0`.
pub fn fisher_phase(scenario: &PhaseScenario, phi: f64) -> Result<f64> {
    let vis = visibility(scenario)?.value();
    let n = scenario.state.n as f64;
    let (prefactor, angle) = match scenario.state.kind {
        ProbeStateKind::Product => (n, phi),
        _ => (n * n, n * phi),
    };
    let v2 = vis * vis;
    let denominator = 1.0 - angle.cos().powi(2) * v2;
    if denominator == 0.0 {
        return Ok(0.0);
    }
    Ok(prefactor * angle.sin().powi(2) * v2 / denominator)
}

/// Phase choice for [`resolution_phase`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhasePoint {
    At(f64),
    /// The optimal operating point `m φ = π/2`.
    Optimal,
}

/// Phase resolution `δφ = 1/sqrt(N F)`; zero information yields the
/// infinite-uncertainty sentinel rather than an error.
pub fn resolution_phase(scenario: &PhaseScenario, phi: PhasePoint) -> Result<f64> {
    let phi = match phi {
        PhasePoint::At(value) => value,
        PhasePoint::Optimal => std::f64::consts::FRAC_PI_2 / fringe_multiplier(scenario),
    };
    let fisher = fisher_phase(scenario, phi)?;
    let total = scenario.experiments as f64 * fisher;
    if total <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(1.0 / total.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalParticles {
    /// Integer argmax of the Fisher information at the optimal phase.
    pub n: u32,
    /// The continuous stationary point: `1/(√2 Δ)` for common references,
    /// `1/Δ²` for independent ones.
    pub continuous: f64,
    /// Set when the integer optimum sits at the scan cap.
    pub at_cap: bool,
}

/// Optimal number of entangled probe particles for a given coarsening
/// spread, by exhaustive scan of `n² V(n)²` up to `n_max`.
pub fn optimal_particles(
    reference: ReferenceKind,
    delta: f64,
    n_max: u32,
) -> Result<OptimalParticles> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Divergence(format!(
            "the optimal probe number diverges as delta -> 0 (got delta = {delta})"
        )));
    }
    let d2 = delta * delta;
    let (objective, continuous): (Box<dyn Fn(u32) -> f64>, f64) = match reference {
        ReferenceKind::Common => (
            Box::new(move |n: u32| {
                let n = n as f64;
                n * n * (-2.0 * n * n * d2).exp()
            }),
            1.0 / (std::f64::consts::SQRT_2 * delta),
        ),
        ReferenceKind::Independent => (
            Box::new(move |n: u32| {
                let n = n as f64;
                n * n * (-2.0 * n * d2).exp()
            }),
            1.0 / d2,
        ),
        ReferenceKind::Perfect => {
            return Err(Error::Divergence(
                "a perfect reference has no finite optimal probe number".into(),
            ));
        }
    };
    let IntegerArgmax { n, at_cap, .. } = integer_argmax(objective, n_max)?;
    Ok(OptimalParticles {
        n,
        continuous,
        at_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn scenario(
        kind: ProbeStateKind,
        n: usize,
        phase: f64,
        reference: ReferenceKind,
        delta: f64,
    ) -> PhaseScenario {
        PhaseScenario::new(
            ProbeStateSpec::new(kind, n, phase).unwrap(),
            reference,
            delta,
            1,
        )
        .unwrap()
    }

    #[test]
    fn visibility_table() {
        let cases = [
            (
                scenario(ProbeStateKind::Ghz, 2, 0.0, ReferenceKind::Common, 0.3),
                (-0.36f64).exp(),
            ),
            (
                scenario(ProbeStateKind::Alternating, 4, 0.0, ReferenceKind::Common, 0.5),
                1.0,
            ),
            (
                scenario(ProbeStateKind::Ghz, 10, 0.0, ReferenceKind::Independent, 0.1),
                (-0.1f64).exp(),
            ),
            (
                scenario(ProbeStateKind::Product, 6, 0.0, ReferenceKind::Common, 0.2),
                (-0.04f64).exp(),
            ),
            (
                scenario(ProbeStateKind::Alternating, 5, 0.0, ReferenceKind::Common, 0.4),
                (-0.16f64).exp(),
            ),
            (
                scenario(ProbeStateKind::Ghz, 7, 0.0, ReferenceKind::Perfect, 0.9),
                1.0,
            ),
        ];
        for (s, expected) in cases {
            let v = visibility(&s).unwrap().value();
            assert!((v - expected).abs() < 1e-15, "{s:?}: {v} vs {expected}");
        }
    }

    #[test]
    fn alternating_even_odd_dichotomy() {
        for n in [2usize, 3, 4, 5, 6, 7, 8] {
            let s = scenario(ProbeStateKind::Alternating, n, 0.0, ReferenceKind::Common, 0.35);
            let v = visibility(&s).unwrap().value();
            if n % 2 == 0 {
                assert_eq!(v, 1.0, "n={n}");
            } else {
                assert!((v - (-0.35f64 * 0.35).exp()).abs() < 1e-15, "n={n}");
            }
        }
    }

    #[test]
    fn alternating_independent_is_unsupported() {
        let s = scenario(ProbeStateKind::Alternating, 4, 0.0, ReferenceKind::Independent, 0.1);
        assert!(matches!(visibility(&s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn parity_probability_examples() {
        // Dark fringe for a perfect GHZ probe at n phi = pi.
        let dark = scenario(ProbeStateKind::Ghz, 4, PI / 4.0, ReferenceKind::Perfect, 0.0);
        assert!(parity_probabilities(&dark).unwrap().p_even < 1e-12);

        let common = scenario(ProbeStateKind::Ghz, 2, 0.0, ReferenceKind::Common, 0.3);
        let expected = 0.5 * (1.0 + (-0.36f64).exp());
        assert!((parity_probabilities(&common).unwrap().p_even - expected).abs() < 1e-15);

        // Per-qubit product readout at the fringe midpoint.
        let product = scenario(ProbeStateKind::Product, 5, FRAC_PI_2, ReferenceKind::Common, 0.2);
        assert!((parity_probabilities(&product).unwrap().p_even - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fisher_examples() {
        let perfect = scenario(ProbeStateKind::Ghz, 5, 0.0, ReferenceKind::Perfect, 0.0);
        let f = fisher_phase(&perfect, FRAC_PI_2 / 5.0).unwrap();
        assert!((f - 25.0).abs() < 1e-9);

        let single = scenario(ProbeStateKind::Ghz, 1, 0.0, ReferenceKind::Common, 0.3);
        let f = fisher_phase(&single, FRAC_PI_2).unwrap();
        assert!((f - (-0.18f64).exp()).abs() < 1e-12);

        let pair = scenario(ProbeStateKind::Ghz, 2, 0.0, ReferenceKind::Common, 0.2);
        let f = fisher_phase(&pair, PI / 4.0).unwrap();
        assert!((f - 4.0 * (-0.32f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn fisher_agrees_with_finite_differences() {
        use crate::numerics::{default_fisher_step, fisher_two_outcome};
        for (kind, n, delta, reference) in [
            (ProbeStateKind::Ghz, 3, 0.2, ReferenceKind::Common),
            (ProbeStateKind::Ghz, 5, 0.1, ReferenceKind::Independent),
            (ProbeStateKind::Product, 4, 0.3, ReferenceKind::Common),
            (ProbeStateKind::Alternating, 6, 0.5, ReferenceKind::Common),
        ] {
            for frac in [0.15, 0.4, 0.75] {
                let m = if kind == ProbeStateKind::Product { 1.0 } else { n as f64 };
                let phi = frac * PI / m;
                let s = scenario(kind, n, phi, reference, delta);
                let closed = fisher_phase(&s, phi).unwrap();
                let fd = fisher_two_outcome(
                    |x| {
                        let sx = scenario(kind, n, x, reference, delta);
                        parity_probabilities(&sx).unwrap().p_even
                    },
                    phi,
                    default_fisher_step(phi),
                )
                .unwrap();
                // Product readout: n independent qubits add.
                let fd = if kind == ProbeStateKind::Product { n as f64 * fd } else { fd };
                assert!(
                    (fd - closed).abs() <= 1e-6 * closed.abs().max(1e-9),
                    "{kind:?} n={n} phi={phi}: fd {fd} vs closed {closed}"
                );
            }
        }
    }

    #[test]
    fn resolution_examples() {
        // Alternating probe recovers the Heisenberg limit for even n.
        let alt = scenario(ProbeStateKind::Alternating, 6, 0.0, ReferenceKind::Common, 0.7);
        let alt = PhaseScenario { experiments: 50, ..alt };
        let res = resolution_phase(&alt, PhasePoint::Optimal).unwrap();
        assert!((res - 1.0 / (50.0f64 * 36.0).sqrt()).abs() < 1e-12);

        // Product probe at delta = 0 sits at the standard quantum limit.
        let prod = scenario(ProbeStateKind::Product, 9, 0.0, ReferenceKind::Common, 0.0);
        let res = resolution_phase(&prod, PhasePoint::Optimal).unwrap();
        assert!((res - 1.0 / 3.0).abs() < 1e-12);

        // Entangled probe at the optimal particle number: sqrt(2 delta^2 e / N).
        let delta = 0.1f64;
        let n_opt = (1.0 / (std::f64::consts::SQRT_2 * delta)).round() as usize;
        let ghz = scenario(ProbeStateKind::Ghz, n_opt, 0.0, ReferenceKind::Common, delta);
        let res = resolution_phase(&ghz, PhasePoint::Optimal).unwrap();
        let continuum = (2.0 * delta * delta * std::f64::consts::E).sqrt();
        assert!(
            (res - continuum).abs() / continuum < 0.02,
            "{res} vs {continuum}"
        );
    }

    #[test]
    fn resolution_consistency_with_fisher() {
        for (kind, n, delta, reference, phi) in [
            (ProbeStateKind::Ghz, 4, 0.15, ReferenceKind::Common, 0.3),
            (ProbeStateKind::Product, 7, 0.25, ReferenceKind::Independent, 1.1),
            (ProbeStateKind::Alternating, 3, 0.4, ReferenceKind::Common, 0.5),
        ] {
            let s = PhaseScenario {
                experiments: 123,
                ..scenario(kind, n, phi, reference, delta)
            };
            let f = fisher_phase(&s, phi).unwrap();
            let res = resolution_phase(&s, PhasePoint::At(phi)).unwrap();
            assert!((res * res * 123.0 * f - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_information_yields_infinite_uncertainty() {
        // At the fringe extremum with reduced visibility the slope vanishes.
        let s = scenario(ProbeStateKind::Ghz, 3, 0.0, ReferenceKind::Common, 0.3);
        assert_eq!(fisher_phase(&s, 0.0).unwrap(), 0.0);
        let res = resolution_phase(&s, PhasePoint::At(0.0)).unwrap();
        assert!(res.is_infinite());
    }

    #[test]
    fn optimal_particle_numbers() {
        let common = optimal_particles(ReferenceKind::Common, 0.1, 1000).unwrap();
        assert_eq!(common.n, 7);
        assert!((common.continuous - 7.0710678118654755).abs() < 1e-12);
        assert!(!common.at_cap);

        let independent = optimal_particles(ReferenceKind::Independent, 0.1, 1000).unwrap();
        assert_eq!(independent.n, 100);
        assert!((independent.continuous - 100.0).abs() < 1e-9);

        let coarse = optimal_particles(ReferenceKind::Common, 1.0, 1000).unwrap();
        assert_eq!(coarse.n, 1);

        assert!(matches!(
            optimal_particles(ReferenceKind::Common, 0.0, 1000),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn fisher_decays_exponentially_in_probe_number() {
        let delta = 0.1f64;
        let threshold = 1.0 / (std::f64::consts::SQRT_2 * delta);
        let mut previous = f64::INFINITY;
        for n in 8..=64usize {
            let s = scenario(ProbeStateKind::Ghz, n, 0.0, ReferenceKind::Common, delta);
            let f = fisher_phase(&s, FRAC_PI_2 / n as f64).unwrap();
            let n_f = n as f64;
            let normalized = f * (2.0 * n_f * n_f * delta * delta).exp() / (n_f * n_f);
            assert!((normalized - 1.0).abs() < 1e-12, "n={n}: {normalized}");
            if n as f64 > threshold {
                assert!(f < previous, "n={n}");
            }
            previous = f;
        }
    }

    #[test]
    fn entangled_probe_loses_to_product_probe_at_large_n() {
        for delta in [0.05, 0.1, 0.3] {
            let mut crossover = None;
            for n in 1..=200usize {
                let ghz = scenario(ProbeStateKind::Ghz, n, 0.0, ReferenceKind::Common, delta);
                let prod = scenario(ProbeStateKind::Product, n, 0.0, ReferenceKind::Common, delta);
                let f_ghz = fisher_phase(&ghz, FRAC_PI_2 / n as f64).unwrap();
                let f_prod = fisher_phase(&prod, FRAC_PI_2).unwrap();
                if f_ghz < f_prod {
                    crossover.get_or_insert(n);
                } else {
                    assert!(crossover.is_none(), "ordering flipped back at n={n}");
                }
            }
            let n_c = crossover.expect("crossover must exist");
            assert!(n_c > 1, "delta={delta}");
        }
    }
}
