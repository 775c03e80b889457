//! Gaussian-smeared rotated-basis measurements on statevectors.
//!
//! Every qubit is read out along the X direction of a reference frame whose
//! orientation angle is Gaussian-distributed with spread Δ. A *common*
//! reference rotates all qubits by the same angle (one shared integral); an
//! *independent* reference draws one angle per qubit, which factorizes into
//! per-qubit smeared POVM effects.

use crate::error::{Error, Result};
use crate::numerics::{
    gaussian_expectation, GaussianKernel, IntegrandHint, QuadratureSpec,
};
use crate::oracle::linalg::{
    apply_single_qubit, mat2_add, mat2_identity, mat2_max_abs, mat2_sub, outer, Mat2, ZERO,
};
use crate::oracle::state::{build_probe_state, ProbeStateKind, ProbeStateSpec};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Scale `c` of the frame rotation `U(θ) = exp(-i c θ σ_Z)`.
///
/// Fixed so that the smeared single-qubit fringe visibility equals
/// `exp(-Δ²)`: averaging the rotated X projector over the Gaussian angle
/// multiplies the coherence by `exp(-2 c² Δ²)`.
pub const BASIS_ROTATION_SCALE: f64 = FRAC_1_SQRT_2;

/// A single-qubit projective measurement direction `a|0> + b|1>` together
/// with its orthogonal complement `b*|0> - a*|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    pub a: Complex64,
    pub b: Complex64,
}

impl MeasurementBasis {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "measurement basis must be normalized, |a|^2 + |b|^2 = {norm}"
            )));
        }
        Ok(Self { a, b })
    }

    /// The two projectors of the basis, summing to the identity.
    pub fn projectors(&self) -> (Mat2, Mat2) {
        let first = outer([self.a, self.b]);
        let second = outer([self.b.conj(), -self.a.conj()]);
        (first, second)
    }
}

/// Projectors onto the X basis rotated by the frame angle `θ`,
/// `U†(θ)|±x>` with `U(θ) = exp(-i c θ σ_Z)`.
///
/// `θ = 0` gives the ideal σ_X eigenprojectors.
pub fn rotated_x_projectors(theta: f64) -> (Mat2, Mat2) {
    rotated_x_basis(theta).projectors()
}

fn rotated_x_basis(theta: f64) -> MeasurementBasis {
    let phase = BASIS_ROTATION_SCALE * theta;
    MeasurementBasis {
        a: Complex64::from_polar(FRAC_1_SQRT_2, phase),
        b: Complex64::from_polar(FRAC_1_SQRT_2, -phase),
    }
}

/// The row matrix of outcome bras for one qubit at frame angle `θ`: row 0 is
/// the `+x`-type outcome, row 1 the `-x`-type outcome. Unitary, so outcome
/// probabilities over all 2^n strings sum to one at every `θ`.
fn outcome_bra_matrix(theta: f64) -> Mat2 {
    let basis = rotated_x_basis(theta);
    [
        [basis.a.conj(), basis.b.conj()],
        [basis.b, -basis.a],
    ]
}

/// Single-qubit POVM elements after Gaussian smearing of the reference angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmearedQubitEffects {
    pub e_plus: Mat2,
    pub e_minus: Mat2,
}

impl SmearedQubitEffects {
    /// Max-entry deviation of `e_plus + e_minus` from the identity.
    pub fn completeness_deviation(&self) -> f64 {
        let sum = mat2_add(&self.e_plus, &self.e_minus);
        mat2_max_abs(&mat2_sub(&sum, &mat2_identity()))
    }

    /// Smallest eigenvalue among both effects (Hermitian 2x2 closed form).
    pub fn min_eigenvalue(&self) -> f64 {
        fn min_eig(m: &Mat2) -> f64 {
            let tr = m[0][0].re + m[1][1].re;
            let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            0.5 * (tr - disc)
        }
        min_eig(&self.e_plus).min(min_eig(&self.e_minus))
    }
}

/// Computes the smeared effects by averaging each projector entry over the
/// Gaussian angle distribution.
pub fn smeared_qubit_effects(
    delta: &GaussianKernel,
    quad: &QuadratureSpec,
) -> Result<SmearedQubitEffects> {
    let hint = IntegrandHint::oscillating(2.0 * BASIS_ROTATION_SCALE);
    let average = |pick: &dyn Fn(f64) -> Complex64| -> Result<Complex64> {
        let re = gaussian_expectation(|theta| pick(theta).re, delta, hint, quad)?;
        let im = gaussian_expectation(|theta| pick(theta).im, delta, hint, quad)?;
        Ok(Complex64::new(re, im))
    };

    let mut e_plus = [[ZERO; 2]; 2];
    let mut e_minus = [[ZERO; 2]; 2];
    for row in 0..2 {
        for col in 0..2 {
            e_plus[row][col] = average(&|theta| rotated_x_projectors(theta).0[row][col])?;
            e_minus[row][col] = average(&|theta| rotated_x_projectors(theta).1[row][col])?;
        }
    }
    Ok(SmearedQubitEffects { e_plus, e_minus })
}

/// The collective readout: probability of even versus odd outcome parity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityDistribution {
    pub p_even: f64,
    pub p_odd: f64,
}

impl ParityDistribution {
    /// Builds from an even-parity probability, with `p_odd = 1 - p_even`.
    pub fn new(p_even: f64) -> Result<Self> {
        Self::from_probabilities(p_even, 1.0 - p_even)
    }

    /// Validates both probabilities and their sum (within 1e-10).
    pub fn from_probabilities(p_even: f64, p_odd: f64) -> Result<Self> {
        for p in [p_even, p_odd] {
            if !p.is_finite() || p < -1e-10 || p > 1.0 + 1e-10 {
                return Err(Error::InvalidProbability { value: p });
            }
        }
        if (p_even + p_odd - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "parity probabilities sum to {}, expected 1",
                p_even + p_odd
            )));
        }
        Ok(Self {
            p_even: p_even.clamp(0.0, 1.0),
            p_odd: p_odd.clamp(0.0, 1.0),
        })
    }

    /// Fringe expectation `p_even - p_odd`.
    pub fn parity_expectation(&self) -> f64 {
        self.p_even - self.p_odd
    }
}

/// How the measurement reference frames of the qubits are tied together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    /// No smearing; ideal X readout.
    Perfect,
    /// One shared Gaussian angle rotates every qubit synchronously.
    Common,
    /// Each qubit gets its own Gaussian angle of the same spread.
    Independent,
}

impl std::fmt::Display for ReferenceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReferenceKind::Perfect => write!(f, "perfect"),
            ReferenceKind::Common => write!(f, "common"),
            ReferenceKind::Independent => write!(f, "independent"),
        }
    }
}

/// Sums of outcome probabilities by string parity at a fixed frame angle.
fn parity_split_at_angle(state: &[Complex64], n: usize, theta: f64) -> (f64, f64) {
    let mut work = state.to_vec();
    let bra = outcome_bra_matrix(theta);
    for qubit in 1..=n {
        apply_single_qubit(&mut work, n, qubit, &bra);
    }
    let mut even = 0.0;
    let mut odd = 0.0;
    for (outcome, amp) in work.iter().enumerate() {
        let p = amp.norm_sqr();
        if outcome.count_ones() % 2 == 0 {
            even += p;
        } else {
            odd += p;
        }
    }
    (even, odd)
}

/// Parity distribution of an arbitrary statevector under the chosen
/// reference, enumerating all 2^n outcome strings.
pub fn smeared_parity_from_state(
    state: &[Complex64],
    reference: ReferenceKind,
    delta: Option<&GaussianKernel>,
    quad: &QuadratureSpec,
) -> Result<ParityDistribution> {
    let dim = state.len();
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(
            "statevector length must be a power of two".into(),
        ));
    }
    let n = dim.trailing_zeros() as usize;

    let delta = match (reference, delta) {
        (ReferenceKind::Perfect, _) | (_, None) => {
            let (even, odd) = parity_split_at_angle(state, n, 0.0);
            return ParityDistribution::from_probabilities(even, odd);
        }
        (_, Some(kernel)) => kernel,
    };

    match reference {
        ReferenceKind::Perfect => unreachable!("handled above"),
        ReferenceKind::Common => {
            // The fringe oscillates in θ at up to 2 c n.
            let hint =
                IntegrandHint::oscillating(2.0 * BASIS_ROTATION_SCALE * n as f64);
            let even = gaussian_expectation(
                |theta| parity_split_at_angle(state, n, theta).0,
                delta,
                hint,
                quad,
            )?;
            let odd = gaussian_expectation(
                |theta| parity_split_at_angle(state, n, theta).1,
                delta,
                hint,
                quad,
            )?;
            ParityDistribution::from_probabilities(even, odd)
        }
        ReferenceKind::Independent => {
            let effects = smeared_qubit_effects(delta, quad)?;
            let mut even = 0.0;
            let mut odd = 0.0;
            let mut work = vec![ZERO; dim];
            for outcome in 0..dim {
                work.copy_from_slice(state);
                for qubit in 1..=n {
                    let eff = if (outcome >> (n - qubit)) & 1 == 0 {
                        &effects.e_plus
                    } else {
                        &effects.e_minus
                    };
                    apply_single_qubit(&mut work, n, qubit, eff);
                }
                let p: f64 = state
                    .iter()
                    .zip(&work)
                    .map(|(a, w)| (a.conj() * w).re)
                    .sum();
                if outcome.count_ones() % 2 == 0 {
                    even += p;
                } else {
                    odd += p;
                }
            }
            ParityDistribution::from_probabilities(even, odd)
        }
    }
}

/// Parity distribution of a probe state under a coarsened reference.
///
/// Product probes are read out qubit by qubit (the qubits are unentangled and
/// identical), so their distribution is the single-qubit one; entangled
/// probes aggregate the parity of the full outcome string.
pub fn smeared_parity_distribution(
    spec: &ProbeStateSpec,
    reference: ReferenceKind,
    delta: Option<&GaussianKernel>,
    quad: &QuadratureSpec,
) -> Result<ParityDistribution> {
    let state = match spec.kind {
        ProbeStateKind::Product => {
            let per_qubit = ProbeStateSpec::new(ProbeStateKind::Product, 1, spec.phase)?;
            if spec.n > crate::oracle::state::STATEVECTOR_QUBIT_CAP {
                return Err(Error::QubitCap {
                    n: spec.n,
                    cap: crate::oracle::state::STATEVECTOR_QUBIT_CAP,
                });
            }
            build_probe_state(&per_qubit)?
        }
        _ => build_probe_state(spec)?,
    };
    smeared_parity_from_state(&state, reference, delta, quad)
}
