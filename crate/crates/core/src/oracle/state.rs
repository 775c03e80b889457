//! Probe-state construction for the statevector oracle.

use crate::error::{Error, Result};
use crate::oracle::linalg::ZERO;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Largest qubit count the brute-force oracle accepts (statevector cost 2^n).
pub const STATEVECTOR_QUBIT_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeStateKind {
    /// `(|0…0> + e^{i n φ} |1…1>)/√2`
    Ghz,
    /// `((|0> + e^{i φ} |1>)/√2)^{⊗n}`
    Product,
    /// `(|0101…> + e^{i n φ} |1010…>)/√2`
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeStateSpec {
    pub kind: ProbeStateKind,
    pub n: usize,
    pub phase: f64,
}

impl ProbeStateSpec {
    pub fn new(kind: ProbeStateKind, n: usize, phase: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(
                "probe state needs at least one qubit".into(),
            ));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "probe phase must be finite, got {phase}"
            )));
        }
        Ok(Self { kind, n, phase })
    }
}

/// Index of the bit string `0101…` (qubit 1 = 0) in big-endian ordering.
fn alternating_index(n: usize) -> usize {
    let mut idx = 0usize;
    for qubit in 1..=n {
        if qubit % 2 == 0 {
            idx |= 1 << (n - qubit);
        }
    }
    idx
}

/// Builds the amplitude vector (length 2^n) for a probe state.
///
/// Basis ordering is big-endian: qubit 1 is the most significant bit of the
/// amplitude index.
pub fn build_probe_state(spec: &ProbeStateSpec) -> Result<Vec<Complex64>> {
    if spec.n > STATEVECTOR_QUBIT_CAP {
        return Err(Error::QubitCap {
            n: spec.n,
            cap: STATEVECTOR_QUBIT_CAP,
        });
    }
    let dim = 1usize << spec.n;
    let mut amps = vec![ZERO; dim];
    match spec.kind {
        ProbeStateKind::Ghz => {
            let collective = Complex64::from_polar(FRAC_1_SQRT_2, spec.n as f64 * spec.phase);
            amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
            amps[dim - 1] = collective;
        }
        ProbeStateKind::Product => {
            let single = FRAC_1_SQRT_2.powi(spec.n as i32);
            for (idx, amp) in amps.iter_mut().enumerate() {
                let excited = idx.count_ones() as f64;
                *amp = Complex64::from_polar(single, excited * spec.phase);
            }
        }
        ProbeStateKind::Alternating => {
            let lead = alternating_index(spec.n);
            let partner = !lead & (dim - 1);
            amps[lead] = Complex64::new(FRAC_1_SQRT_2, 0.0);
            amps[partner] = Complex64::from_polar(FRAC_1_SQRT_2, spec.n as f64 * spec.phase);
        }
    }
    debug_assert!({
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        (norm - 1.0).abs() < 1e-12
    });
    Ok(amps)
}
