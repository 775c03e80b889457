//! Brute-force statevector oracle for up to 12 qubits.
//!
//! Builds probe states, applies Gaussian-smeared rotated-basis measurements
//! (common and independent coarsening), samples outcomes, and runs a
//! maximum-likelihood estimator. Serves as the independent ground truth for
//! the closed-form phase model.

mod dephasing;
pub mod linalg;
mod measure;
mod sample;
mod state;

pub use dephasing::apply_dephasing;
pub use linalg::{apply_single_qubit, permute_qubits, Mat2};
pub use measure::{
    rotated_x_projectors, smeared_parity_distribution, smeared_parity_from_state,
    smeared_qubit_effects, MeasurementBasis, ParityDistribution, ReferenceKind,
    SmearedQubitEffects, BASIS_ROTATION_SCALE,
};
pub use sample::{mle_phase, sample_outcomes};
pub use state::{build_probe_state, ProbeStateKind, ProbeStateSpec, STATEVECTOR_QUBIT_CAP};
