// `!(x > 0.0)`-style guards are deliberate: they reject NaN where `x <= 0.0`
// would let it through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Precision limits of qubit phase and frequency estimation when the
//! measurement reference is Gaussian-coarsened.
//!
//! Two imperfections are modeled. A *coarsened reference basis* rotates the
//! readout direction by a Gaussian-distributed angle of spread Δ, either
//! synchronously for all qubits (common reference) or independently per
//! qubit. A *coarsened reference time* draws the Ramsey interrogation time
//! from a Gaussian of spread δ around the intended point, truncated to
//! non-negative times.
//!
//! The crate provides:
//!
//! - [`numerics`]: adaptive quadrature for the Gaussian-weighted averages,
//!   bracketing root finding, integer argmax, and two-outcome Fisher
//!   information;
//! - [`oracle`]: a brute-force statevector simulation (n ≤ 12) of the
//!   smeared measurements, plus outcome sampling and maximum-likelihood
//!   phase estimation;
//! - [`phase`]: the closed-form visibilities, parity probabilities, Fisher
//!   information, resolutions, and optimal probe numbers;
//! - [`frequency`]: Ramsey frequency variance under Markovian and
//!   non-Markovian dephasing with a jittered interrogation time;
//! - [`verify`]: the oracle-equivalence grid and the Monte-Carlo
//!   Cramér–Rao check.

pub mod error;
pub mod frequency;
pub mod numerics;
pub mod oracle;
pub mod phase;
pub mod verify;

pub use error::{Error, Result};
