//! Quantum and classical correlations of the spin-1/2 Heisenberg dimer.
//!
//! The thermal state of two isotropically coupled spins is fixed by a single
//! number, the spin-spin correlator `G = <σ₁ᶻσ₂ᶻ>`. Everything in this crate is
//! a function of `G` or of the coupling and temperature that produce it:
//!
//! * [`dimer`]: mutual information, classical correlation, discord,
//!   concurrence, entanglement of formation, density matrix.
//! * [`thermo`]: internal energy, specific heat and Bleaney-Bowers
//!   susceptibility, plus their inversions back to `G`.
//! * [`numerics`]: Lambert W, bracketed roots, golden-section maximisation,
//!   trapezoidal integration with a `1/T²` tail, secant uncertainty
//!   propagation and the susceptibility fitter.
//! * [`landmarks`]: the dimensionless reference points of the model.
//!
//! Couplings are `J/k_B` in kelvin for the Hamiltonian `H = -½ J σ⃗₁·σ⃗₂`
//! written with Pauli matrices. Literature fits that quote `2J/k_B` must be
//! halved before use. Negative `J` is antiferromagnetic.
//!
//! The crate is `no_std` and only needs `alloc` for series results.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dimer;
mod error;
pub mod landmarks;
mod math;
pub mod numerics;
mod sample;
pub mod thermo;

pub use dimer::{CorrelationSet, Correlator, Coupling, DensityMatrix4, DimerParameters};
pub use error::{Error, Result, RowError};
pub use sample::Sample;
