//! Numerical toolkit for EPR steering of entangled cat states.
//!
//! Two realisations of a spin entangled with a larger "cat" system are
//! modelled:
//!
//! * a coherent-state cat, `(e^{-iπ/4}|α⟩|↑⟩ + e^{iπ/4}|−α⟩|↓⟩)/√2`, handled in
//!   closed form by [`analytic_cat`] and from first principles in a truncated
//!   number basis by [`fock_oracle`];
//! * an N-qubit GHZ state split into one spin and N−1 "cat" spins, handled by
//!   dense state-vector simulation in [`ghz_sim`].
//!
//! [`steering`] holds the witness arithmetic shared by both, [`coarse_grain`]
//! smears Bob's conditional distributions by a resolution δ, and
//! [`mc_sampler`] runs finite-shot simulated experiments.
//!
//! Quadrature convention throughout: `X = (a† + a)/√2`, `P = i(a − a†)/√2`,
//! so `[X, P] = i` and `ΔX·ΔP ≥ 1/2`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic_cat;
pub mod coarse_grain;
mod error;
pub mod export;
pub mod figures;
pub mod fock_oracle;
pub mod ghz_sim;
pub mod grid;
pub mod mc_sampler;
pub mod steering;
mod types;

pub use error::{Error, Result};
pub use types::{Axis, Basis, MomentSummary, Outcome};
