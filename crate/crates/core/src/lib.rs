//! Comparison of binary statistical experiments.
//!
//! An experiment is a pair of strictly positive probability mass functions
//! over a common finite outcome set, one per state of the world. This crate
//! decides how two experiments compare:
//!
//! - in the **Blackwell order** (every decision maker prefers one of them),
//!   tested exactly via first-order stochastic dominance of perfected
//!   log-likelihood ratios, cross-checked against mean-preserving-spread
//!   comparison of posterior-belief distributions;
//! - in the **Rényi order** (one has larger Rényi divergences in both states
//!   at every order t > 0), tested on a dense grid;
//! - in **large samples** (n-fold repetitions eventually Blackwell-ranked),
//!   with both a brute-force dominance vector and the explicit sample-size
//!   bound n₀ = ⌈8b²/η³⌉ from large-deviations estimates.
//!
//! Supporting machinery: cumulant generating functions and their Fenchel
//! conjugates, Chernoff and lower tail bounds with an exact convolution
//! oracle, catalyst experiments, additive-divergence evaluation, and the
//! majorization / multi-state appendix tools.
//!
//! The crate is `no_std` (requires `alloc`); all transcendental math is
//! routed through `libm`. IO, file formats and the command-line interface
//! live in the companion `blackwell-cli` crate.
#![no_std]
#![deny(unsafe_code)]
// validations use `!(x > y)` on purpose: the negation rejects NaN inputs
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod blackwell;
pub mod distribution;
pub mod divergence;
pub mod error;
pub mod experiment;
pub mod large_deviations;
pub mod large_sample;
pub mod majorization;
mod math;
pub mod multistate;
pub mod renyi;
pub mod uniform_linear;

pub use blackwell::{blackwell_dominates, BlackwellVerdict, CompareMode};
pub use distribution::AtomicDistribution;
pub use error::{Error, Result};
pub use experiment::{FiniteExperiment, Garbling, PosteriorDistribution, State};
pub use large_sample::{dominance_vector, large_sample_verdict, LargeSampleVerdict};
pub use renyi::{renyi_divergence, renyi_order_check, RenyiOrderVerdict, RenyiProfile};

/// Default absolute tolerance for order comparisons and identities.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default upper end of the Rényi parameter grid.
pub const DEFAULT_T_MAX: f64 = 64.0;

/// Default number of grid points on `[1/2, T_MAX]`.
pub const DEFAULT_GRID_POINTS: usize = 512;

/// Default cap on outcome-space size for explicit product experiments.
pub const DEFAULT_PRODUCT_CAP: u128 = 1_000_000;

/// Default cap on the number of multinomial count vectors enumerated by a
/// convolution power.
pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

/// Relative tolerance under which two atom values are merged.
pub const MERGE_REL_TOL: f64 = 1e-9;

/// Absolute tolerance for probability rows summing to one.
pub const ROW_SUM_TOL: f64 = 1e-12;

pub(crate) fn values_close(a: f64, b: f64) -> bool {
    let scale = 1.0_f64.max(math::abs(a)).max(math::abs(b));
    math::abs(a - b) <= MERGE_REL_TOL * scale
}
