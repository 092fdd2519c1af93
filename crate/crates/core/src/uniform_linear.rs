//! The continuous experiment on the unit interval with densities f₀(s) = 1 and
//! f₁(s) = 1/2 + s: closed-form Rényi divergences and an exact-bin
//! discretizer.
//!
//! Both state densities are polynomials, so every Rényi divergence has a
//! closed form, and bin masses on a uniform grid integrate exactly —
//! no quadrature enters anywhere.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::experiment::{FiniteExperiment, State};
use crate::renyi::RenyiProfile;
use crate::{math, DEFAULT_TOL};

const LN_3_2: f64 = 0.405_465_108_108_164_4; // ln(3/2)
const LN_2: f64 = core::f64::consts::LN_2;

/// R^θ(∞): the essential maximum of log(f_θ/f_{1−θ}).
pub fn max_llr(theta: State) -> f64 {
    match theta {
        // sup log(f1/f0) = log(3/2) at s = 1
        State::One => LN_3_2,
        // sup log(f0/f1) = log 2 at s = 0
        State::Zero => LN_2,
    }
}

/// KL divergences: the t = 1 limits of the closed forms.
pub fn kl(theta: State) -> f64 {
    match theta {
        // ∫ x·ln x dx over [1/2, 3/2]
        State::One => 9.0 / 8.0 * LN_3_2 + LN_2 / 8.0 - 0.5,
        // −∫ ln x dx over [1/2, 3/2]
        State::Zero => 1.0 - 1.5 * LN_3_2 - 0.5 * LN_2,
    }
}

/// ((3/2)^u − (1/2)^u)/u, with a series fallback near the removable
/// singularity at u = 0 (limit ln 3).
fn power_difference_quotient(u: f64) -> f64 {
    if math::abs(u) < 1e-6 {
        let l32 = LN_3_2;
        let l12 = -LN_2;
        let c1 = l32 - l12; // = ln 3
        let c2 = (l32 * l32 - l12 * l12) / 2.0;
        let c3 = (l32 * l32 * l32 - l12 * l12 * l12) / 6.0;
        return c1 + u * c2 + u * u * c3;
    }
    (math::powf(1.5, u) - math::powf(0.5, u)) / u
}

/// The closed-form Rényi divergence R^θ(t) of the experiment.
///
/// R⁰(t) = (1/(t−1))·ln(((3/2)^{2−t} − (1/2)^{2−t})/(2−t)), with the
/// removable singularity at t = 2 evaluating to ln(ln 3);
/// R¹(t) = (1/(t−1))·ln(((3/2)^{t+1} − (1/2)^{t+1})/(t+1)).
pub fn renyi(theta: State, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::DomainError(String::from(
            "Renyi order parameter must be positive",
        )));
    }
    if t.is_infinite() {
        return Ok(max_llr(theta));
    }
    if math::abs(t - 1.0) < 1e-8 {
        return Ok(kl(theta));
    }
    let inner = match theta {
        State::Zero => power_difference_quotient(2.0 - t),
        State::One => power_difference_quotient(t + 1.0),
    };
    Ok(math::ln(inner) / (t - 1.0))
}

/// Closed-form profile on the standard grid.
pub fn profile(theta: State, t_max: f64, points: usize) -> Result<RenyiProfile> {
    RenyiProfile::from_fn(theta, t_max, points, max_llr(theta), |t| renyi(theta, t))
}

/// Discretizes to `n_bins` equal bins with exact bin masses:
/// under state 0 each bin has mass 1/n; under state 1 the i-th bin has
/// mass (1/n)·(1/2 + (2i+1)/(2n)).
pub fn discretize(n_bins: usize) -> Result<FiniteExperiment> {
    if n_bins == 0 {
        return Err(Error::DomainError(String::from("need at least one bin")));
    }
    let n = n_bins as f64;
    let outcomes: Vec<String> = (0..n_bins).map(|i| alloc::format!("bin{i}")).collect();
    let p0 = alloc::vec![1.0 / n; n_bins];
    let p1: Vec<f64> = (0..n_bins)
        .map(|i| (0.5 + (2.0 * i as f64 + 1.0) / (2.0 * n)) / n)
        .collect();
    FiniteExperiment::new(outcomes, p0, p1)
}

/// The two-outcome threshold garbling of an even discretization: bins in
/// [0, 1/2) map to the low outcome, bins in [1/2, 1] to the high one.
pub fn threshold_garbling(n_bins: usize) -> Result<crate::experiment::Garbling> {
    if n_bins == 0 || !n_bins.is_multiple_of(2) {
        return Err(Error::DomainError(String::from(
            "threshold garbling needs an even number of bins",
        )));
    }
    let rows = (0..n_bins)
        .map(|i| {
            if i < n_bins / 2 {
                alloc::vec![1.0, 0.0]
            } else {
                alloc::vec![0.0, 1.0]
            }
        })
        .collect();
    crate::experiment::Garbling::new(rows)
}

/// Discretization error guard: the profile of a fine discretization must
/// approach the closed form from below (garbling can only lose divergence).
pub fn discretization_gap(theta: State, t: f64, n_bins: usize) -> Result<f64> {
    let fine = discretize(n_bins)?;
    let closed = renyi(theta, t)?;
    let discrete = crate::renyi::experiment_renyi(&fine, theta, t)?;
    if discrete > closed + DEFAULT_TOL {
        return Err(Error::VerificationFailed(alloc::format!(
            "discretized divergence {discrete} exceeds closed form {closed}"
        )));
    }
    Ok(closed - discrete)
}
