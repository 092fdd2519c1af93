//! Cumulant generating functions, Fenchel conjugates (rate functions),
//! the Chernoff / lower-bound sandwich, and the explicit sample-size bound
//! n₀ = ⌈8b²/η³⌉ certified from rate-function inequalities.

use alloc::string::String;
use alloc::vec::Vec;

use crate::distribution::AtomicDistribution;
use crate::error::{Error, Result};
use crate::experiment::{is_generic_pair, FiniteExperiment, State};
use crate::renyi::{renyi_order_check, RenyiOrderVerdict};
use crate::{math, DEFAULT_GRID_POINTS, DEFAULT_TOL, DEFAULT_T_MAX};

/// Bisection bracket for solving K′(t) = a. K′ saturates exponentially
/// near the support endpoints, so a wide fixed bracket plus plain bisection
/// is more robust than Newton.
const T_BRACKET: f64 = 1e4;

const BISECT_ITERS: usize = 200;

/// K_X(t) = log E[e^{tX}], computed with a max-shift for stability.
pub fn cgf(x: &AtomicDistribution, t: f64) -> f64 {
    let terms: Vec<f64> = x
        .atoms()
        .iter()
        .map(|a| t * a.value + math::ln(a.prob))
        .collect();
    math::log_sum_exp(&terms)
}

/// K′_X(t) = E[X e^{tX}] / E[e^{tX}], strictly increasing in t.
pub fn cgf_derivative(x: &AtomicDistribution, t: f64) -> f64 {
    let shift = x
        .atoms()
        .iter()
        .map(|a| t * a.value + math::ln(a.prob))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut num = 0.0;
    let mut den = 0.0;
    for a in x.atoms() {
        let w = math::exp(t * a.value + math::ln(a.prob) - shift);
        num += a.value * w;
        den += w;
    }
    num / den
}

/// Fenchel conjugate K*_X(a) = sup_t (t·a − K_X(t)): the large-deviation
/// rate function. At the support endpoints the supremum degenerates to
/// −log of the endpoint mass; inside, the unique maximizer solves
/// K′_X(t) = a and is found by bisection.
pub fn fenchel(x: &AtomicDistribution, a: f64) -> Result<f64> {
    let (lo, hi) = (x.min_value(), x.max_value());
    let scale = 1.0_f64.max(math::abs(lo)).max(math::abs(hi));
    let edge = 1e-12 * scale;
    if a < lo - edge || a > hi + edge {
        return Err(Error::OutOfSupport {
            a,
            min: lo,
            max: hi,
        });
    }
    if a <= lo + edge {
        return Ok(-math::ln(x.bottom_mass()));
    }
    if a >= hi - edge {
        return Ok(-math::ln(x.top_mass()));
    }
    let (mut t_lo, mut t_hi) = (-T_BRACKET, T_BRACKET);
    for _ in 0..BISECT_ITERS {
        let mid = 0.5 * (t_lo + t_hi);
        if cgf_derivative(x, mid) < a {
            t_lo = mid;
        } else {
            t_hi = mid;
        }
    }
    let t = 0.5 * (t_lo + t_hi);
    // value error is second order in the t error at the maximizer
    Ok((t * a - cgf(x, t)).max(0.0))
}

/// K*, extended by +∞ outside the support (used for interval checks).
fn rate_or_infinity(x: &AtomicDistribution, a: f64) -> f64 {
    fenchel(x, a).unwrap_or(f64::INFINITY)
}

/// Chernoff bound: `Pr{X₁+…+X_n > na} ≤ e^{−n·K*_X(a)}` for `a ≥ E[X]`.
pub fn chernoff_bound(x: &AtomicDistribution, a: f64, n: usize) -> Result<f64> {
    if a < x.mean() - DEFAULT_TOL {
        return Err(Error::DomainError(String::from(
            "Chernoff bound requires a >= E[X]",
        )));
    }
    let rate = fenchel(x, a)?;
    Ok(math::exp(-(n as f64) * rate))
}

/// Lower bound `Pr{X₁+…+X_n > na} ≥ e^{−n·K*_X(a+η)}·(1 − 4b²/(nη²))`,
/// clamped at zero, valid for `a ∈ [min X, max X − η)`.
pub fn ld_lower_bound(x: &AtomicDistribution, a: f64, eta: f64, n: usize) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::DomainError(String::from("eta must be positive")));
    }
    if a < x.min_value() - DEFAULT_TOL || a >= x.max_value() - eta {
        return Err(Error::DomainError(String::from(
            "lower bound requires a in [min X, max X - eta)",
        )));
    }
    let b = math::abs(x.min_value()).max(math::abs(x.max_value()));
    let rate = fenchel(x, a + eta)?;
    let correction = 1.0 - 4.0 * b * b / (n as f64 * eta * eta);
    Ok((math::exp(-(n as f64) * rate) * correction).max(0.0))
}

/// Exact `Pr{X₁+…+X_n > na}` (or ≥, when `strict` is false) via
/// multinomial convolution. The oracle side of the large-deviation
/// sandwich.
pub fn exact_tail(
    x: &AtomicDistribution,
    n: usize,
    a: f64,
    strict: bool,
    enum_cap: u128,
) -> Result<f64> {
    let sum = x.power_convolve(n, enum_cap)?;
    Ok(sum.tail_prob(n as f64 * a, strict))
}

/// One row of the η verification grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateGridRow {
    pub theta: State,
    pub a: f64,
    /// K*_{Xᶿ} evaluated where the inequality requires it.
    pub rate_x: f64,
    /// K*_{Yᶿ} evaluated where the inequality requires it.
    pub rate_y: f64,
}

/// An η ∈ (0,1) together with the grid on which its defining inequalities
/// were verified. η certifies, for both states θ:
///
/// ```text
/// K*_Y(a) − η > K*_X(a+η)  on [E[X]−η, max Y]
/// K*_Y(a−η) < K*_X(a) − η  on [0, E[Y]+η]
/// ```
///
/// and `E[X] − η > E[Y]`. The grid is a soundness parameter, not a proof.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaCertificate {
    pub eta: f64,
    pub grid: Vec<RateGridRow>,
}

/// Number of grid points per inequality interval.
const ETA_GRID_POINTS: usize = 1000;

/// Smallest ladder exponent: candidates are 2⁻¹, …, 2⁻³⁰.
const ETA_LADDER_DEPTH: u32 = 30;

fn check_eta(
    llrs: &[(State, AtomicDistribution, AtomicDistribution)],
    eta: f64,
) -> Option<Vec<RateGridRow>> {
    let mut grid = Vec::new();
    for (theta, x, y) in llrs {
        let (ex, ey) = (x.mean(), y.mean());
        if !(ex - eta > ey) {
            return None;
        }
        // upper-tail inequality on [E[X]−η, max Y]
        let lo = ex - eta;
        let hi = y.max_value();
        if lo <= hi {
            for i in 0..ETA_GRID_POINTS {
                let a = lo + (hi - lo) * i as f64 / (ETA_GRID_POINTS - 1) as f64;
                let ry = rate_or_infinity(y, a);
                let rx = rate_or_infinity(x, a + eta);
                if !(ry - eta > rx) {
                    return None;
                }
                grid.push(RateGridRow {
                    theta: *theta,
                    a,
                    rate_x: rx,
                    rate_y: ry,
                });
            }
        }
        // lower-tail inequality on [0, E[Y]+η]
        let hi2 = ey + eta;
        for i in 0..ETA_GRID_POINTS {
            let a = hi2 * i as f64 / (ETA_GRID_POINTS - 1) as f64;
            let ry = rate_or_infinity(y, a - eta);
            let rx = rate_or_infinity(x, a);
            if !(ry < rx - eta) {
                return None;
            }
            grid.push(RateGridRow {
                theta: *theta,
                a,
                rate_x: rx,
                rate_y: ry,
            });
        }
    }
    Some(grid)
}

/// Searches a geometric ladder η ∈ {1/2, 1/4, …, 2⁻³⁰} for the largest
/// value satisfying the rate inequalities on both states, grid-verified.
///
/// Preconditions: the pair is generic and P dominates Q on the Rényi grid.
/// The ladder can be exhausted in borderline cases even though exact
/// arithmetic guarantees existence; that is reported as `NoEtaFound`.
pub fn eta_search(p: &FiniteExperiment, q: &FiniteExperiment) -> Result<EtaCertificate> {
    if !is_generic_pair(p, q) {
        return Err(Error::PreconditionFailed(String::from(
            "pair is not generic",
        )));
    }
    match renyi_order_check(p, q, DEFAULT_T_MAX, DEFAULT_GRID_POINTS) {
        RenyiOrderVerdict::DominatesOnGrid => {}
        v => {
            return Err(Error::PreconditionFailed(alloc::format!(
                "P must dominate Q on the Renyi grid, got {v:?}"
            )))
        }
    }
    let llrs: Vec<(State, AtomicDistribution, AtomicDistribution)> = [State::Zero, State::One]
        .into_iter()
        .map(|theta| (theta, p.llr_distribution(theta), q.llr_distribution(theta)))
        .collect();
    for k in 1..=ETA_LADDER_DEPTH {
        let eta = math::powf(2.0, -(k as f64));
        if let Some(grid) = check_eta(&llrs, eta) {
            return Ok(EtaCertificate { eta, grid });
        }
    }
    Err(Error::NoEtaFound)
}

/// The certified sample-size bound for a pair of experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeDeviationSummary {
    /// Support bound: max |atom| over X¹, Y¹ (and hence X⁰, Y⁰).
    pub b: f64,
    pub eta: f64,
    /// n₀ = ⌈8b²/η³⌉: P^⊗n Blackwell-dominates Q^⊗n for all n ≥ n₀.
    pub n0: u128,
    pub verification_grid: Vec<RateGridRow>,
}

/// Computes b, η and n₀ = ⌈8b²η⁻³⌉ for a generic Rényi-dominant pair.
///
/// The constant is far from tight (the underlying estimates use Chebyshev
/// rather than normal-approximation error bounds); brute-force minimal n
/// values are typically orders of magnitude smaller.
pub fn sample_bound(p: &FiniteExperiment, q: &FiniteExperiment) -> Result<LargeDeviationSummary> {
    let cert = eta_search(p, q)?;
    let x1 = p.llr_distribution(State::One);
    let y1 = q.llr_distribution(State::One);
    let b = math::abs(x1.min_value())
        .max(math::abs(x1.max_value()))
        .max(math::abs(y1.min_value()))
        .max(math::abs(y1.max_value()));
    let n0_f = math::ceil(8.0 * b * b / (cert.eta * cert.eta * cert.eta));
    let n0 = if n0_f >= u128::MAX as f64 {
        u128::MAX
    } else {
        n0_f as u128
    };
    Ok(LargeDeviationSummary {
        b,
        eta: cert.eta,
        n0,
        verification_grid: cert.grid,
    })
}
