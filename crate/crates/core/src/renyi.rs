//! Rényi divergences, profiles over the order parameter, the Rényi order
//! test, and the dominance ratio.
//!
//! The Hellinger transform is the monotone reparametrization
//! t ↦ e^{(t−1)·R_t} of the same data and is not exposed separately.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::experiment::{FiniteExperiment, State};
use crate::{math, DEFAULT_TOL};

/// R_t(μ‖ν) in nats for strictly positive pmfs on a common support.
///
/// For t ∉ {1, ∞}: (1/(t−1))·log ∑ μᵢ(μᵢ/νᵢ)^{t−1}; t = 1 is the
/// Kullback-Leibler divergence; t = ∞ the maximum log ratio. Near t = 1 a
/// first-order expansion around the KL value avoids the 0/0 form.
pub fn renyi_divergence(mu: &[f64], nu: &[f64], t: f64) -> Result<f64> {
    if mu.len() != nu.len() {
        return Err(Error::LengthMismatch {
            expected: mu.len(),
            got: nu.len(),
        });
    }
    if !(t > 0.0) {
        return Err(Error::DomainError(String::from(
            "Renyi order parameter must be positive",
        )));
    }
    for (i, (&m, &n)) in mu.iter().zip(nu).enumerate() {
        if !(m > 0.0) || !(n > 0.0) {
            return Err(Error::ZeroEntry {
                index: i,
                value: if m > 0.0 { n } else { m },
            });
        }
    }
    if t.is_infinite() {
        return Ok(mu
            .iter()
            .zip(nu)
            .map(|(&m, &n)| math::ln(m) - math::ln(n))
            .fold(f64::NEG_INFINITY, f64::max));
    }
    if math::abs(t - 1.0) < 1e-8 {
        let kl = kl_divergence(mu, nu);
        // R_t ≈ KL + (t−1)/2 · Var_μ[log(μ/ν)]
        let var = math::stable_sum(mu.iter().zip(nu).map(|(&m, &n)| {
            let d = math::ln(m) - math::ln(n) - kl;
            m * d * d
        }));
        return Ok(kl + 0.5 * (t - 1.0) * var);
    }
    let terms: Vec<f64> = mu
        .iter()
        .zip(nu)
        .map(|(&m, &n)| math::ln(m) + (t - 1.0) * (math::ln(m) - math::ln(n)))
        .collect();
    Ok(math::log_sum_exp(&terms) / (t - 1.0))
}

fn kl_divergence(mu: &[f64], nu: &[f64]) -> f64 {
    math::stable_sum(
        mu.iter()
            .zip(nu)
            .map(|(&m, &n)| m * (math::ln(m) - math::ln(n))),
    )
}

/// R_P^θ(t): the Rényi divergence of state θ's measure from the other.
pub fn experiment_renyi(p: &FiniteExperiment, theta: State, t: f64) -> Result<f64> {
    let (mu, nu) = (p.pmf(theta), p.pmf(theta.flip()));
    renyi_divergence(mu, nu, t)
}

/// Log-spaced grid on [1/2, t_max], always containing 1/2, 1 and 2.
pub fn renyi_grid(t_max: f64, points: usize) -> Vec<f64> {
    let points = points.max(3);
    let t_max = t_max.max(2.0);
    let lo = 0.5_f64;
    let ratio = math::ln(t_max / lo) / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points)
        .map(|i| lo * math::exp(ratio * i as f64))
        .collect();
    // pin the anchor orders exactly, each claiming its nearest grid slot
    let mut used = alloc::vec![false; points];
    for anchor in [0.5, 1.0, 2.0] {
        let mut best: Option<usize> = None;
        for (i, &g) in grid.iter().enumerate() {
            if used[i] {
                continue;
            }
            if best.is_none_or(|b| math::abs(g - anchor) < math::abs(grid[b] - anchor)) {
                best = Some(i);
            }
        }
        let b = best.expect("points >= 3 leaves a free slot");
        grid[b] = anchor;
        used[b] = true;
    }
    grid.sort_by(|a, b| a.total_cmp(b));
    grid
}

/// A sampled map t ↦ R_P^θ(t) on [1/2, T], plus the t = ∞ limit.
#[derive(Debug, Clone, PartialEq)]
pub struct RenyiProfile {
    pub theta: State,
    /// Ascending grid of finite orders.
    pub grid: Vec<f64>,
    /// R_P^θ(t) per grid point, in nats.
    pub values: Vec<f64>,
    /// R_P^θ(∞): the maximum log-likelihood ratio.
    pub infinity: f64,
}

impl RenyiProfile {
    /// Builds a profile by evaluating a closed-form divergence on the
    /// standard grid.
    pub fn from_fn(
        theta: State,
        t_max: f64,
        points: usize,
        infinity: f64,
        mut f: impl FnMut(f64) -> Result<f64>,
    ) -> Result<Self> {
        let grid = renyi_grid(t_max, points);
        let mut values = Vec::with_capacity(grid.len());
        for &t in &grid {
            values.push(f(t)?);
        }
        Ok(Self {
            theta,
            grid,
            values,
            infinity,
        })
    }
}

/// Samples R_P^θ on the standard grid.
pub fn renyi_profile(
    p: &FiniteExperiment,
    theta: State,
    t_max: f64,
    points: usize,
) -> Result<RenyiProfile> {
    if t_max < 1.0 {
        return Err(Error::DomainError(String::from("t_max must be at least 1")));
    }
    let infinity = p.llr_distribution(theta).max_value();
    RenyiProfile::from_fn(theta, t_max, points, infinity, |t| {
        experiment_renyi(p, theta, t)
    })
}

/// Verdict of the grid-based Rényi order test.
///
/// `DominatesOnGrid` certifies strict dominance at every sampled order and
/// consistency of the t → ∞ asymptotes; the difference of the underlying
/// exponential polynomials has finitely many roots, so a fine grid is
/// strong (but not certified) evidence. `FailsAt` carries the first
/// witness; a gap of ~0 means strict dominance fails by a tie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrderVerdict {
    DominatesOnGrid,
    FailsAt { theta: State, t: f64, gap: f64 },
    Inconclusive,
}

impl RenyiOrderVerdict {
    pub fn dominates(self) -> bool {
        matches!(self, RenyiOrderVerdict::DominatesOnGrid)
    }
}

struct SideData {
    grid: Vec<f64>,
    diffs: Vec<f64>,
    /// max LLR difference (R^θ(∞) gap)
    inf_gap: f64,
    /// log p_max − log q_max at a shared maximum, when known
    top_mass_gap: Option<f64>,
    /// per grid point: both divergences agree with the shared top-atom
    /// asymptote max + log(mass)/(t−1) to within tolerance, so the point
    /// carries no information at double precision
    saturated: Vec<bool>,
}

fn scan_sides(sides: &[(State, SideData)], tol: f64) -> RenyiOrderVerdict {
    let mut first_tie: Option<(State, f64, f64)> = None;
    for (theta, side) in sides {
        for (i, (&t, &d)) in side.grid.iter().zip(&side.diffs).enumerate() {
            if !d.is_finite() {
                return RenyiOrderVerdict::Inconclusive;
            }
            if d < -tol {
                return RenyiOrderVerdict::FailsAt {
                    theta: *theta,
                    t,
                    gap: d,
                };
            }
            if d <= tol && !side.saturated[i] && first_tie.is_none() {
                first_tie = Some((*theta, t, d));
            }
        }
        if side.inf_gap < -tol {
            return RenyiOrderVerdict::FailsAt {
                theta: *theta,
                t: f64::INFINITY,
                gap: side.inf_gap,
            };
        }
        if math::abs(side.inf_gap) <= tol {
            // shared essential maximum: for very large t the comparison is
            // decided by the mass carried at the maximum
            if let Some(mg) = side.top_mass_gap {
                if mg < -tol {
                    return RenyiOrderVerdict::FailsAt {
                        theta: *theta,
                        t: f64::INFINITY,
                        gap: mg,
                    };
                }
            }
        }
    }
    match first_tie {
        Some((theta, t, gap)) => RenyiOrderVerdict::FailsAt { theta, t, gap },
        None => RenyiOrderVerdict::DominatesOnGrid,
    }
}

/// Grid test of the Rényi order: does R_P^θ(t) > R_Q^θ(t) strictly for both
/// states and all sampled t, with consistent behavior at t = ∞?
///
/// Equivalent to sign checks of the exponential polynomial
/// g_θ(s) = ∑pᵢe^{s xᵢ} − ∑qⱼe^{s yⱼ} with s = t − 1 (positive for s > 0,
/// negative for s ∈ (−1,0), and at s = 0 to the comparison of expectations,
/// i.e. of Kullback-Leibler divergences, which also covers the t → 0⁺
/// behavior of the opposite state via the identity
/// R¹(t) = t/(1−t)·R⁰(1−t)).
pub fn renyi_order_check(
    p: &FiniteExperiment,
    q: &FiniteExperiment,
    t_max: f64,
    points: usize,
) -> RenyiOrderVerdict {
    let grid = renyi_grid(t_max, points);
    let mut sides = Vec::new();
    for theta in [State::Zero, State::One] {
        let x = p.llr_distribution(theta);
        let y = q.llr_distribution(theta);
        let shared_top = math::abs(x.max_value() - y.max_value()) <= DEFAULT_TOL
            && math::abs(math::ln(x.top_mass()) - math::ln(y.top_mass())) <= DEFAULT_TOL;
        let mut diffs = Vec::with_capacity(grid.len());
        let mut saturated = Vec::with_capacity(grid.len());
        for &t in &grid {
            let rp = experiment_renyi(p, theta, t).unwrap_or(f64::NAN);
            let rq = experiment_renyi(q, theta, t).unwrap_or(f64::NAN);
            diffs.push(rp - rq);
            // an experiment sharing both the top LLR value and its mass:
            // beyond the point where both divergences equal the top-atom
            // asymptote to within tolerance, the grid cannot resolve the
            // (mathematically strict) comparison in double precision
            let sat = shared_top && t > 2.0 && {
                let asym_p = x.max_value() + math::ln(x.top_mass()) / (t - 1.0);
                let asym_q = y.max_value() + math::ln(y.top_mass()) / (t - 1.0);
                math::abs(rp - asym_p) <= 4.0 * DEFAULT_TOL
                    && math::abs(rq - asym_q) <= 4.0 * DEFAULT_TOL
            };
            saturated.push(sat);
        }
        sides.push((
            theta,
            SideData {
                grid: grid.clone(),
                diffs,
                inf_gap: x.max_value() - y.max_value(),
                top_mass_gap: Some(math::ln(x.top_mass()) - math::ln(y.top_mass())),
                saturated,
            },
        ));
    }
    scan_sides(&sides, DEFAULT_TOL)
}

/// Same test on pre-computed profiles (e.g. closed-form profiles of a
/// continuous experiment). All four profiles must share one grid.
pub fn renyi_order_check_profiles(
    p0: &RenyiProfile,
    p1: &RenyiProfile,
    q0: &RenyiProfile,
    q1: &RenyiProfile,
) -> Result<RenyiOrderVerdict> {
    for (a, b) in [(p0, q0), (p1, q1), (p0, p1)] {
        if a.grid.len() != b.grid.len()
            || a.grid
                .iter()
                .zip(&b.grid)
                .any(|(x, y)| math::abs(x - y) > 1e-12)
        {
            return Err(Error::DomainError(String::from(
                "profiles must share a common grid",
            )));
        }
    }
    let side = |pp: &RenyiProfile, qq: &RenyiProfile| SideData {
        grid: pp.grid.clone(),
        diffs: pp
            .values
            .iter()
            .zip(&qq.values)
            .map(|(a, b)| a - b)
            .collect(),
        inf_gap: pp.infinity - qq.infinity,
        top_mass_gap: None,
        saturated: alloc::vec![false; pp.grid.len()],
    };
    let sides = alloc::vec![(State::Zero, side(p0, q0)), (State::One, side(p1, q1)),];
    Ok(scan_sides(&sides, DEFAULT_TOL))
}

/// The grid infimum of R_P^θ(t)/R_Q^θ(t) and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceRatio {
    /// inf over θ and sampled t (an upper bound on the true infimum).
    pub value: f64,
    pub witness_theta: State,
    /// The minimizing order; infinite when the max-LLR ratio attains it.
    pub witness_t: f64,
}

/// Dominance ratio P/Q = inf_{θ,t} R_P^θ(t)/R_Q^θ(t), sampled on the grid
/// plus the t = ∞ term `max[Xᶿ]/max[Yᶿ]`.
pub fn dominance_ratio(
    p: &FiniteExperiment,
    q: &FiniteExperiment,
    t_max: f64,
    points: usize,
) -> Result<DominanceRatio> {
    if p.is_trivial() || q.is_trivial() {
        return Err(Error::TrivialExperiment);
    }
    let grid = renyi_grid(t_max, points);
    let mut best = DominanceRatio {
        value: f64::INFINITY,
        witness_theta: State::Zero,
        witness_t: 0.5,
    };
    for theta in [State::Zero, State::One] {
        for &t in &grid {
            let rp = experiment_renyi(p, theta, t)?;
            let rq = experiment_renyi(q, theta, t)?;
            let ratio = rp / rq;
            if ratio < best.value {
                best = DominanceRatio {
                    value: ratio,
                    witness_theta: theta,
                    witness_t: t,
                };
            }
        }
        let ratio = p.llr_distribution(theta).max_value() / q.llr_distribution(theta).max_value();
        if ratio < best.value {
            best = DominanceRatio {
                value: ratio,
                witness_theta: theta,
                witness_t: f64::INFINITY,
            };
        }
    }
    Ok(best)
}
