//! Exact Blackwell dominance testing for finite experiments.
//!
//! The primary decision procedure *perfects* the state-1 log-likelihood
//! ratio: subtracting an independent unit exponential from the LLR turns
//! Blackwell dominance into plain first-order stochastic dominance of the
//! resulting continuous distributions. The second, independent procedure
//! compares posterior-belief distributions as mean-preserving spreads.
//! The two must always agree; `CompareMode::CrossValidate` enforces that.

use alloc::string::String;
use alloc::vec::Vec;

use crate::distribution::AtomicDistribution;
use crate::error::{Error, Result};
use crate::experiment::{FiniteExperiment, Garbling, PosteriorDistribution, State};
use crate::{math, DEFAULT_TOL};

/// Change-of-measure residual beyond which an input is rejected as not
/// being a state-1 LLR distribution.
const COM_GAP_LIMIT: f64 = 1e-6;

/// The cdf F̃₁ of the perfected log-likelihood ratio: piecewise of the form
/// α + β·eᵃ on the intervals cut by the atom values of F₁.
///
/// On the leftmost piece the curve is exactly eᵃ (α = 0, β = ∑e⁻ᵘp(u) = 1
/// by change of measure); on the rightmost it is constant 1. The curve is
/// continuous and nondecreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseExpCurve {
    /// Strictly ascending breakpoints a₁ < … < a_k (the atom values).
    breakpoints: Vec<f64>,
    /// Per interval (−∞,a₁], (a₁,a₂], …, (a_k,∞): coefficients (α, β) of
    /// the map a ↦ α + β·eᵃ. One more segment than breakpoints.
    segments: Vec<(f64, f64)>,
}

impl PiecewiseExpCurve {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    pub fn eval(&self, a: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&b| b <= a);
        let (alpha, beta) = self.segments[idx];
        alpha + beta * math::exp(a)
    }
}

/// Builds F̃₁(a) = F₁(a) + eᵃ·∑_{u>a} e⁻ᵘ p(u) from a state-1 LLR
/// distribution. Rejects inputs violating the change-of-measure identity.
pub fn perfected_cdf(f1: &AtomicDistribution) -> Result<PiecewiseExpCurve> {
    let gap = f1.change_of_measure_gap();
    if gap > COM_GAP_LIMIT {
        return Err(Error::InvalidLlr { gap });
    }
    let atoms = f1.atoms();
    let mut breakpoints = Vec::with_capacity(atoms.len());
    let mut segments = Vec::with_capacity(atoms.len() + 1);
    // suffix sums of e^{-u} p(u), from the right
    let mut beta_suffix = alloc::vec![0.0; atoms.len() + 1];
    for (i, atom) in atoms.iter().enumerate().rev() {
        beta_suffix[i] = beta_suffix[i + 1] + math::exp(-atom.value) * atom.prob;
    }
    let mut cdf = 0.0;
    segments.push((0.0, beta_suffix[0]));
    for (i, atom) in atoms.iter().enumerate() {
        breakpoints.push(atom.value);
        cdf += atom.prob;
        segments.push((cdf, beta_suffix[i + 1]));
    }
    // rightmost segment: exactly the constant total mass
    let last = segments.len() - 1;
    segments[last] = (1.0, 0.0);
    Ok(PiecewiseExpCurve {
        breakpoints,
        segments,
    })
}

/// Result of a one-sided first-order-stochastic-dominance check between
/// two perfected curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FosdCheck {
    pub holds: bool,
    /// Breakpoint with the largest violation F̃(a) − G̃(a) > tol, if any.
    pub witness: Option<(f64, f64)>,
}

/// Checks F̃ ≤ G̃ everywhere. The difference on each interval between
/// consecutive combined breakpoints has the form α′ + β′eᵃ, monotone in a,
/// so evaluating at every breakpoint of both curves is exact.
pub fn curve_fosd(f_tilde: &PiecewiseExpCurve, g_tilde: &PiecewiseExpCurve, tol: f64) -> FosdCheck {
    let mut worst: Option<(f64, f64)> = None;
    for &a in f_tilde.breakpoints.iter().chain(g_tilde.breakpoints.iter()) {
        let gap = f_tilde.eval(a) - g_tilde.eval(a);
        if gap > tol && worst.is_none_or(|(_, g)| gap > g) {
            worst = Some((a, gap));
        }
    }
    FosdCheck {
        holds: worst.is_none(),
        witness: worst,
    }
}

/// First-order stochastic dominance of perfected LLRs directly from two
/// state-1 LLR distributions: the exact test for `P ⪰ Q`.
pub fn llr_fosd(f1: &AtomicDistribution, g1: &AtomicDistribution, tol: f64) -> Result<FosdCheck> {
    let ft = perfected_cdf(f1)?;
    let gt = perfected_cdf(g1)?;
    Ok(curve_fosd(&ft, &gt, tol))
}

/// True iff P Blackwell-dominates Q (weakly), by the perfected-LLR test.
pub fn fosd_perfected(p: &FiniteExperiment, q: &FiniteExperiment) -> Result<bool> {
    let check = llr_fosd(
        &p.llr_distribution(State::One),
        &q.llr_distribution(State::One),
        DEFAULT_TOL,
    )?;
    Ok(check.holds)
}

/// Λ(p) = ∫_{[0,p]} (p − q) dπ(q), evaluated at a point. Piecewise linear
/// in p with kinks exactly at the atoms of π.
fn cumulative_spread(pi: &PosteriorDistribution, p: f64) -> f64 {
    math::stable_sum(
        pi.atoms()
            .iter()
            .take_while(|a| a.belief <= p + DEFAULT_TOL)
            .map(|a| (p - a.belief) * a.prob),
    )
}

/// Mean-preserving-spread check: π spreads τ iff Λ_π ≥ Λ_τ pointwise.
/// Both distributions must have mean 1/2 (a uniform-prior invariant); a
/// mean gap signals upstream corruption and is an input error.
pub fn mps_check(pi: &PosteriorDistribution, tau: &PosteriorDistribution) -> Result<bool> {
    let (mp, mt) = (pi.mean_belief(), tau.mean_belief());
    if math::abs(mp - mt) > DEFAULT_TOL {
        return Err(Error::MeanMismatch {
            left: mp,
            right: mt,
        });
    }
    for a in pi.atoms().iter().chain(tau.atoms()) {
        if cumulative_spread(pi, a.belief) < cumulative_spread(tau, a.belief) - DEFAULT_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a two-sided Blackwell comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlackwellVerdict {
    Dominates,
    DominatedBy,
    Equivalent,
    Incomparable,
}

impl BlackwellVerdict {
    fn from_directions(forward: bool, backward: bool) -> Self {
        match (forward, backward) {
            (true, true) => BlackwellVerdict::Equivalent,
            (true, false) => BlackwellVerdict::Dominates,
            (false, true) => BlackwellVerdict::DominatedBy,
            (false, false) => BlackwellVerdict::Incomparable,
        }
    }

    pub fn dominates_weakly(self) -> bool {
        matches!(
            self,
            BlackwellVerdict::Dominates | BlackwellVerdict::Equivalent
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BlackwellVerdict::Dominates => "Dominates",
            BlackwellVerdict::DominatedBy => "DominatedBy",
            BlackwellVerdict::Equivalent => "Equivalent",
            BlackwellVerdict::Incomparable => "Incomparable",
        }
    }
}

/// Which decision procedure `blackwell_dominates` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    /// Perfected-LLR first-order stochastic dominance (the default).
    Perfected,
    /// Mean-preserving-spread comparison of posterior distributions.
    Mps,
    /// Both, erroring out if they disagree.
    CrossValidate,
}

/// Two-sided Blackwell verdict on a pair of state-1 LLR distributions.
pub fn blackwell_verdict_llr(
    f1: &AtomicDistribution,
    g1: &AtomicDistribution,
) -> Result<BlackwellVerdict> {
    let ft = perfected_cdf(f1)?;
    let gt = perfected_cdf(g1)?;
    let forward = curve_fosd(&ft, &gt, DEFAULT_TOL).holds;
    let backward = curve_fosd(&gt, &ft, DEFAULT_TOL).holds;
    Ok(BlackwellVerdict::from_directions(forward, backward))
}

fn mps_verdict(p: &FiniteExperiment, q: &FiniteExperiment) -> Result<BlackwellVerdict> {
    let pi = p.posterior_distribution();
    let tau = q.posterior_distribution();
    let forward = mps_check(&pi, &tau)?;
    let backward = mps_check(&tau, &pi)?;
    Ok(BlackwellVerdict::from_directions(forward, backward))
}

/// Decides how P and Q compare in the Blackwell order.
pub fn blackwell_dominates(
    p: &FiniteExperiment,
    q: &FiniteExperiment,
    mode: CompareMode,
) -> Result<BlackwellVerdict> {
    match mode {
        CompareMode::Perfected => blackwell_verdict_llr(
            &p.llr_distribution(State::One),
            &q.llr_distribution(State::One),
        ),
        CompareMode::Mps => mps_verdict(p, q),
        CompareMode::CrossValidate => {
            let by_curve = blackwell_dominates(p, q, CompareMode::Perfected)?;
            let by_mps = mps_verdict(p, q)?;
            if by_curve != by_mps {
                return Err(Error::OracleDisagreement {
                    perfected: by_curve.as_str(),
                    mps: by_mps.as_str(),
                });
            }
            Ok(by_curve)
        }
    }
}

/// Verifies that `garble(P, σ)` equals Q up to outcome relabeling, within
/// 1e-9 entrywise. Only verification of a provided kernel is supported;
/// synthesizing a kernel from a dominance verdict is out of scope.
pub fn verify_garbling(
    p: &FiniteExperiment,
    q: &FiniteExperiment,
    sigma: &Garbling,
) -> Result<bool> {
    let garbled = p.garble(sigma)?;
    if garbled.len() != q.len() {
        return Ok(false);
    }
    let key = |e: &FiniteExperiment| -> Vec<(f64, f64)> {
        let mut v: Vec<(f64, f64)> = e
            .pmf(State::Zero)
            .iter()
            .zip(e.pmf(State::One))
            .map(|(&a, &b)| (a, b))
            .collect();
        v.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        v
    };
    let a = key(&garbled);
    let b = key(q);
    Ok(a.iter()
        .zip(&b)
        .all(|(x, y)| math::abs(x.0 - y.0) <= DEFAULT_TOL && math::abs(x.1 - y.1) <= DEFAULT_TOL))
}

/// A convex piecewise-linear indirect utility of the posterior belief,
/// given by its kinks. The kink list must span [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexUtility {
    kinks: Vec<(f64, f64)>,
}

impl ConvexUtility {
    pub fn new(kinks: impl Into<Vec<(f64, f64)>>) -> Result<Self> {
        let kinks = kinks.into();
        if kinks.len() < 2 {
            return Err(Error::DomainError(String::from(
                "utility needs at least two kinks",
            )));
        }
        if math::abs(kinks[0].0) > 1e-12 || math::abs(kinks[kinks.len() - 1].0 - 1.0) > 1e-12 {
            return Err(Error::DomainError(String::from(
                "utility kinks must span [0, 1]",
            )));
        }
        let mut prev_slope = f64::NEG_INFINITY;
        for w in kinks.windows(2) {
            let db = w[1].0 - w[0].0;
            if db <= 0.0 {
                return Err(Error::DomainError(String::from(
                    "utility kinks must be strictly increasing in belief",
                )));
            }
            let slope = (w[1].1 - w[0].1) / db;
            if slope < prev_slope - 1e-12 {
                return Err(Error::NonConvexUtility { at: w[0].0 });
            }
            prev_slope = slope;
        }
        Ok(Self { kinks })
    }

    /// max(p, 1−p): the matching decision problem under a uniform prior.
    pub fn matching() -> Self {
        Self::new([(0.0, 1.0), (0.5, 0.5), (1.0, 1.0)]).expect("convex")
    }

    /// (p − p̄)⁺: a call-option payoff on the belief.
    pub fn call_on_belief(threshold: f64) -> Result<Self> {
        if !(0.0 < threshold && threshold < 1.0) {
            return Err(Error::DomainError(String::from(
                "threshold must lie in (0,1)",
            )));
        }
        Self::new([(0.0, 0.0), (threshold, 0.0), (1.0, 1.0 - threshold)])
    }

    pub fn eval(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let idx = self
            .kinks
            .partition_point(|&(b, _)| b <= p)
            .clamp(1, self.kinks.len() - 1);
        let (b0, v0) = self.kinks[idx - 1];
        let (b1, v1) = self.kinks[idx];
        v0 + (v1 - v0) * (p - b0) / (b1 - b0)
    }
}

/// Expected indirect utility ∑ v(p)·π(p) over the posterior atoms of P.
pub fn expected_indirect_utility(p: &FiniteExperiment, v: &ConvexUtility) -> f64 {
    math::stable_sum(
        p.posterior_distribution()
            .atoms()
            .iter()
            .map(|a| v.eval(a.belief) * a.prob),
    )
}
