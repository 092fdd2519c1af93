//! Empirical large-sample dominance: brute-force dominance vectors over n,
//! the generic-pair verdict, catalyst construction, and (n, m) ratio search.

use alloc::string::String;
use alloc::vec::Vec;

use crate::blackwell::{blackwell_verdict_llr, BlackwellVerdict};
use crate::distribution::AtomicDistribution;
use crate::error::{Error, Result};
use crate::experiment::{is_generic_pair, FiniteExperiment, State};
use crate::large_deviations::sample_bound;
use crate::renyi::{renyi_order_check, RenyiOrderVerdict};
use crate::{DEFAULT_GRID_POINTS, DEFAULT_PRODUCT_CAP, DEFAULT_T_MAX};

/// Per-n Blackwell verdicts for P^⊗n vs Q^⊗n, with the derived summary.
///
/// Dominance is *not* monotone in n, so the whole vector is reported;
/// `minimal_n` is the start of the all-dominating suffix (up to the cap),
/// not the first success.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    /// Verdict for each n = 1..=cap (index 0 is n = 1).
    pub vector: Vec<BlackwellVerdict>,
    /// Smallest n that weakly dominates and such that every larger tested n
    /// does too; `None` when the vector does not end in dominance.
    pub minimal_n: Option<usize>,
    /// n₀ from the rate-function bound, when the certificate exists.
    pub theory_n0: Option<u128>,
    pub renyi_verdict: RenyiOrderVerdict,
    pub generic: bool,
}

/// Runs the exact perfected-LLR Blackwell check on P^⊗n vs Q^⊗n for every
/// n up to `cap`.
pub fn dominance_vector(
    p: &FiniteExperiment,
    q: &FiniteExperiment,
    cap: usize,
) -> Result<DominanceReport> {
    let f1 = p.llr_distribution(State::One);
    let g1 = q.llr_distribution(State::One);
    let mut vector = Vec::with_capacity(cap);
    for n in 1..=cap {
        let fn1 = f1.power_convolve(n, crate::DEFAULT_ENUM_CAP)?;
        let gn1 = g1.power_convolve(n, crate::DEFAULT_ENUM_CAP)?;
        vector.push(blackwell_verdict_llr(&fn1, &gn1)?);
    }
    let minimal_n = minimal_dominating_suffix(&vector);
    let renyi_verdict = renyi_order_check(p, q, DEFAULT_T_MAX, DEFAULT_GRID_POINTS);
    let generic = is_generic_pair(p, q);
    let theory_n0 = if generic && renyi_verdict.dominates() {
        sample_bound(p, q).ok().map(|s| s.n0)
    } else {
        None
    };
    Ok(DominanceReport {
        vector,
        minimal_n,
        theory_n0,
        renyi_verdict,
        generic,
    })
}

fn minimal_dominating_suffix(vector: &[BlackwellVerdict]) -> Option<usize> {
    let mut start = None;
    for (i, v) in vector.iter().enumerate().rev() {
        if v.dominates_weakly() {
            start = Some(i + 1);
        } else {
            break;
        }
    }
    start
}

/// The prediction the genericity + Renyi characterization licenses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LargeSampleVerdict {
    /// Rényi-dominant generic pair: P^⊗n ⪰ Q^⊗n for all large n; carries
    /// the rate-function bound n₀ when the η certificate exists.
    PredictDominates { n0: Option<u128> },
    /// The Rényi order fails at the witness, so no all-n dominance suffix
    /// can exist.
    PredictNotDominates { theta: State, t: f64, gap: f64 },
    /// Non-generic pairs get no prediction: both behaviors occur.
    NonGeneric,
}

/// Applies the genericity gate and the Rényi-order test to predict
/// large-sample dominance.
///
/// For generic pairs, "P^⊗n ⪰ Q^⊗n for some n" and "for all large n" are
/// equivalent definitions (dominance at any single n forces the Rényi
/// ranking, which forces an all-large-n suffix), so a single prediction
/// covers both readings. Non-generic pairs get no prediction: both
/// behaviors occur there.
pub fn large_sample_verdict(p: &FiniteExperiment, q: &FiniteExperiment) -> LargeSampleVerdict {
    if !is_generic_pair(p, q) {
        return LargeSampleVerdict::NonGeneric;
    }
    match renyi_order_check(p, q, DEFAULT_T_MAX, DEFAULT_GRID_POINTS) {
        RenyiOrderVerdict::DominatesOnGrid => LargeSampleVerdict::PredictDominates {
            n0: sample_bound(p, q).ok().map(|s| s.n0),
        },
        RenyiOrderVerdict::FailsAt { theta, t, gap } => {
            LargeSampleVerdict::PredictNotDominates { theta, t, gap }
        }
        RenyiOrderVerdict::Inconclusive => LargeSampleVerdict::PredictNotDominates {
            theta: State::Zero,
            t: f64::NAN,
            gap: f64::NAN,
        },
    }
}

/// State-1 LLR distribution of the catalyst
/// R = (1/n)·⊕_{j<n} P^⊗j ⊗ Q^⊗(n−j), built by convolution and mixture of
/// the component LLR distributions (mixture weights cancel out of the
/// log-likelihood ratio, so the mixture of experiments mixes their LLR
/// distributions).
fn catalyst_llr(
    f1: &AtomicDistribution,
    g1: &AtomicDistribution,
    n: usize,
) -> Result<AtomicDistribution> {
    let mut parts: Vec<AtomicDistribution> = Vec::with_capacity(n);
    for j in 0..n {
        let pj = f1.power_convolve(j, crate::DEFAULT_ENUM_CAP)?;
        let qnj = g1.power_convolve(n - j, crate::DEFAULT_ENUM_CAP)?;
        parts.push(pj.convolve(&qnj));
    }
    let w = 1.0 / n as f64;
    let weighted: Vec<(f64, &AtomicDistribution)> = parts.iter().map(|d| (w, d)).collect();
    AtomicDistribution::mixture(&weighted)
}

/// Builds the catalyst R = (1/n)(Q^⊗n ⊕ P⊗Q^⊗(n−1) ⊕ … ⊕ P^⊗(n−1)⊗Q),
/// which makes P ⊗ R Blackwell-dominate Q ⊗ R whenever P^⊗n ⪰ Q^⊗n.
/// The postcondition is verified internally before returning.
pub fn catalyst(p: &FiniteExperiment, q: &FiniteExperiment, n: usize) -> Result<FiniteExperiment> {
    if n == 0 {
        return Err(Error::DomainError(String::from("catalyst requires n >= 1")));
    }
    let f1 = p.llr_distribution(State::One);
    let g1 = q.llr_distribution(State::One);
    let fn1 = f1.power_convolve(n, crate::DEFAULT_ENUM_CAP)?;
    let gn1 = g1.power_convolve(n, crate::DEFAULT_ENUM_CAP)?;
    if !blackwell_verdict_llr(&fn1, &gn1)?.dominates_weakly() {
        return Err(Error::PreconditionFailed(alloc::format!(
            "P^(x){n} does not Blackwell-dominate Q^(x){n}"
        )));
    }
    // explicit outcome space, guarded by the product cap
    let mut size: u128 = 0;
    for j in 0..n {
        size = size.saturating_add(
            (p.len() as u128).pow(j as u32) * (q.len() as u128).pow((n - j) as u32),
        );
    }
    if size > DEFAULT_PRODUCT_CAP {
        return Err(Error::SizeOverflow {
            size,
            cap: DEFAULT_PRODUCT_CAP,
        });
    }
    let mut components: Vec<FiniteExperiment> = Vec::with_capacity(n);
    for j in 0..n {
        let pj = p.power(j, DEFAULT_PRODUCT_CAP)?;
        let qnj = q.power(n - j, DEFAULT_PRODUCT_CAP)?;
        components.push(pj.product(&qnj)?);
    }
    let w = 1.0 / n as f64;
    let weighted: Vec<(f64, &FiniteExperiment)> = components.iter().map(|e| (w, e)).collect();
    let r = FiniteExperiment::mixture_many(&weighted)?;

    // verify P ⊗ R ⪰ Q ⊗ R at the LLR level
    let r1 = catalyst_llr(&f1, &g1, n)?;
    let pr = f1.convolve(&r1);
    let qr = g1.convolve(&r1);
    if !blackwell_verdict_llr(&pr, &qr)?.dominates_weakly() {
        return Err(Error::VerificationFailed(String::from(
            "catalyst failed to make P (x) R dominate Q (x) R",
        )));
    }
    Ok(r)
}

/// For each n ≤ n_max, the largest m ≤ m_cap with P^⊗n ⪰ Q^⊗m, plus the
/// best ratio m/n found: an empirical lower bound on the dominance ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSearchReport {
    /// (n, maximal m) pairs; n with no dominating m are omitted.
    pub pairs: Vec<(usize, usize)>,
    /// max m/n over the table, 0 when empty.
    pub best: f64,
}

pub fn ratio_search(
    p: &FiniteExperiment,
    q: &FiniteExperiment,
    n_max: usize,
    m_cap: usize,
) -> Result<RatioSearchReport> {
    if p.is_trivial() || q.is_trivial() {
        return Err(Error::TrivialExperiment);
    }
    let f1 = p.llr_distribution(State::One);
    let g1 = q.llr_distribution(State::One);
    let mut pairs = Vec::new();
    let mut best = 0.0_f64;
    // the maximal m is nondecreasing in n: Q^⊗m ⪰ Q^⊗m' for m ≥ m'
    let mut m_floor = 1usize;
    for n in 1..=n_max {
        let fn1 = f1.power_convolve(n, crate::DEFAULT_ENUM_CAP)?;
        let mut best_m = None;
        let mut m = m_floor;
        while m <= m_cap {
            let gm1 = g1.power_convolve(m, crate::DEFAULT_ENUM_CAP)?;
            let check = crate::blackwell::llr_fosd(&fn1, &gm1, crate::DEFAULT_TOL)?;
            if check.holds {
                best_m = Some(m);
                m += 1;
            } else {
                break;
            }
        }
        if let Some(m) = best_m {
            pairs.push((n, m));
            best = best.max(m as f64 / n as f64);
            m_floor = m;
        }
    }
    Ok(RatioSearchReport { pairs, best })
}
