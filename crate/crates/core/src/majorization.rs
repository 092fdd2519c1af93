//! Majorization of finite pmfs and Rényi entropies, including negative
//! orders, with the brute-force product-majorization check.
//!
//! A pmf μ paired against the uniform distribution forms an experiment
//! P^μ; for equal support sizes, μ majorizing ν is equivalent to P^μ
//! Blackwell-dominating P^ν, which links entropy comparisons to the
//! large-sample machinery of the rest of the crate.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::experiment::FiniteExperiment;
use crate::math;

/// A strictly positive pmf over an abstract finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePmf {
    probs: Vec<f64>,
}

impl FinitePmf {
    pub fn new(probs: impl Into<Vec<f64>>) -> Result<Self> {
        let probs = probs.into();
        if probs.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        for (i, &p) in probs.iter().enumerate() {
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::ZeroEntry { index: i, value: p });
            }
        }
        let sum = math::stable_sum(probs.iter().copied());
        if math::abs(sum - 1.0) > 1e-9 {
            return Err(Error::RowSumMismatch { state: 0, sum });
        }
        Ok(Self {
            probs: probs.into_iter().map(|p| p / sum).collect(),
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().fold(0.0, |a, &b| a.max(b))
    }

    pub fn min_prob(&self) -> f64 {
        self.probs.iter().fold(1.0, |a, &b| a.min(b))
    }

    /// The experiment (S, uniform, μ) pairing the pmf with the uniform
    /// distribution on its support.
    pub fn against_uniform(&self) -> FiniteExperiment {
        let n = self.support_size();
        let labels: Vec<alloc::string::String> = (0..n).map(|i| alloc::format!("s{i}")).collect();
        let uniform = alloc::vec![1.0 / n as f64; n];
        FiniteExperiment::new(labels, uniform, self.probs.clone())
            .expect("valid pmf yields a valid experiment")
    }
}

/// μ majorizes ν: every prefix sum of the descending-sorted probabilities
/// of μ weakly exceeds the corresponding prefix of ν (within 1e-12).
/// Different support sizes are padded with zeros.
pub fn majorizes(mu: &FinitePmf, nu: &FinitePmf) -> bool {
    majorizes_raw(mu.probs(), nu.probs())
}

pub(crate) fn majorizes_raw(mu: &[f64], nu: &[f64]) -> bool {
    let mut a: Vec<f64> = mu.to_vec();
    let mut b: Vec<f64> = nu.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    let len = a.len().max(b.len());
    // compensated prefix sums of the differences: plain accumulation over
    // the ~m^n entries of a product pmf drifts past the 1e-12 tolerance
    let mut diff = 0.0_f64;
    let mut comp = 0.0_f64;
    for i in 0..len {
        let d = a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0);
        let t = diff + d;
        if math::abs(diff) >= math::abs(d) {
            comp += (diff - t) + d;
        } else {
            comp += (d - t) + diff;
        }
        diff = t;
        if diff + comp < -1e-12 {
            return false;
        }
    }
    true
}

/// Rényi entropy H_μ(α) = (1/(1−α))·log ∑ μ(s)^α, in nats.
///
/// Extended by continuity: Shannon entropy at α = 1, −log max μ at +∞,
/// −log min μ at −∞. Negative orders probe the smallest probabilities.
pub fn renyi_entropy(mu: &FinitePmf, alpha: f64) -> f64 {
    if alpha.is_infinite() {
        return if alpha > 0.0 {
            -math::ln(mu.max_prob())
        } else {
            -math::ln(mu.min_prob())
        };
    }
    if math::abs(alpha - 1.0) < 1e-9 {
        return -math::stable_sum(mu.probs().iter().map(|&p| p * math::ln(p)));
    }
    let terms: Vec<f64> = mu.probs().iter().map(|&p| alpha * math::ln(p)).collect();
    math::log_sum_exp(&terms) / (1.0 - alpha)
}

/// H′_μ(0) = log|S| + (1/|S|)·∑ log μ(s).
pub fn entropy_derivative_at_zero(mu: &FinitePmf) -> f64 {
    let n = mu.support_size() as f64;
    math::ln(n) + math::stable_sum(mu.probs().iter().map(|&p| math::ln(p))) / n
}

/// Report of the entropy-condition check against brute-force product
/// majorization.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyMajorizationReport {
    /// The entropy condition: H_μ < H_ν on (0, ∞], H_μ > H_ν on [−∞, 0),
    /// and H′_μ(0) < H′_ν(0).
    pub condition_holds: bool,
    /// First α violating the condition, if any (±∞ allowed).
    pub witness: Option<f64>,
    /// Whether μ^{×n} majorizes ν^{×n}, for n = 1..=cap.
    pub majorize_vector: Vec<bool>,
    /// Start of the all-majorizing suffix, when the vector ends majorizing.
    pub minimal_n: Option<usize>,
}

/// Orders sampled on each side of 0 for the entropy condition.
const ENTROPY_GRID_POINTS: usize = 96;

/// Checks the entropy condition and brute-forces majorization of the
/// n-fold products up to `cap`.
///
/// Requires equal support sizes and a generic pair: distinct maximum
/// probabilities and distinct minimum probabilities.
pub fn entropy_majorization_check(
    mu: &FinitePmf,
    nu: &FinitePmf,
    cap: usize,
) -> Result<EntropyMajorizationReport> {
    if mu.support_size() != nu.support_size() {
        return Err(Error::SupportMismatch {
            expected: mu.support_size(),
            got: nu.support_size(),
        });
    }
    if math::abs(mu.max_prob() - nu.max_prob()) <= 1e-9
        || math::abs(mu.min_prob() - nu.min_prob()) <= 1e-9
    {
        return Err(Error::NonGeneric);
    }
    let mut condition_holds = true;
    let mut witness = None;
    let mut check = |alpha: f64, ok: bool| {
        if !ok && condition_holds {
            condition_holds = false;
            witness = Some(alpha);
        }
    };
    // positive orders, log-spaced on (0, 64], then +∞
    for i in 0..ENTROPY_GRID_POINTS {
        let alpha = 64.0_f64
            * math::powf(
                2.0,
                -12.0 * (1.0 - i as f64 / (ENTROPY_GRID_POINTS - 1) as f64),
            );
        let ok = renyi_entropy(mu, alpha) < renyi_entropy(nu, alpha);
        check(alpha, ok);
    }
    check(
        f64::INFINITY,
        renyi_entropy(mu, f64::INFINITY) < renyi_entropy(nu, f64::INFINITY),
    );
    // negative orders and −∞, with the opposite sign
    for i in 0..ENTROPY_GRID_POINTS {
        let alpha = -64.0_f64
            * math::powf(
                2.0,
                -12.0 * (1.0 - i as f64 / (ENTROPY_GRID_POINTS - 1) as f64),
            );
        let ok = renyi_entropy(mu, alpha) > renyi_entropy(nu, alpha);
        check(alpha, ok);
    }
    check(
        f64::NEG_INFINITY,
        renyi_entropy(mu, f64::NEG_INFINITY) > renyi_entropy(nu, f64::NEG_INFINITY),
    );
    check(
        0.0,
        entropy_derivative_at_zero(mu) < entropy_derivative_at_zero(nu),
    );

    let mut majorize_vector = Vec::with_capacity(cap);
    let mut mu_pow: Vec<f64> = alloc::vec![1.0];
    let mut nu_pow: Vec<f64> = alloc::vec![1.0];
    for _ in 1..=cap {
        mu_pow = outer(&mu_pow, mu.probs());
        nu_pow = outer(&nu_pow, nu.probs());
        majorize_vector.push(majorizes_raw(&mu_pow, &nu_pow));
    }
    let mut minimal_n = None;
    for (i, &ok) in majorize_vector.iter().enumerate().rev() {
        if ok {
            minimal_n = Some(i + 1);
        } else {
            break;
        }
    }
    Ok(EntropyMajorizationReport {
        condition_holds,
        witness,
        majorize_vector,
        minimal_n,
    })
}

fn outer(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}
