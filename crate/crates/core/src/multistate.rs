//! Necessary conditions for large-sample dominance with more than two
//! states: the multidimensional moment generating function of the
//! log-likelihood-ratio vector, the convexity classification of the
//! candidate indirect utilities, and the sampled-grid condition check.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// An experiment over k+1 ≥ 2 states: a strictly positive row-stochastic
/// matrix, one row per state, over a common finite outcome set.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiStateExperiment {
    probs: Vec<Vec<f64>>,
}

impl MultiStateExperiment {
    pub fn new(probs: Vec<Vec<f64>>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::StateMismatch {
                expected: 2,
                got: probs.len(),
            });
        }
        let m = probs[0].len();
        if m == 0 {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        for row in &probs {
            if row.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    got: row.len(),
                });
            }
            for (i, &v) in row.iter().enumerate() {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(Error::ZeroEntry { index: i, value: v });
                }
            }
            let sum = math::stable_sum(row.iter().copied());
            if math::abs(sum - 1.0) > 1e-9 {
                return Err(Error::RowSumMismatch { state: 0, sum });
            }
        }
        Ok(Self {
            probs: probs
                .into_iter()
                .map(|row| {
                    let s = math::stable_sum(row.iter().copied());
                    row.into_iter().map(|v| v / s).collect()
                })
                .collect(),
        })
    }

    /// Number of states, k + 1.
    pub fn states(&self) -> usize {
        self.probs.len()
    }

    pub fn outcomes(&self) -> usize {
        self.probs[0].len()
    }

    pub fn pmf(&self, state: usize) -> Result<&[f64]> {
        self.probs
            .get(state)
            .map(|r| r.as_slice())
            .ok_or(Error::IndexError {
                index: state,
                states: self.states(),
            })
    }

    /// Product experiment observing both components independently.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.states() != other.states() {
            return Err(Error::StateMismatch {
                expected: self.states(),
                got: other.states(),
            });
        }
        let mut probs = Vec::with_capacity(self.states());
        for s in 0..self.states() {
            let mut row = Vec::with_capacity(self.outcomes() * other.outcomes());
            for &a in &self.probs[s] {
                for &b in &other.probs[s] {
                    row.push(a * b);
                }
            }
            probs.push(row);
        }
        Self::new(probs)
    }

    /// Post-processes every state's measure through a common garbling
    /// kernel. All-zero target columns are dropped.
    pub fn garble(&self, sigma: &crate::experiment::Garbling) -> Result<Self> {
        let rows: Result<Vec<Vec<f64>>> = self.probs.iter().map(|row| sigma.apply(row)).collect();
        Self::new(rows?)
    }

    /// KL divergence between the measures of two states.
    pub fn pairwise_kl(&self, i: usize, j: usize) -> Result<f64> {
        let pi = self.pmf(i)?;
        let pj = self.pmf(j)?;
        Ok(math::stable_sum(
            pi.iter()
                .zip(pj)
                .map(|(&a, &b)| a * (math::ln(a) - math::ln(b))),
        ))
    }
}

/// M_{Xⁱ}(t) = ∑_ω P_i(ω)·exp(∑_j t_j·log(P_i(ω)/P_j(ω))), the moment
/// generating function of the log-likelihood-ratio vector against the k
/// other states (in ascending state order), conditional on state i.
pub fn multistate_mgf(e: &MultiStateExperiment, i: usize, t: &[f64]) -> Result<f64> {
    let k = e.states() - 1;
    if i >= e.states() {
        return Err(Error::IndexError {
            index: i,
            states: e.states(),
        });
    }
    if t.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: t.len(),
        });
    }
    let pi = e.pmf(i)?;
    let others: Vec<usize> = (0..e.states()).filter(|&j| j != i).collect();
    let mut total = 0.0;
    for (w, &piw) in pi.iter().enumerate() {
        let mut exponent = 0.0;
        for (tj, &j) in t.iter().zip(&others) {
            exponent += tj * (math::ln(piw) - math::ln(e.probs[j][w]));
        }
        total += piw * math::exp(exponent);
    }
    Ok(total)
}

/// Curvature classification of v(p) = (k+1)·p₀^α₀·p₁^α₁⋯p_k^α_k on the
/// interior of the simplex, for ∑α = 1 and α₀ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    /// All of α₁…α_k nonpositive; strict when all are strictly negative.
    Convex {
        strict: bool,
    },
    /// All of α₁…α_k nonnegative; strict when all are strictly positive.
    Concave {
        strict: bool,
    },
    Neither,
}

/// Classifies v(p); an all-zero tail (affine v) reports as non-strict
/// convex, which is also non-strictly concave.
pub fn v_convexity(alpha: &[f64]) -> Result<Curvature> {
    if alpha.len() < 2 {
        return Err(Error::DomainError(String::from(
            "need at least two exponents",
        )));
    }
    let sum = math::stable_sum(alpha.iter().copied());
    if math::abs(sum - 1.0) > 1e-9 {
        return Err(Error::DomainError(alloc::format!(
            "exponents must sum to 1, got {sum}"
        )));
    }
    if !(alpha[0] > 0.0) {
        return Err(Error::DomainError(String::from("alpha_0 must be positive")));
    }
    let tol = 1e-12;
    let tail = &alpha[1..];
    let has_pos = tail.iter().any(|&a| a > tol);
    let has_neg = tail.iter().any(|&a| a < -tol);
    Ok(match (has_pos, has_neg) {
        (false, false) => Curvature::Convex { strict: false },
        (false, true) => Curvature::Convex {
            strict: tail.iter().all(|&a| a < -tol),
        },
        (true, false) => Curvature::Concave {
            strict: tail.iter().all(|&a| a > tol),
        },
        (true, true) => Curvature::Neither,
    })
}

/// Directional second derivative of v at interior p along x, up to the
/// positive factor v(p): (∑ αᵢxᵢ/pᵢ)² − ∑ αᵢxᵢ²/pᵢ². The numeric cross
/// check for `v_convexity`.
pub fn v_directional_second_derivative(alpha: &[f64], p: &[f64], x: &[f64]) -> f64 {
    let s: f64 = alpha
        .iter()
        .zip(p)
        .zip(x)
        .map(|((&a, &pi), &xi)| a * xi / pi)
        .sum();
    let q: f64 = alpha
        .iter()
        .zip(p)
        .zip(x)
        .map(|((&a, &pi), &xi)| a * xi * xi / (pi * pi))
        .sum();
    s * s - q
}

/// How the sampled t-grids for `multistate_necessary` are drawn:
/// `directions` random positive directions per orthant, each scaled to
/// `magnitudes` sizes, from a seeded generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectionGrid {
    pub directions: usize,
    pub magnitudes: usize,
    pub seed: u64,
}

impl Default for DirectionGrid {
    fn default() -> Self {
        Self {
            directions: 200,
            magnitudes: 10,
            seed: 0x5eed_cafe,
        }
    }
}

/// A failed condition instance.
#[derive(Debug, Clone, PartialEq)]
pub enum NecessaryWitness {
    /// Condition (i): M_X(t) must strictly exceed M_Y(t) on the positive
    /// orthant.
    UpperOrthant { state: usize, t: Vec<f64> },
    /// Condition (ii): the comparison reverses on the negative orthant
    /// with ∑t > −1.
    LowerOrthant { state: usize, t: Vec<f64> },
    /// Condition (iii): pairwise KL divergences must be strictly ranked.
    PairwiseKl { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryReport {
    pub passed: bool,
    /// Up to 16 recorded failures.
    pub witnesses: Vec<NecessaryWitness>,
}

/// Multi-state genericity: for every ordered state pair the max and min
/// log-likelihood ratios of the two experiments differ.
pub fn multistate_generic(ep: &MultiStateExperiment, eq: &MultiStateExperiment) -> bool {
    let ranged = |e: &MultiStateExperiment, i: usize, j: usize| {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for w in 0..e.outcomes() {
            let llr = math::ln(e.probs[i][w]) - math::ln(e.probs[j][w]);
            lo = lo.min(llr);
            hi = hi.max(llr);
        }
        (lo, hi)
    };
    for i in 0..ep.states() {
        for j in 0..ep.states() {
            if i == j {
                continue;
            }
            let (plo, phi) = ranged(ep, i, j);
            let (qlo, qhi) = ranged(eq, i, j);
            if math::abs(plo - qlo) <= 1e-9 || math::abs(phi - qhi) <= 1e-9 {
                return false;
            }
        }
    }
    true
}

// splitmix64: small deterministic generator for the sampled grids
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Checks the three necessary conditions for P to dominate Q in large
/// samples, on sampled t-grids. Both experiments must have the same state
/// count and form a generic pair.
pub fn multistate_necessary(
    ep: &MultiStateExperiment,
    eq: &MultiStateExperiment,
    grid: &DirectionGrid,
) -> Result<NecessaryReport> {
    if ep.states() != eq.states() {
        return Err(Error::StateMismatch {
            expected: ep.states(),
            got: eq.states(),
        });
    }
    if !multistate_generic(ep, eq) {
        return Err(Error::NonGeneric);
    }
    let k = ep.states() - 1;
    let mut rng = SplitMix64(grid.seed);
    let mut witnesses = Vec::new();
    let record = |w: NecessaryWitness, witnesses: &mut Vec<NecessaryWitness>| {
        if witnesses.len() < 16 {
            witnesses.push(w);
        }
    };
    let tol = 1e-12;
    for _ in 0..grid.directions {
        // direction on the positive face, normalized to sum 1
        let mut dir: Vec<f64> = (0..k).map(|_| rng.next_f64().max(1e-9)).collect();
        let s: f64 = dir.iter().sum();
        dir.iter_mut().for_each(|d| *d /= s);
        let mag_steps = grid.magnitudes.saturating_sub(1).max(1) as f64;
        for mi in 0..grid.magnitudes {
            // condition (i): magnitudes log-spaced in [1e-2, 10]
            let mag = 0.01 * math::powf(1000.0, mi as f64 / mag_steps);
            let t_pos: Vec<f64> = dir.iter().map(|&d| d * mag).collect();
            for state in 0..ep.states() {
                let mx = multistate_mgf(ep, state, &t_pos)?;
                let my = multistate_mgf(eq, state, &t_pos)?;
                if !(mx > my + tol) {
                    record(
                        NecessaryWitness::UpperOrthant {
                            state,
                            t: t_pos.clone(),
                        },
                        &mut witnesses,
                    );
                }
            }
            // condition (ii): ∑t ∈ (−1, 0), magnitudes spread over (0, 1)
            let neg_mag = 0.95 * (mi as f64 + 1.0) / grid.magnitudes as f64;
            let t_neg: Vec<f64> = dir.iter().map(|&d| -d * neg_mag).collect();
            for state in 0..ep.states() {
                let mx = multistate_mgf(ep, state, &t_neg)?;
                let my = multistate_mgf(eq, state, &t_neg)?;
                if !(mx < my - tol) {
                    record(
                        NecessaryWitness::LowerOrthant {
                            state,
                            t: t_neg.clone(),
                        },
                        &mut witnesses,
                    );
                }
            }
        }
    }
    for i in 0..ep.states() {
        for j in 0..ep.states() {
            if i != j && !(ep.pairwise_kl(i, j)? > eq.pairwise_kl(i, j)? + tol) {
                record(NecessaryWitness::PairwiseKl { i, j }, &mut witnesses);
            }
        }
    }
    Ok(NecessaryReport {
        passed: witnesses.is_empty(),
        witnesses,
    })
}
