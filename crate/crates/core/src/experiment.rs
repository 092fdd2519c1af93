//! Finite binary experiments and their derived distributions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::distribution::AtomicDistribution;
use crate::error::{Error, Result};
use crate::{math, values_close, DEFAULT_ENUM_CAP, DEFAULT_PRODUCT_CAP, DEFAULT_TOL, ROW_SUM_TOL};

/// The binary state of the world.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum State {
    Zero,
    One,
}

impl State {
    pub fn flip(self) -> State {
        match self {
            State::Zero => State::One,
            State::One => State::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            State::Zero => 0,
            State::One => 1,
        }
    }
}

/// A pair of strictly positive probability mass functions over a common
/// finite outcome set, one per state. Strict positivity encodes mutual
/// absolute continuity: no outcome perfectly reveals either state.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteExperiment {
    outcomes: Vec<String>,
    p0: Vec<f64>,
    p1: Vec<f64>,
}

impl FiniteExperiment {
    /// Validates and builds an experiment. Rows that sum to 1 within
    /// `ROW_SUM_TOL` are renormalized; anything further off is rejected.
    pub fn new(
        outcomes: impl IntoIterator<Item = impl Into<String>>,
        p0: impl Into<Vec<f64>>,
        p1: impl Into<Vec<f64>>,
    ) -> Result<Self> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        let p0 = p0.into();
        let p1 = p1.into();
        if p0.len() != outcomes.len() {
            return Err(Error::LengthMismatch {
                expected: outcomes.len(),
                got: p0.len(),
            });
        }
        if p1.len() != outcomes.len() {
            return Err(Error::LengthMismatch {
                expected: outcomes.len(),
                got: p1.len(),
            });
        }
        if outcomes.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        for (i, label) in outcomes.iter().enumerate() {
            if outcomes[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        let p0 = normalize_row(p0, 0)?;
        let p1 = normalize_row(p1, 1)?;
        Ok(Self { outcomes, p0, p1 })
    }

    /// The experiment with a single uninformative outcome.
    pub fn unit() -> Self {
        Self {
            outcomes: alloc::vec!["*".to_string()],
            p0: alloc::vec![1.0],
            p1: alloc::vec![1.0],
        }
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn pmf(&self, state: State) -> &[f64] {
        match state {
            State::Zero => &self.p0,
            State::One => &self.p1,
        }
    }

    /// P₀ = P₁ within tolerance.
    pub fn is_trivial(&self) -> bool {
        self.p0
            .iter()
            .zip(&self.p1)
            .all(|(a, b)| math::abs(a - b) <= DEFAULT_TOL)
    }

    /// Distribution of log(dP_θ/dP_{1−θ}) under state θ.
    pub fn llr_distribution(&self, state: State) -> AtomicDistribution {
        let (num, den) = match state {
            State::One => (&self.p1, &self.p0),
            State::Zero => (&self.p0, &self.p1),
        };
        let pairs = num
            .iter()
            .zip(den)
            .map(|(&n, &d)| (math::ln(n) - math::ln(d), n));
        AtomicDistribution::new(pairs).expect("validated pmf yields a valid distribution")
    }

    /// Distribution of the n-fold i.i.d. sum of log-likelihood ratios under
    /// state θ, i.e. the LLR distribution of the product experiment P^⊗n.
    pub fn power_llr(&self, n: usize, state: State) -> Result<AtomicDistribution> {
        if n == 0 {
            return Err(Error::DomainError("power requires n >= 1".into()));
        }
        self.llr_distribution(state)
            .power_convolve(n, DEFAULT_ENUM_CAP)
    }

    /// Product experiment P ⊗ Q: Cartesian outcomes, product measures.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.product_capped(other, DEFAULT_PRODUCT_CAP)
    }

    pub fn product_capped(&self, other: &Self, cap: u128) -> Result<Self> {
        let size = self.len() as u128 * other.len() as u128;
        if size > cap {
            return Err(Error::SizeOverflow { size, cap });
        }
        let mut outcomes = Vec::with_capacity(self.len() * other.len());
        let mut p0 = Vec::with_capacity(self.len() * other.len());
        let mut p1 = Vec::with_capacity(self.len() * other.len());
        for (i, a) in self.outcomes.iter().enumerate() {
            for (j, b) in other.outcomes.iter().enumerate() {
                outcomes.push(format!("{a},{b}"));
                p0.push(self.p0[i] * other.p0[j]);
                p1.push(self.p1[i] * other.p1[j]);
            }
        }
        Ok(Self { outcomes, p0, p1 })
    }

    /// n-fold product experiment with explicit outcome space. `power(0)` is
    /// the unit (trivial one-outcome) experiment.
    pub fn power(&self, n: usize, cap: u128) -> Result<Self> {
        let mut acc = Self::unit();
        for _ in 0..n {
            acc = acc.product_capped(self, cap)?;
        }
        Ok(acc)
    }

    /// Mixture α·P ⊕ (1−α)·Q on the disjoint union of the outcome sets.
    /// Outcomes that end up with zero mass in both states are dropped.
    pub fn mixture(&self, other: &Self, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::DomainError(format!("alpha {alpha} not in [0,1]")));
        }
        let parts = [(alpha, self), (1.0 - alpha, other)];
        Self::mixture_many(&parts)
    }

    /// Mixture Σ wᵢ·Pᵢ over the disjoint union of outcome sets.
    pub fn mixture_many(parts: &[(f64, &Self)]) -> Result<Self> {
        let total = math::stable_sum(parts.iter().map(|(w, _)| *w));
        if math::abs(total - 1.0) > 1e-9 {
            return Err(Error::RowSumMismatch {
                state: 0,
                sum: total,
            });
        }
        let mut outcomes = Vec::new();
        let mut p0 = Vec::new();
        let mut p1 = Vec::new();
        for (idx, &(w, e)) in parts.iter().enumerate() {
            if w < 0.0 {
                return Err(Error::DomainError(format!("negative mixture weight {w}")));
            }
            if w == 0.0 {
                continue;
            }
            for (i, label) in e.outcomes.iter().enumerate() {
                outcomes.push(format!("m{idx}:{label}"));
                p0.push(w / total * e.p0[i]);
                p1.push(w / total * e.p1[i]);
            }
        }
        Self::new(outcomes, p0, p1)
    }

    /// Post-processes the experiment through a garbling kernel. Zero-mass
    /// target outcomes are dropped to preserve strict positivity.
    pub fn garble(&self, sigma: &Garbling) -> Result<Self> {
        if sigma.rows() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: sigma.rows(),
            });
        }
        let k = sigma.cols();
        let mut p0 = alloc::vec![0.0; k];
        let mut p1 = alloc::vec![0.0; k];
        for i in 0..self.len() {
            for (j, s) in sigma.matrix[i].iter().enumerate() {
                p0[j] += s * self.p0[i];
                p1[j] += s * self.p1[i];
            }
        }
        let mut outcomes = Vec::new();
        let mut q0 = Vec::new();
        let mut q1 = Vec::new();
        for j in 0..k {
            if p0[j] > 0.0 || p1[j] > 0.0 {
                outcomes.push(format!("y{j}"));
                q0.push(p0[j]);
                q1.push(p1[j]);
            }
        }
        Self::new(outcomes, q0, q1)
    }

    /// Distribution over posterior beliefs from the uniform prior.
    pub fn posterior_distribution(&self) -> PosteriorDistribution {
        let mut entries: Vec<(f64, f64, f64)> = self
            .p0
            .iter()
            .zip(&self.p1)
            .map(|(&q0, &q1)| (q1 / (q0 + q1), q0, q1))
            .collect();
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        // merge outcomes inducing the same belief
        let mut atoms: Vec<PosteriorAtom> = Vec::new();
        let mut i = 0;
        while i < entries.len() {
            let anchor = entries[i].0;
            let mut w = 0.0;
            let mut w0 = 0.0;
            let mut w1 = 0.0;
            let mut j = i;
            while j < entries.len() && values_close(anchor, entries[j].0) {
                w += entries[j].0 * (entries[j].1 + entries[j].2) / 2.0;
                w0 += entries[j].1;
                w1 += entries[j].2;
                j += 1;
            }
            let prob = (w0 + w1) / 2.0;
            atoms.push(PosteriorAtom {
                belief: w / prob,
                prob,
                prob0: w0,
                prob1: w1,
            });
            i = j;
        }
        PosteriorDistribution { atoms }
    }

    /// Largest and smallest log-likelihood ratio under state θ.
    pub fn llr_range(&self, state: State) -> (f64, f64) {
        let d = self.llr_distribution(state);
        (d.min_value(), d.max_value())
    }
}

fn normalize_row(row: Vec<f64>, state: u8) -> Result<Vec<f64>> {
    for (i, &v) in row.iter().enumerate() {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::ZeroEntry { index: i, value: v });
        }
    }
    let sum = math::stable_sum(row.iter().copied());
    if math::abs(sum - 1.0) > ROW_SUM_TOL {
        return Err(Error::RowSumMismatch { state, sum });
    }
    Ok(row.into_iter().map(|v| v / sum).collect())
}

/// Genericity: the essential maxima of the two state-1 log-likelihood
/// ratios differ, and so do the essential minima.
pub fn is_generic_pair(p: &FiniteExperiment, q: &FiniteExperiment) -> bool {
    is_generic_pair_tol(p, q, DEFAULT_TOL)
}

pub fn is_generic_pair_tol(p: &FiniteExperiment, q: &FiniteExperiment, tol: f64) -> bool {
    let (pmin, pmax) = p.llr_range(State::One);
    let (qmin, qmax) = q.llr_range(State::One);
    math::abs(pmax - qmax) > tol && math::abs(pmin - qmin) > tol
}

/// A row-stochastic kernel from source outcomes to target outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Garbling {
    matrix: Vec<Vec<f64>>,
}

impl Garbling {
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        let k = matrix[0].len();
        for row in &matrix {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: row.len(),
                });
            }
            for (i, &v) in row.iter().enumerate() {
                if v < 0.0 || !v.is_finite() {
                    return Err(Error::ZeroEntry { index: i, value: v });
                }
            }
            let sum = math::stable_sum(row.iter().copied());
            if math::abs(sum - 1.0) > ROW_SUM_TOL {
                return Err(Error::RowSumMismatch { state: 0, sum });
            }
        }
        Ok(Self { matrix })
    }

    pub fn identity(m: usize) -> Self {
        let matrix = (0..m)
            .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { matrix }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    /// Push-forward of a pmf through the kernel (σᵀ applied to the vector).
    /// All-zero target columns are dropped.
    pub fn apply(&self, pmf: &[f64]) -> Result<Vec<f64>> {
        if pmf.len() != self.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                got: pmf.len(),
            });
        }
        let mut out = alloc::vec![0.0; self.cols()];
        for (i, &p) in pmf.iter().enumerate() {
            for (j, s) in self.matrix[i].iter().enumerate() {
                out[j] += s * p;
            }
        }
        Ok(out
            .into_iter()
            .enumerate()
            .filter(|&(j, _)| (0..self.rows()).any(|i| self.matrix[i][j] > 0.0))
            .map(|(_, v)| v)
            .collect())
    }
}

/// One atom of a posterior-belief distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorAtom {
    /// Posterior probability of state 1.
    pub belief: f64,
    /// Unconditional probability (π₀ + π₁)/2 of inducing this belief.
    pub prob: f64,
    /// Probability of this belief conditional on state 0.
    pub prob0: f64,
    /// Probability of this belief conditional on state 1.
    pub prob1: f64,
}

/// Distribution over posterior beliefs, sorted ascending in belief.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorDistribution {
    atoms: Vec<PosteriorAtom>,
}

impl PosteriorDistribution {
    /// Builds a belief distribution from raw `(belief, prob)` atoms. The
    /// conditional weights are derived from the posterior identity
    /// dπ₁(p) = (p/(1−p))·dπ₀(p), i.e. prob1 = 2p·prob, prob0 = 2(1−p)·prob.
    pub fn from_atoms(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        for &(b, p) in &pairs {
            if !(0.0 < b && b < 1.0) {
                return Err(Error::DomainError(format!("belief {b} not in (0,1)")));
            }
            if !(p > 0.0) {
                return Err(Error::DomainError(format!(
                    "atom probability {p} not positive"
                )));
            }
        }
        let mass = math::stable_sum(pairs.iter().map(|&(_, p)| p));
        if math::abs(mass - 1.0) > 1e-9 {
            return Err(Error::RowSumMismatch {
                state: 0,
                sum: mass,
            });
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let atoms = pairs
            .into_iter()
            .map(|(b, p)| PosteriorAtom {
                belief: b,
                prob: p / mass,
                prob0: 2.0 * (1.0 - b) * p / mass,
                prob1: 2.0 * b * p / mass,
            })
            .collect();
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[PosteriorAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mean_belief(&self) -> f64 {
        math::stable_sum(self.atoms.iter().map(|a| a.belief * a.prob))
    }

    /// Total-variation-style distance between two belief distributions,
    /// used to report strictness (π ≠ τ) after atom merging.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        let mut i = 0;
        let mut j = 0;
        while i < self.atoms.len() || j < other.atoms.len() {
            match (self.atoms.get(i), other.atoms.get(j)) {
                (Some(a), Some(b)) if values_close(a.belief, b.belief) => {
                    d = d.max(math::abs(a.prob - b.prob));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) => {
                    if a.belief < b.belief {
                        d = d.max(a.prob);
                        i += 1;
                    } else {
                        d = d.max(b.prob);
                        j += 1;
                    }
                }
                (Some(a), None) => {
                    d = d.max(a.prob);
                    i += 1;
                }
                (None, Some(b)) => {
                    d = d.max(b.prob);
                    j += 1;
                }
                (None, None) => break,
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    pub(crate) fn symmetric_binary(q: f64) -> FiniteExperiment {
        FiniteExperiment::new(["h", "t"], [q, 1.0 - q], [1.0 - q, q]).unwrap()
    }

    #[test]
    fn validates_ternary_matrix() {
        let beta = 0.1;
        let e = FiniteExperiment::new(
            ["x1", "x2", "x3"],
            [beta, 0.5, 0.5 - beta],
            [0.5 - beta, 0.5, beta],
        )
        .unwrap();
        assert_eq!(e.len(), 3);
        assert!(!e.is_trivial());
    }

    #[test]
    fn trivial_experiment_is_valid() {
        let e = FiniteExperiment::new(["a", "b"], [0.5, 0.5], [0.5, 0.5]).unwrap();
        assert!(e.is_trivial());
    }

    #[test]
    fn rejects_zero_entry() {
        assert!(matches!(
            FiniteExperiment::new(["a", "b"], [0.0, 1.0], [0.5, 0.5]),
            Err(Error::ZeroEntry { .. })
        ));
    }

    #[test]
    fn rejects_row_sum_mismatch() {
        assert!(matches!(
            FiniteExperiment::new(["a", "b"], [0.3, 0.3], [0.5, 0.5]),
            Err(Error::RowSumMismatch { .. })
        ));
    }

    #[test]
    fn rejects_duplicate_label() {
        assert!(matches!(
            FiniteExperiment::new(["a", "a"], [0.5, 0.5], [0.5, 0.5]),
            Err(Error::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn llr_symmetric_binary() {
        let e = symmetric_binary(0.8);
        let d = e.llr_distribution(State::One);
        let l = (4.0_f64).ln();
        assert_eq!(d.len(), 2);
        assert_relative_eq!(d.min_value(), -l, max_relative = 1e-12);
        assert_relative_eq!(d.max_value(), l, max_relative = 1e-12);
        assert_relative_eq!(d.atoms()[0].prob, 0.2, max_relative = 1e-12);
        assert_relative_eq!(d.atoms()[1].prob, 0.8, max_relative = 1e-12);
    }

    #[test]
    fn llr_sign_flip_between_states() {
        let e = FiniteExperiment::new(["a", "b", "c"], [0.2, 0.5, 0.3], [0.4, 0.1, 0.5]).unwrap();
        let d1 = e.llr_distribution(State::One);
        let d0 = e.llr_distribution(State::Zero);
        assert_relative_eq!(d0.min_value(), -d1.max_value(), max_relative = 1e-12);
        assert_relative_eq!(d0.max_value(), -d1.min_value(), max_relative = 1e-12);
    }

    #[test]
    fn trivial_llr_is_point_mass_at_zero() {
        let e = FiniteExperiment::new(["a", "b"], [0.5, 0.5], [0.5, 0.5]).unwrap();
        let d = e.llr_distribution(State::One);
        assert_eq!(d.len(), 1);
        assert!(d.min_value().abs() < 1e-15);
    }

    #[test]
    fn power_llr_two_samples() {
        // two samples of the accuracy-0.8 symmetric binary, state 1:
        // atoms at -2L, 0, 2L with probabilities 0.04, 0.32, 0.64
        let e = symmetric_binary(0.8);
        let d = e.power_llr(2, State::One).unwrap();
        let l = (4.0_f64).ln();
        assert_eq!(d.len(), 3);
        assert_relative_eq!(d.atoms()[0].value, -2.0 * l, max_relative = 1e-12);
        assert_relative_eq!(d.atoms()[0].prob, 0.04, max_relative = 1e-10);
        assert!(d.atoms()[1].value.abs() < 1e-12);
        assert_relative_eq!(d.atoms()[1].prob, 0.32, max_relative = 1e-10);
        assert_relative_eq!(d.atoms()[2].prob, 0.64, max_relative = 1e-10);
    }

    #[test]
    fn power_llr_n1_equals_llr() {
        let e = symmetric_binary(0.7);
        assert_eq!(
            e.power_llr(1, State::One).unwrap(),
            e.llr_distribution(State::One)
        );
    }

    #[test]
    fn power_llr_change_of_measure_holds() {
        let e = FiniteExperiment::new(["a", "b", "c"], [0.25, 0.3, 0.45], [0.5, 0.2, 0.3]).unwrap();
        for n in [1, 5, 12, 20] {
            let d = e.power_llr(n, State::One).unwrap();
            let mass: f64 = d.atoms().iter().map(|a| a.prob).sum();
            assert!((mass - 1.0).abs() < 1e-9, "mass at n={n}: {mass}");
            assert!(
                d.change_of_measure_gap() < 1e-9,
                "com gap at n={n}: {}",
                d.change_of_measure_gap()
            );
        }
    }

    #[test]
    fn product_of_sizes() {
        let p = symmetric_binary(0.8);
        let q = FiniteExperiment::new(["a", "b", "c"], [0.2, 0.5, 0.3], [0.4, 0.1, 0.5]).unwrap();
        let pq = p.product(&q).unwrap();
        assert_eq!(pq.len(), 6);
        // product measure: first entry = 0.8·0.2 under state 0
        assert_relative_eq!(pq.pmf(State::Zero)[0], 0.16, max_relative = 1e-12);
    }

    #[test]
    fn product_llr_is_sumset() {
        // hand enumeration of the four outcome pairs of P⊗P for the swap
        // pair P = (1/3, 2/3 / 2/3, 1/3), state 1:
        //   (w, w):  LLR 2·ln2  with prob 4/9
        //   (w, w'), (w', w): LLR 0 with prob 2·2/9
        //   (w', w'): LLR −2·ln2 with prob 1/9
        let p = FiniteExperiment::new(["w", "w'"], [1.0 / 3.0, 2.0 / 3.0], [2.0 / 3.0, 1.0 / 3.0])
            .unwrap();
        let direct = p.product(&p).unwrap().llr_distribution(State::One);
        let two_l = 2.0 * (2.0_f64).ln();
        assert_eq!(direct.len(), 3);
        assert_relative_eq!(direct.atoms()[0].value, -two_l, epsilon = 1e-12);
        assert_relative_eq!(direct.atoms()[0].prob, 1.0 / 9.0, epsilon = 1e-12);
        assert!(direct.atoms()[1].value.abs() < 1e-12);
        assert_relative_eq!(direct.atoms()[1].prob, 4.0 / 9.0, epsilon = 1e-12);
        assert_relative_eq!(direct.atoms()[2].value, two_l, epsilon = 1e-12);
        assert_relative_eq!(direct.atoms()[2].prob, 4.0 / 9.0, epsilon = 1e-12);
        // and the sumset route agrees atom by atom
        let convolved = p
            .llr_distribution(State::One)
            .convolve(&p.llr_distribution(State::One));
        assert_eq!(direct.len(), convolved.len());
        for (a, b) in direct.atoms().iter().zip(convolved.atoms()) {
            assert_relative_eq!(a.value, b.value, epsilon = 1e-12);
            assert_relative_eq!(a.prob, b.prob, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_cap() {
        let q = FiniteExperiment::new(["a", "b", "c"], [0.2, 0.5, 0.3], [0.4, 0.1, 0.5]).unwrap();
        assert!(matches!(
            q.product_capped(&q, 8),
            Err(Error::SizeOverflow { .. })
        ));
    }

    #[test]
    fn mixture_alpha_one_keeps_p() {
        let p = symmetric_binary(0.8);
        let q = symmetric_binary(0.6);
        let m = p.mixture(&q, 1.0).unwrap();
        assert_eq!(m.len(), 2);
        assert_relative_eq!(m.pmf(State::Zero)[0], 0.8, max_relative = 1e-12);
    }

    #[test]
    fn mixture_of_identical_preserves_posteriors() {
        let p = symmetric_binary(0.8);
        let m = p.mixture(&p, 0.5).unwrap();
        let a = m.posterior_distribution();
        let b = p.posterior_distribution();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.atoms().iter().zip(b.atoms()) {
            assert_relative_eq!(x.belief, y.belief, epsilon = 1e-12);
            assert_relative_eq!(x.prob, y.prob, epsilon = 1e-12);
        }
    }

    #[test]
    fn garble_identity_is_noop() {
        let p = symmetric_binary(0.8);
        let g = p.garble(&Garbling::identity(2)).unwrap();
        assert_eq!(g.pmf(State::Zero), p.pmf(State::Zero));
        assert_eq!(g.pmf(State::One), p.pmf(State::One));
    }

    #[test]
    fn garble_dimension_mismatch() {
        let p = symmetric_binary(0.8);
        assert!(matches!(
            p.garble(&Garbling::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn garble_drops_zero_columns() {
        let p = symmetric_binary(0.8);
        let sigma = Garbling::new(alloc::vec![
            alloc::vec![1.0, 0.0, 0.0],
            alloc::vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let g = p.garble(&sigma).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.is_trivial());
    }

    #[test]
    fn posterior_of_trivial_is_half() {
        let e = FiniteExperiment::new(["a", "b"], [0.5, 0.5], [0.5, 0.5]).unwrap();
        let pi = e.posterior_distribution();
        assert_eq!(pi.len(), 1);
        assert_relative_eq!(pi.atoms()[0].belief, 0.5, epsilon = 1e-12);
        assert_relative_eq!(pi.atoms()[0].prob, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn posterior_of_swap_pair() {
        let p = FiniteExperiment::new(["w", "w'"], [1.0 / 3.0, 2.0 / 3.0], [2.0 / 3.0, 1.0 / 3.0])
            .unwrap();
        let pi = p.posterior_distribution();
        assert_eq!(pi.len(), 2);
        assert_relative_eq!(pi.atoms()[0].belief, 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(pi.atoms()[0].prob, 0.5, epsilon = 1e-12);
        assert_relative_eq!(pi.atoms()[1].belief, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(pi.atoms()[1].prob, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn posterior_conditional_ratio_identity() {
        // per atom: prob1/prob0 = belief/(1-belief)
        let e = FiniteExperiment::new(["a", "b", "c"], [0.25, 0.3, 0.45], [0.5, 0.2, 0.3]).unwrap();
        let pi = e.posterior_distribution();
        assert_relative_eq!(pi.mean_belief(), 0.5, epsilon = 1e-12);
        for atom in pi.atoms() {
            assert_relative_eq!(
                atom.prob1 / atom.prob0,
                atom.belief / (1.0 - atom.belief),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn posterior_llr_consistency() {
        // belief = e^u / (1 + e^u) over the atoms of the state-1 LLR
        let e = FiniteExperiment::new(["a", "b", "c"], [0.25, 0.3, 0.45], [0.5, 0.2, 0.3]).unwrap();
        let pi = e.posterior_distribution();
        let llr = e.llr_distribution(State::One);
        // distinct LLR values correspond 1:1 to distinct beliefs
        assert_eq!(pi.len(), llr.len());
        for (p_atom, l_atom) in pi.atoms().iter().zip(llr.atoms()) {
            let eu = l_atom.value.exp();
            assert_relative_eq!(p_atom.belief, eu / (1.0 + eu), epsilon = 1e-9);
        }
    }

    #[test]
    fn genericity() {
        let p = symmetric_binary(0.8);
        let q = symmetric_binary(0.65);
        assert!(is_generic_pair(&p, &q));
        assert!(!is_generic_pair(&p, &p));
    }

    #[test]
    fn ternary_pair_is_generic() {
        let p = FiniteExperiment::new(
            ["x1", "x2", "x3"],
            [1.0 / 16.0, 0.5, 7.0 / 16.0],
            [7.0 / 16.0, 0.5, 1.0 / 16.0],
        )
        .unwrap();
        let q = symmetric_binary(0.25);
        // endpoints log(7) vs log(3) differ
        assert!(is_generic_pair(&p, &q));
    }
}
