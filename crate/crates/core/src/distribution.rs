//! Finitely supported real-valued distributions (atom lists).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::{math, values_close, DEFAULT_ENUM_CAP};

/// One atom of a discrete distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    /// Location, in log-likelihood-ratio units (nats) when the distribution
    /// is an LLR distribution.
    pub value: f64,
    pub prob: f64,
}

/// A finitely supported distribution on the reals, with atoms sorted
/// strictly ascending in value. Atoms whose values agree within the merge
/// tolerance are collapsed into one.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicDistribution {
    atoms: Vec<Atom>,
}

impl AtomicDistribution {
    /// Builds a distribution from raw `(value, prob)` pairs: sorts, merges
    /// nearby values (probability-weighted), validates positivity and total
    /// mass, and renormalizes the (tiny) float residual away.
    pub fn new(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        for (i, &(v, p)) in pairs.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::DomainError(alloc::format!(
                    "atom value {v} is not finite"
                )));
            }
            if !(p > 0.0) {
                return Err(Error::ZeroEntry { index: i, value: p });
            }
        }
        if pairs.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let atoms = merge_sorted(&pairs);
        let mass = math::stable_sum(atoms.iter().map(|a| a.prob));
        if math::abs(mass - 1.0) > 1e-9 {
            return Err(Error::RowSumMismatch {
                state: 0,
                sum: mass,
            });
        }
        let atoms = atoms
            .into_iter()
            .map(|a| Atom {
                value: a.value,
                prob: a.prob / mass,
            })
            .collect();
        Ok(Self { atoms })
    }

    /// The point mass at `value`.
    pub fn point_mass(value: f64) -> Self {
        Self {
            atoms: vec![Atom { value, prob: 1.0 }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn min_value(&self) -> f64 {
        self.atoms[0].value
    }

    pub fn max_value(&self) -> f64 {
        self.atoms[self.atoms.len() - 1].value
    }

    /// Probability of the largest atom.
    pub fn top_mass(&self) -> f64 {
        self.atoms[self.atoms.len() - 1].prob
    }

    /// Probability of the smallest atom.
    pub fn bottom_mass(&self) -> f64 {
        self.atoms[0].prob
    }

    pub fn mean(&self) -> f64 {
        math::stable_sum(self.atoms.iter().map(|a| a.value * a.prob))
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        math::stable_sum(self.atoms.iter().map(|a| {
            let d = a.value - m;
            d * d * a.prob
        }))
        .max(0.0)
    }

    /// Cumulative distribution function `Pr{X ≤ a}`; values within the merge
    /// tolerance of `a` count as equal.
    pub fn cdf(&self, a: f64) -> f64 {
        math::stable_sum(
            self.atoms
                .iter()
                .filter(|atom| atom.value <= a || values_close(atom.value, a))
                .map(|atom| atom.prob),
        )
    }

    /// Upper tail `Pr{X > a}` (strict) or `Pr{X ≥ a}`.
    pub fn tail_prob(&self, a: f64, strict: bool) -> f64 {
        math::stable_sum(
            self.atoms
                .iter()
                .filter(|atom| {
                    let eq = values_close(atom.value, a);
                    if strict {
                        atom.value > a && !eq
                    } else {
                        atom.value > a || eq
                    }
                })
                .map(|atom| atom.prob),
        )
    }

    /// Distribution of `−X`.
    pub fn negate(&self) -> Self {
        let mut atoms: Vec<Atom> = self
            .atoms
            .iter()
            .map(|a| Atom {
                value: -a.value,
                prob: a.prob,
            })
            .collect();
        atoms.reverse();
        Self { atoms }
    }

    /// Distribution of `X + Y` for independent `X ~ self`, `Y ~ other`.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut pairs = Vec::with_capacity(self.len() * other.len());
        for a in &self.atoms {
            for b in &other.atoms {
                pairs.push((a.value + b.value, a.prob * b.prob));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self {
            atoms: merge_sorted(&pairs),
        }
    }

    /// Mixture Σ wᵢ·Dᵢ. Weights must be nonnegative and sum to 1 within
    /// tolerance; zero-weight components are dropped.
    pub fn mixture(parts: &[(f64, &Self)]) -> Result<Self> {
        let total = math::stable_sum(parts.iter().map(|(w, _)| *w));
        if math::abs(total - 1.0) > 1e-9 {
            return Err(Error::RowSumMismatch {
                state: 0,
                sum: total,
            });
        }
        let mut pairs = Vec::new();
        for &(w, d) in parts {
            if w < 0.0 {
                return Err(Error::DomainError(alloc::format!(
                    "negative mixture weight {w}"
                )));
            }
            if w == 0.0 {
                continue;
            }
            pairs.extend(d.atoms.iter().map(|a| (a.value, w * a.prob / total)));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self {
            atoms: merge_sorted(&pairs),
        })
    }

    /// Number of multinomial count vectors the `n`-fold convolution power
    /// enumerates: C(n+m−1, m−1) for `m` atoms.
    pub fn power_enum_size(&self, n: usize) -> u128 {
        compositions_count(n, self.len())
    }

    /// Distribution of `X₁ + ... + X_n` for i.i.d. copies of `X ~ self`,
    /// computed by enumerating multinomial count vectors over the atoms with
    /// exact multinomial weights. Equals the n-fold convolution `F^{*n}`.
    pub fn power_convolve(&self, n: usize, enum_cap: u128) -> Result<Self> {
        if n == 0 {
            return Ok(Self::point_mass(0.0));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let size = self.power_enum_size(n);
        if size > enum_cap {
            return Err(Error::SizeOverflow {
                size,
                cap: enum_cap,
            });
        }
        let m = self.len();
        let ln_n_fact = math::ln_gamma(n as f64 + 1.0);
        let ln_p: Vec<f64> = self.atoms.iter().map(|a| math::ln(a.prob)).collect();
        let values: Vec<f64> = self.atoms.iter().map(|a| a.value).collect();
        let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(size as usize);
        let mut counts = vec![0usize; m];
        visit_compositions(&mut counts, 0, n, &mut |counts| {
            let mut log_w = ln_n_fact;
            let mut value = 0.0;
            for (i, &k) in counts.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                log_w += k as f64 * ln_p[i] - math::ln_gamma(k as f64 + 1.0);
                value += k as f64 * values[i];
            }
            let w = math::exp(log_w);
            if w > 0.0 {
                pairs.push((value, w));
            }
        });
        pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        let atoms = merge_sorted(&pairs);
        Ok(Self { atoms })
    }

    /// |∑ e⁻ᵘ p(u) − 1|: the residual of the change-of-measure identity that
    /// every state-1 LLR distribution satisfies.
    pub fn change_of_measure_gap(&self) -> f64 {
        let s = math::stable_sum(self.atoms.iter().map(|a| math::exp(-a.value) * a.prob));
        math::abs(s - 1.0)
    }
}

/// C(n+m−1, m−1), saturating.
fn compositions_count(n: usize, m: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 1..m {
        c = c.saturating_mul((n + i) as u128) / i as u128;
        if c > u128::MAX / 2 {
            return u128::MAX;
        }
    }
    c
}

fn visit_compositions(
    counts: &mut [usize],
    idx: usize,
    remaining: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if idx + 1 == counts.len() {
        counts[idx] = remaining;
        f(counts);
        return;
    }
    for k in 0..=remaining {
        counts[idx] = k;
        visit_compositions(counts, idx + 1, remaining - k, f);
    }
    counts[idx] = 0;
}

/// Merges a value-sorted pair list into atoms, collapsing runs of values
/// within the merge tolerance of the run anchor. Merged values are the
/// probability-weighted mean of the run.
fn merge_sorted(pairs: &[(f64, f64)]) -> Vec<Atom> {
    let mut atoms: Vec<Atom> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let anchor = pairs[i].0;
        let mut mass = 0.0;
        let mut weighted = 0.0;
        let mut j = i;
        while j < pairs.len() && values_close(anchor, pairs[j].0) {
            mass += pairs[j].1;
            weighted += pairs[j].0 * pairs[j].1;
            j += 1;
        }
        if mass > 0.0 {
            atoms.push(Atom {
                value: weighted / mass,
                prob: mass,
            });
        }
        i = j;
    }
    atoms
}

/// Convenience: `power_convolve` with the default enumeration cap.
pub fn power_convolve_default(x: &AtomicDistribution, n: usize) -> Result<AtomicDistribution> {
    x.power_convolve(n, DEFAULT_ENUM_CAP)
}
