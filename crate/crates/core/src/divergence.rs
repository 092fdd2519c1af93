//! Additive divergences represented as positive combinations of Rényi
//! divergences, with property checks for additivity and data processing.
//!
//! D(μ,ν) = ∑ w·R_t(μ‖ν) over the m₀ atoms + ∑ w·R_t(ν‖μ) over the m₁
//! atoms, with orders t ∈ [1/2, ∞]. Finitely supported measures only;
//! general measures are approximated by atoms.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::experiment::Garbling;
use crate::math;
use crate::renyi::renyi_divergence;

/// A finitely supported pair of measures (m₀, m₁) on [1/2, ∞]; each atom
/// is (order t, nonnegative weight). `t = f64::INFINITY` is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceSpec {
    m0: Vec<(f64, f64)>,
    m1: Vec<(f64, f64)>,
}

impl DivergenceSpec {
    pub fn new(m0: Vec<(f64, f64)>, m1: Vec<(f64, f64)>) -> Result<Self> {
        for &(t, w) in m0.iter().chain(&m1) {
            if !(t >= 0.5) {
                return Err(Error::DomainError(alloc::format!(
                    "order {t} below 1/2 is redundant: use the mirrored state"
                )));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::DomainError(alloc::format!("weight {w} invalid")));
            }
        }
        Ok(Self { m0, m1 })
    }

    /// m₀ = δ₁ (unit mass at t = 1), m₁ = 0: the Kullback-Leibler divergence.
    pub fn kullback_leibler() -> Self {
        Self {
            m0: alloc::vec![(1.0, 1.0)],
            m1: Vec::new(),
        }
    }

    pub fn m0(&self) -> &[(f64, f64)] {
        &self.m0
    }

    pub fn m1(&self) -> &[(f64, f64)] {
        &self.m1
    }

    pub fn total_mass(&self) -> f64 {
        math::stable_sum(self.m0.iter().chain(&self.m1).map(|&(_, w)| w))
    }
}

/// Evaluates the represented divergence on a pair of strictly positive
/// pmfs over a common support.
pub fn divergence_eval(spec: &DivergenceSpec, mu: &[f64], nu: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &(t, w) in spec.m0() {
        if w == 0.0 {
            continue;
        }
        total += w * renyi_divergence(mu, nu, t)?;
    }
    for &(t, w) in spec.m1() {
        if w == 0.0 {
            continue;
        }
        total += w * renyi_divergence(nu, mu, t)?;
    }
    Ok(total)
}

fn product_pmf(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Additivity: D(μ₁×μ₂, ν₁×ν₂) = D(μ₁,ν₁) + D(μ₂,ν₂) within `tol`.
pub fn check_additivity(
    spec: &DivergenceSpec,
    mu1: &[f64],
    nu1: &[f64],
    mu2: &[f64],
    nu2: &[f64],
    tol: f64,
) -> Result<bool> {
    let joint = divergence_eval(spec, &product_pmf(mu1, mu2), &product_pmf(nu1, nu2))?;
    let split = divergence_eval(spec, mu1, nu1)? + divergence_eval(spec, mu2, nu2)?;
    Ok(math::abs(joint - split) <= tol)
}

/// Data processing inequality: D(σμ, σν) ≤ D(μ,ν) + `tol` for a common
/// garbling σ.
pub fn check_dpi(
    spec: &DivergenceSpec,
    mu: &[f64],
    nu: &[f64],
    sigma: &Garbling,
    tol: f64,
) -> Result<bool> {
    if sigma.rows() != mu.len() || mu.len() != nu.len() {
        return Err(Error::DimensionMismatch {
            expected: sigma.rows(),
            got: mu.len(),
        });
    }
    let smu = sigma.apply(mu)?;
    let snu = sigma.apply(nu)?;
    if smu.iter().chain(&snu).any(|&v| v <= 0.0) {
        return Err(Error::DomainError(String::from(
            "garbled measures must stay strictly positive on a common support",
        )));
    }
    let before = divergence_eval(spec, mu, nu)?;
    let after = divergence_eval(spec, &smu, &snu)?;
    Ok(after <= before + tol)
}
