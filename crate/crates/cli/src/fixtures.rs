//! Concrete experiment pairs from the literature, constructed exactly.

use anyhow::{bail, Result};

use blackwell::experiment::Garbling;
use blackwell::renyi::RenyiProfile;
use blackwell::uniform_linear;
use blackwell::{FiniteExperiment, State};

/// The two-outcome pair with R_P¹ > R_Q¹ everywhere but R_P⁰ < R_Q⁰ for
/// orders above 2: P = (1/3, 2/3 / 2/3, 1/3), Q = (6/9, 3/9 / 8/9, 1/9).
pub fn one_sided_pair() -> (FiniteExperiment, FiniteExperiment) {
    let p = FiniteExperiment::new(
        ["w", "w'"],
        vec![1.0 / 3.0, 2.0 / 3.0],
        vec![2.0 / 3.0, 1.0 / 3.0],
    )
    .expect("valid");
    let q = FiniteExperiment::new(
        ["w", "w'"],
        vec![6.0 / 9.0, 3.0 / 9.0],
        vec![8.0 / 9.0, 1.0 / 9.0],
    )
    .expect("valid");
    (p, q)
}

/// The uniform-vs-linear-density experiment discretized to `n_bins`,
/// paired with the binary experiment Q₀ = (1/2, 1/2), Q₁ = (1−p, p).
pub fn uniform_linear_pair(p: f64, n_bins: usize) -> Result<(FiniteExperiment, FiniteExperiment)> {
    if !(0.5 < p && p < 1.0) {
        bail!("uniform_linear_pair needs p in (1/2, 1)");
    }
    let cont = uniform_linear::discretize(n_bins)?;
    let q = FiniteExperiment::new(["0", "1"], vec![0.5, 0.5], vec![1.0 - p, p])?;
    Ok((cont, q))
}

/// Closed-form profiles of the continuous side of `uniform_linear_pair`.
pub fn uniform_linear_profiles(t_max: f64, points: usize) -> Result<(RenyiProfile, RenyiProfile)> {
    Ok((
        uniform_linear::profile(State::Zero, t_max, points)?,
        uniform_linear::profile(State::One, t_max, points)?,
    ))
}

/// The two-bin threshold garbling of `uniform_linear_pair`'s continuous experiment.
pub fn uniform_linear_threshold_garbling(n_bins: usize) -> Result<Garbling> {
    Ok(uniform_linear::threshold_garbling(n_bins)?)
}

/// The three-outcome vs binary pair parametrized by (α, β):
/// P = (β, 1/2, 1/2−β / 1/2−β, 1/2, β), Q = (α, 1−α / 1−α, α).
pub fn ternary_vs_binary(alpha: f64, beta: f64) -> Result<(FiniteExperiment, FiniteExperiment)> {
    if !(0.0 < beta && beta < 0.25) {
        bail!("ternary_vs_binary needs beta in (0, 1/4)");
    }
    if !(0.0 < alpha && alpha < 0.5) {
        bail!("ternary_vs_binary needs alpha in (0, 1/2)");
    }
    let p = FiniteExperiment::new(
        ["x1", "x2", "x3"],
        vec![beta, 0.5, 0.5 - beta],
        vec![0.5 - beta, 0.5, beta],
    )?;
    let q = FiniteExperiment::new(
        ["y1", "y2"],
        vec![alpha, 1.0 - alpha],
        vec![1.0 - alpha, alpha],
    )?;
    Ok((p, q))
}

/// The check √(α(1−α)) > √(β(1/2−β)) + 1/4, equivalent to the order-1/2
/// Rényi comparison for the `ternary_vs_binary` family; returns the margin.
pub fn order_half_margin(alpha: f64, beta: f64) -> f64 {
    (alpha * (1.0 - alpha)).sqrt() - (beta * (0.5 - beta)).sqrt() - 0.25
}

/// The non-generic perturbation of `ternary_vs_binary(1/4, 1/16)`: both experiments
/// gain an outcome with likelihood ratio exactly 100. Requires
/// ε ∈ (0, 1/1600) so all entries stay positive.
pub fn shared_top_pair(eps: f64) -> Result<(FiniteExperiment, FiniteExperiment)> {
    if !(0.0 < eps && eps < 1.0 / 1600.0) {
        bail!("shared_top_pair needs eps in (0, 1/1600) to keep probabilities positive");
    }
    let p = FiniteExperiment::new(
        ["x0", "x1", "x2", "x3"],
        vec![eps, 1.0 / 16.0, 0.5, 7.0 / 16.0 - eps],
        vec![100.0 * eps, 7.0 / 16.0, 0.5, 1.0 / 16.0 - 100.0 * eps],
    )?;
    let q = FiniteExperiment::new(
        ["y0", "y1", "y2"],
        vec![eps, 0.25, 0.75 - eps],
        vec![100.0 * eps, 0.75, 0.25 - 100.0 * eps],
    )?;
    Ok((p, q))
}

/// The symmetric binary experiment with accuracy q (trivial at q = 1/2).
pub fn symmetric(q: f64) -> Result<FiniteExperiment> {
    if !(0.0 < q && q < 1.0) {
        bail!("symmetric needs q in (0, 1)");
    }
    Ok(FiniteExperiment::new(
        ["h", "t"],
        vec![q, 1.0 - q],
        vec![1.0 - q, q],
    )?)
}
