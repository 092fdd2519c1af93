//! The deterministic fixture checks behind `blackwell paper-suite`.

use anyhow::Result;

use blackwell::blackwell::{
    blackwell_dominates, expected_indirect_utility, verify_garbling, BlackwellVerdict, CompareMode,
    ConvexUtility,
};
use blackwell::large_deviations::{cgf, sample_bound};
use blackwell::large_sample::{catalyst, dominance_vector};
use blackwell::renyi::{
    experiment_renyi, renyi_grid, renyi_order_check, renyi_order_check_profiles, renyi_profile,
    RenyiOrderVerdict,
};
use blackwell::{FiniteExperiment, State};

use crate::fixtures;

/// ε for the non-generic counterexample: the largest round value keeping
/// the brute-force anti-dominance witnesses above the 1e-9 comparison
/// tolerance through n = 6 (the witnesses scale like (100ε)^{n−1}).
pub const SHARED_TOP_EPS: f64 = 2e-4;

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(
    results: &mut Vec<CheckResult>,
    name: &'static str,
    body: impl FnOnce() -> Result<(bool, String)>,
) {
    let (passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e:#}")),
    };
    results.push(CheckResult {
        name,
        passed,
        detail,
    });
}

/// Runs every fixture check; deterministic.
pub fn run_paper_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();

    check(&mut out, "one-sided-state1-dominance", || {
        let (p, q) = fixtures::one_sided_pair();
        let grid = renyi_grid(64.0, 512);
        let mut min_margin = f64::INFINITY;
        for &t in &grid {
            let d = experiment_renyi(&p, State::One, t)? - experiment_renyi(&q, State::One, t)?;
            min_margin = min_margin.min(d);
        }
        Ok((
            min_margin > 1e-9,
            format!("min margin over 512 points: {min_margin:.3e}"),
        ))
    });

    check(&mut out, "one-sided-state0-reversal", || {
        let (p, q) = fixtures::one_sided_pair();
        let r3p = experiment_renyi(&p, State::Zero, 3.0)?;
        let r3q = experiment_renyi(&q, State::Zero, 3.0)?;
        let verdict = renyi_order_check(&p, &q, 64.0, 512);
        let witness_ok = matches!(
            verdict,
            RenyiOrderVerdict::FailsAt { theta: State::Zero, t, .. } if t > 2.0
        );
        Ok((
            r3p < r3q - 1e-9 && witness_ok,
            format!("R_P0(3)={r3p:.6} < R_Q0(3)={r3q:.6}; verdict {verdict:?}"),
        ))
    });

    check(&mut out, "uniform-linear-threshold-garbling", || {
        let (p2, _) = fixtures::uniform_linear_pair(0.63, 2)?;
        let q = FiniteExperiment::new(["0", "1"], vec![0.5, 0.5], vec![0.375, 0.625])?;
        let sigma = fixtures::uniform_linear_threshold_garbling(2)?;
        let witnessed = verify_garbling(&p2, &q, &sigma)?;
        let verdict = blackwell_dominates(&p2, &q, CompareMode::CrossValidate)?;
        Ok((
            witnessed && verdict == BlackwellVerdict::Equivalent,
            format!("garbling witnessed: {witnessed}; verdict {verdict:?}"),
        ))
    });

    check(&mut out, "uniform-linear-matching-payoff", || {
        let (p1000, q) = fixtures::uniform_linear_pair(0.63, 1000)?;
        let v = ConvexUtility::matching();
        let up = expected_indirect_utility(&p1000, &v);
        let uq = expected_indirect_utility(&q, &v);
        Ok((
            uq > up + 1e-6,
            format!("Q payoff {uq:.6} vs discretized-P payoff {up:.6}"),
        ))
    });

    check(&mut out, "uniform-linear-renyi-order", || {
        let (pp0, pp1) = fixtures::uniform_linear_profiles(64.0, 512)?;
        let (_, q) = fixtures::uniform_linear_pair(0.63, 2)?;
        let qp0 = renyi_profile(&q, State::Zero, 64.0, 512)?;
        let qp1 = renyi_profile(&q, State::One, 64.0, 512)?;
        let verdict = renyi_order_check_profiles(&pp0, &pp1, &qp0, &qp1)?;
        let all_above = pp0.values.iter().zip(&qp0.values).all(|(a, b)| a > b);
        Ok((
            verdict.dominates() && all_above,
            format!("profile verdict {verdict:?}; R_P0 > R_Q0 everywhere: {all_above}"),
        ))
    });

    check(&mut out, "ternary-nonmonotone-vector", || {
        let (p, q) = fixtures::ternary_vs_binary(0.305, 0.1)?;
        let report = dominance_vector(&p, &q, 3)?;
        let expected = [
            BlackwellVerdict::Incomparable,
            BlackwellVerdict::Dominates,
            BlackwellVerdict::Incomparable,
        ];
        Ok((
            report.vector == expected,
            format!("vector: {:?}", report.vector),
        ))
    });

    check(&mut out, "ternary-order-half-sufficiency", || {
        let (p, q) = fixtures::ternary_vs_binary(0.25, 1.0 / 16.0)?;
        let margin = fixtures::order_half_margin(0.25, 1.0 / 16.0);
        let verdict = renyi_order_check(&p, &q, 64.0, 512);
        let report = dominance_vector(&p, &q, 16)?;
        Ok((
            margin > 0.0 && verdict.dominates() && report.minimal_n == Some(4),
            format!(
                "condition margin {margin:.4}; renyi {verdict:?}; minimal n {:?}",
                report.minimal_n
            ),
        ))
    });

    check(&mut out, "shared-top-counterexample", || {
        let (pt, qt) = fixtures::shared_top_pair(SHARED_TOP_EPS)?;
        let generic = blackwell::experiment::is_generic_pair(&pt, &qt);
        let renyi = renyi_order_check(&pt, &qt, 64.0, 512);
        let report = dominance_vector(&pt, &qt, 6)?;
        let never_dominates = report
            .vector
            .iter()
            .all(|v| *v == BlackwellVerdict::Incomparable);
        let mut payoffs_ok = true;
        for n in 1..=4usize {
            let pow = |x: f64| x.powi(n as i32 - 1);
            let pbar = pow(100.0) / (pow(100.0) + 1.0);
            let v = ConvexUtility::call_on_belief(pbar)?;
            let up = expected_indirect_utility(&pt.power(n, 1_000_000)?, &v);
            let uq = expected_indirect_utility(&qt.power(n, 1_000_000)?, &v);
            payoffs_ok &= uq > up;
        }
        Ok((
            !generic && renyi.dominates() && never_dominates && payoffs_ok,
            format!(
                "generic {generic}; renyi {renyi:?}; all-incomparable(6) {never_dominates}; Q-wins(1..4) {payoffs_ok}"
            ),
        ))
    });

    check(&mut out, "cgf-is-renyi-transform", || {
        let (p, _) = fixtures::one_sided_pair();
        let x1 = p.llr_distribution(State::One);
        let mut worst = 0.0_f64;
        for t in [-0.5, -0.25, 0.5, 1.0, 3.0, 10.0] {
            let gap = (cgf(&x1, t) - t * experiment_renyi(&p, State::One, t + 1.0)?).abs();
            worst = worst.max(gap);
        }
        Ok((worst < 1e-9, format!("max identity gap {worst:.2e}")))
    });

    check(&mut out, "catalyst-ternary-n2", || {
        let (p, q) = fixtures::ternary_vs_binary(0.305, 0.1)?;
        let r = catalyst(&p, &q, 2)?;
        let pr = p.product(&r)?;
        let qr = q.product(&r)?;
        let verdict = blackwell_dominates(&pr, &qr, CompareMode::Perfected)?;
        Ok((
            verdict.dominates_weakly(),
            format!("verdict on the {}-outcome products: {verdict:?}", pr.len()),
        ))
    });

    check(&mut out, "sample-bound-binaries", || {
        let p = fixtures::symmetric(0.8)?;
        let q = fixtures::symmetric(0.65)?;
        let s = sample_bound(&p, &q)?;
        let b_ok = (s.b - (4.0_f64).ln()).abs() < 1e-12;
        Ok((
            b_ok && s.eta == 0.0625 && s.n0 == 62974,
            format!("b={:.6} eta={} n0={}", s.b, s.eta, s.n0),
        ))
    });

    check(&mut out, "symmetric-half-is-trivial", || {
        let e = fixtures::symmetric(0.5)?;
        Ok((e.is_trivial(), String::from("Q(1/2) has P0 = P1")))
    });

    out
}
