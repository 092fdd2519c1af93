//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its measured numbers (run with --nocapture to see them).

use blackwell::blackwell::{
    blackwell_dominates, expected_indirect_utility, llr_fosd, mps_check, verify_garbling,
    BlackwellVerdict, CompareMode, ConvexUtility,
};
use blackwell::divergence::{check_additivity, check_dpi, divergence_eval, DivergenceSpec};
use blackwell::large_deviations::{chernoff_bound, exact_tail, ld_lower_bound, sample_bound};
use blackwell::large_sample::{catalyst, dominance_vector};
use blackwell::majorization::{
    entropy_derivative_at_zero, entropy_majorization_check, majorizes, renyi_entropy, FinitePmf,
};
use blackwell::multistate::{
    multistate_necessary, v_convexity, v_directional_second_derivative, Curvature, DirectionGrid,
    MultiStateExperiment,
};
use blackwell::renyi::{
    experiment_renyi, renyi_grid, renyi_order_check, renyi_order_check_profiles, renyi_profile,
    RenyiOrderVerdict,
};
use blackwell::{AtomicDistribution, FiniteExperiment, State};
use blackwell_cli::fixtures;
use blackwell_cli::suite::SHARED_TOP_EPS;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_pmf(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

fn random_experiment(rng: &mut ChaCha8Rng, min_m: usize, max_m: usize) -> FiniteExperiment {
    let m = rng.gen_range(min_m..=max_m);
    let labels: Vec<String> = (0..m).map(|i| format!("o{i}")).collect();
    let p0 = random_pmf(rng, m);
    let p1 = random_pmf(rng, m);
    FiniteExperiment::new(labels, p0, p1).unwrap()
}

fn random_garbling(rng: &mut ChaCha8Rng, m: usize, k: usize) -> blackwell::Garbling {
    let rows = (0..m).map(|_| random_pmf(rng, k)).collect();
    blackwell::Garbling::new(rows).unwrap()
}

#[test]
fn criterion_01_one_sided_asymmetry() {
    let (p, q) = fixtures::one_sided_pair();
    let grid = renyi_grid(64.0, 512);
    assert_eq!(grid.len(), 512);
    let mut min_margin = f64::INFINITY;
    for &t in &grid {
        let d = experiment_renyi(&p, State::One, t).unwrap()
            - experiment_renyi(&q, State::One, t).unwrap();
        min_margin = min_margin.min(d);
    }
    assert!(
        min_margin > 1e-9,
        "state-1 dominance must be strict on all 512 points; min margin {min_margin:e}"
    );
    let r3p = experiment_renyi(&p, State::Zero, 3.0).unwrap();
    let r3q = experiment_renyi(&q, State::Zero, 3.0).unwrap();
    assert!(
        r3p < r3q - 1e-9,
        "state-0 comparison must reverse at order 3: {r3p} vs {r3q}"
    );
    println!("criterion 1 PASS: min state-1 margin {min_margin:.3e}; R0(3): {r3p:.6} < {r3q:.6}");
}

#[test]
fn criterion_02_uniform_linear() {
    // (a) the threshold garbling witnesses dominance onto Q(p = 0.625)
    let (p2, _) = fixtures::uniform_linear_pair(0.63, 2).unwrap();
    let q0625 = FiniteExperiment::new(["0", "1"], vec![0.5, 0.5], vec![0.375, 0.625]).unwrap();
    let sigma = fixtures::uniform_linear_threshold_garbling(2).unwrap();
    assert!(verify_garbling(&p2, &q0625, &sigma).unwrap());

    // (b) at p = 0.63 the matching payoff favors Q over the 1000-bin
    // discretization, yet the closed-form profiles dominate on the grid
    let (p1000, q) = fixtures::uniform_linear_pair(0.63, 1000).unwrap();
    let v = ConvexUtility::matching();
    let up = expected_indirect_utility(&p1000, &v);
    let uq = expected_indirect_utility(&q, &v);
    assert!(uq > up + 1e-6, "Q payoff {uq} must exceed P payoff {up}");
    let (pp0, pp1) = fixtures::uniform_linear_profiles(64.0, 512).unwrap();
    let qp0 = renyi_profile(&q, State::Zero, 64.0, 512).unwrap();
    let qp1 = renyi_profile(&q, State::One, 64.0, 512).unwrap();
    let verdict = renyi_order_check_profiles(&pp0, &pp1, &qp0, &qp1).unwrap();
    assert_eq!(verdict, RenyiOrderVerdict::DominatesOnGrid);

    // (c) the plot-data CSV has R_P0 > R_Q0 at every grid order
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_blackwell"))
        .args(["plot-data", "--uniform-linear", "--p-param", "0.63"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut rows = 0;
    for line in csv.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), 5);
        assert!(
            cells[1] > cells[2],
            "R_P0 must stay above R_Q0 at t={}",
            cells[0]
        );
        rows += 1;
    }
    assert_eq!(rows, 513, "512 grid rows plus the infinity row");
    println!(
        "criterion 2 PASS: garbling witnessed; payoffs {uq:.6} > {up:.6}; profiles {verdict:?}; CSV rows {rows}"
    );
}

#[test]
fn criterion_03_ternary_nonmonotone() {
    let (p, q) = fixtures::ternary_vs_binary(0.305, 0.1).unwrap();
    let report = dominance_vector(&p, &q, 3).unwrap();
    assert_eq!(
        report.vector,
        vec![
            BlackwellVerdict::Incomparable,
            BlackwellVerdict::Dominates,
            BlackwellVerdict::Incomparable,
        ],
        "dominance must appear at n = 2 and disappear at n = 3"
    );
    println!("criterion 3 PASS: vector [Incomparable, Dominates, Incomparable]");
}

#[test]
fn criterion_04_ternary_order_half_sufficiency() {
    let started = std::time::Instant::now();
    let (p, q) = fixtures::ternary_vs_binary(0.25, 1.0 / 16.0).unwrap();
    let margin = fixtures::order_half_margin(0.25, 1.0 / 16.0);
    assert!(margin > 0.0, "order-1/2 condition must hold");
    assert!(
        (margin - 0.018).abs() < 2e-3,
        "condition margin should be about 0.018, got {margin}"
    );
    assert_eq!(
        renyi_order_check(&p, &q, 64.0, 512),
        RenyiOrderVerdict::DominatesOnGrid
    );
    let report = dominance_vector(&p, &q, 64).unwrap();
    // brute-force minimal n, recorded before release: 4
    assert_eq!(report.minimal_n, Some(4), "pinned minimal n");
    assert!(report.vector[3..].iter().all(|v| v.dominates_weakly()));
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 120, "must finish under two minutes");
    println!("criterion 4 PASS: margin {margin:.4}; minimal n 4; cap-64 sweep in {elapsed:?}");
}

#[test]
fn criterion_05_nongeneric_counterexample() {
    // the spec names eps = 1e-3, but the paper's matrices require
    // eps < 1/1600 for positivity; the pinned valid value is 2e-4 and the
    // asserted payoff normalizations below are eps-independent
    assert!(
        fixtures::shared_top_pair(1e-3).is_err(),
        "eps = 1e-3 makes P1(x3) negative and must be rejected"
    );
    let eps = SHARED_TOP_EPS;
    let (pt, qt) = fixtures::shared_top_pair(eps).unwrap();
    assert!(!blackwell::experiment::is_generic_pair(&pt, &qt));
    assert_eq!(
        renyi_order_check(&pt, &qt, 64.0, 512),
        RenyiOrderVerdict::DominatesOnGrid,
        "Renyi dominance holds on the grid despite non-genericity"
    );
    for n in 1..=4usize {
        let hundred_pow = 100.0_f64.powi(n as i32 - 1);
        let pbar = hundred_pow / (hundred_pow + 1.0);
        let rho = pbar;
        let v = ConvexUtility::call_on_belief(pbar).unwrap();
        let pn = pt.power(n, 1_000_000).unwrap();
        let qn = qt.power(n, 1_000_000).unwrap();
        let up = expected_indirect_utility(&pn, &v);
        let uq = expected_indirect_utility(&qn, &v);
        assert!(uq > up, "Q must win the (p - pbar)+ problem at n = {n}");
        // shared contribution of the all-top-signal outcome
        let top = 0.5
            * (100.0_f64.powi(n as i32) + 1.0)
            * eps.powi(n as i32)
            * (100.0_f64.powi(n as i32) / (100.0_f64.powi(n as i32) + 1.0) - pbar);
        let scale = (n as f64 / 32.0) * eps.powi(n as i32 - 1);
        let q_norm = (uq - top) / scale;
        let p_norm = (up - top) / scale;
        assert!(
            (q_norm - 8.0 * rho).abs() <= 1e-6 * 8.0 * rho,
            "Q payoff normalization at n = {n}: {q_norm} vs {}",
            8.0 * rho
        );
        assert!(
            (p_norm - 6.0 * rho).abs() <= 1e-6 * 6.0 * rho,
            "P payoff normalization at n = {n}: {p_norm} vs {}",
            6.0 * rho
        );
    }
    println!("criterion 5 PASS: NonGeneric, grid dominance, 8-vs-6 payoff ratios at eps {eps}");
}

#[test]
fn criterion_06_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb1ac);
    let mut disagreements = 0;
    for _ in 0..1000 {
        let p = random_experiment(&mut rng, 2, 5);
        let q = random_experiment(&mut rng, 2, 5);
        let by_curve = llr_fosd(
            &p.llr_distribution(State::One),
            &q.llr_distribution(State::One),
            1e-9,
        )
        .unwrap()
        .holds;
        let by_mps = mps_check(&p.posterior_distribution(), &q.posterior_distribution()).unwrap();
        if by_curve != by_mps {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0, "the two Blackwell oracles must agree");
    println!("criterion 6 PASS: 0 disagreements across 1000 seeded pairs");
}

#[test]
fn criterion_07_sample_size_bound() {
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0705);
    let mut pairs = Vec::new();
    while pairs.len() < 50 {
        let p = random_experiment(&mut rng, 2, 4);
        let k = rng.gen_range(2..=p.len());
        let q = p.garble(&random_garbling(&mut rng, p.len(), k)).unwrap();
        if q.is_trivial() || !blackwell::experiment::is_generic_pair(&p, &q) {
            continue;
        }
        if renyi_order_check(&p, &q, 64.0, 512) != RenyiOrderVerdict::DominatesOnGrid {
            continue;
        }
        pairs.push((p, q));
    }
    let mut with_bound = 0;
    let mut violations = 0;
    for (p, q) in &pairs {
        let n0 = sample_bound(p, q).ok().map(|s| s.n0);
        let report = dominance_vector(p, q, 64).unwrap();
        if let Some(n0) = n0 {
            with_bound += 1;
            // dominance must hold at every n in [n0, 64] (empty when n0 > 64)
            let lo = n0.min(65) as usize;
            for n in lo..=64 {
                if !report.vector[n - 1].dominates_weakly() {
                    violations += 1;
                }
            }
            // and the empirical minimal n can never beat the theory bound
            if let Some(min_n) = report.minimal_n {
                assert!(
                    (min_n as u128) <= n0,
                    "minimal_n {min_n} exceeds theory n0 {n0}"
                );
            }
        }
    }
    assert_eq!(violations, 0);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 600, "must finish under ten minutes");
    println!(
        "criterion 7 PASS: 50 pairs, {with_bound} with eta certificates, 0 violations, {elapsed:?}"
    );
}

#[test]
fn criterion_08_large_deviation_sandwich() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0806);
    let mut checked = 0;
    let mut produced = 0;
    while produced < 200 {
        let m = rng.gen_range(2..=5);
        let mut values: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let probs = random_pmf(&mut rng, m);
        let x = AtomicDistribution::new(values.into_iter().zip(probs)).unwrap();
        if x.max_value() - x.mean() < 0.1 {
            continue;
        }
        produced += 1;
        // a spread of valid (a, eta) combinations per distribution
        for (fa, feta) in [(0.1, 0.2), (0.5, 0.3), (0.8, 0.1)] {
            let eta = feta * (x.max_value() - x.mean());
            let a = x.mean() + fa * (x.max_value() - eta - x.mean());
            if !(a >= x.mean() && a < x.max_value() - eta) {
                continue;
            }
            for n in [4usize, 8, 16] {
                let exact = exact_tail(&x, n, a, true, 10_000_000).unwrap();
                let upper = chernoff_bound(&x, a, n).unwrap();
                let lower = ld_lower_bound(&x, a, eta, n).unwrap();
                assert!(
                    lower <= exact + 1e-12 && exact <= upper + 1e-12,
                    "sandwich violated: {lower} / {exact} / {upper} at n={n}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 1000, "only {checked} sandwich instances");
    println!("criterion 8 PASS: {checked} sandwich instances on 200 seeded distributions");
}

#[test]
fn criterion_09_catalyst() {
    let (p, q) = fixtures::ternary_vs_binary(0.305, 0.1).unwrap();
    let r = catalyst(&p, &q, 2).unwrap();
    let pr = p.product(&r).unwrap();
    let qr = q.product(&r).unwrap();
    let verdict = blackwell_dominates(&pr, &qr, CompareMode::Perfected).unwrap();
    assert!(verdict.dominates_weakly(), "catalyst verdict {verdict:?}");
    println!(
        "criterion 9 PASS: R has {} outcomes; P(x)R vs Q(x)R: {verdict:?}",
        r.len()
    );
}

#[test]
fn criterion_10_divergence_functional() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a0a);
    let random_spec = |rng: &mut ChaCha8Rng| {
        let atoms = |rng: &mut ChaCha8Rng| -> Vec<(f64, f64)> {
            (0..rng.gen_range(1..=3))
                .map(|_| {
                    let t = if rng.gen_bool(0.2) {
                        f64::INFINITY
                    } else {
                        rng.gen_range(0.5..10.0)
                    };
                    (t, rng.gen_range(0.0..2.0))
                })
                .collect()
        };
        DivergenceSpec::new(atoms(rng), atoms(rng)).unwrap()
    };
    for _ in 0..500 {
        let spec = random_spec(&mut rng);
        let m1 = rng.gen_range(2..=4);
        let m2 = rng.gen_range(2..=4);
        let (mu1, nu1) = (random_pmf(&mut rng, m1), random_pmf(&mut rng, m1));
        let (mu2, nu2) = (random_pmf(&mut rng, m2), random_pmf(&mut rng, m2));
        assert!(check_additivity(&spec, &mu1, &nu1, &mu2, &nu2, 1e-9).unwrap());
        let k = rng.gen_range(2..=m1);
        let sigma = random_garbling(&mut rng, m1, k);
        assert!(check_dpi(&spec, &mu1, &nu1, &sigma, 1e-9).unwrap());
    }
    // the Dirac spec at order 1 is exactly Kullback-Leibler
    let kl_spec = DivergenceSpec::kullback_leibler();
    for _ in 0..50 {
        let m = rng.gen_range(2..=5);
        let (mu, nu) = (random_pmf(&mut rng, m), random_pmf(&mut rng, m));
        let direct: f64 = mu.iter().zip(&nu).map(|(&a, &b)| a * (a / b).ln()).sum();
        let via_spec = divergence_eval(&kl_spec, &mu, &nu).unwrap();
        assert!(
            (via_spec - direct).abs() <= 1e-12,
            "KL mismatch {via_spec} vs {direct}"
        );
    }
    println!("criterion 10 PASS: additivity and DPI on 500 triples; KL special case to 1e-12");
}

#[test]
fn criterion_11_majorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b0b);
    // majorization == Blackwell dominance of uniform-paired experiments
    for _ in 0..500 {
        let m = rng.gen_range(2..=5);
        let mu = FinitePmf::new(random_pmf(&mut rng, m)).unwrap();
        let nu = FinitePmf::new(random_pmf(&mut rng, m)).unwrap();
        let lhs = majorizes(&mu, &nu);
        let rhs = blackwell_dominates(
            &mu.against_uniform(),
            &nu.against_uniform(),
            CompareMode::Perfected,
        )
        .unwrap()
        .dominates_weakly();
        assert_eq!(lhs, rhs, "majorization/Blackwell equivalence failed");
    }
    // entropy identities on 200 pmfs
    for _ in 0..200 {
        let m = rng.gen_range(2..=6);
        let mu = FinitePmf::new(random_pmf(&mut rng, m)).unwrap();
        let e = mu.against_uniform();
        let logn = (m as f64).ln();
        for alpha in [0.25, 0.5, 1.0, 3.0, 11.0] {
            let h = renyi_entropy(&mu, alpha);
            let r = experiment_renyi(&e, State::One, alpha).unwrap();
            assert!((h - (logn - r)).abs() < 1e-9);
        }
        for alpha in [-7.0, -2.0, -0.5] {
            let h = renyi_entropy(&mu, alpha);
            let r = experiment_renyi(&e, State::Zero, 1.0 - alpha).unwrap();
            assert!((h - (logn - alpha / (1.0 - alpha) * r)).abs() < 1e-9);
        }
        let fd = (renyi_entropy(&mu, 1e-6) - renyi_entropy(&mu, -1e-6)) / 2e-6;
        assert!((entropy_derivative_at_zero(&mu) - fd).abs() < 1e-5);
    }
    // entropy_majorization_check agrees with the n <= 10 brute force on 20 seeded pairs
    let mut clear_true = 0;
    let mut clear_false = 0;
    let mut pairs: Vec<(FinitePmf, FinitePmf)> = Vec::new();
    // ten dominant pairs: nu is a doubly-stochastic average of mu
    while pairs.len() < 10 {
        let m = rng.gen_range(3..=4);
        let mu_v = random_pmf(&mut rng, m);
        let lambda: f64 = rng.gen_range(0.2..0.8);
        // average mu with a cyclic shift of itself: a doubly stochastic map
        let nu_v: Vec<f64> = (0..m)
            .map(|i| lambda * mu_v[i] + (1.0 - lambda) * mu_v[(i + 1) % m])
            .collect();
        let mu = FinitePmf::new(mu_v).unwrap();
        let nu = FinitePmf::new(nu_v).unwrap();
        if (mu.max_prob() - nu.max_prob()).abs() <= 1e-9
            || (mu.min_prob() - nu.min_prob()).abs() <= 1e-9
        {
            continue;
        }
        pairs.push((mu, nu));
    }
    // ten reversed copies: the condition must fail and majorization with it
    for i in 0..10 {
        let (mu, nu) = pairs[i].clone();
        pairs.push((nu, mu));
    }
    for (i, (mu, nu)) in pairs.iter().enumerate() {
        let report = entropy_majorization_check(mu, nu, 10).unwrap();
        if report.condition_holds {
            clear_true += 1;
            assert_eq!(
                report.minimal_n,
                Some(1),
                "dominant pair {i} must majorize from n = 1"
            );
            assert!(report.majorize_vector.iter().all(|&b| b));
        } else {
            clear_false += 1;
            assert!(
                report.majorize_vector.iter().all(|&b| !b),
                "reversed pair {i} must fail majorization at every n"
            );
        }
    }
    assert_eq!(clear_true, 10);
    assert_eq!(clear_false, 10);
    println!("criterion 11 PASS: equivalence x500, entropy identities x200, product-majorization agreement x20");
}

#[test]
fn criterion_12_multistate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c0c);
    // curvature classification vs the numeric Hessian sign on 200 vectors
    let mut agree = 0;
    for _ in 0..200 {
        let k = rng.gen_range(1..=4);
        let tail: Vec<f64> = (0..k)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    0.0
                } else {
                    rng.gen_range(-1.0..1.0)
                }
            })
            .collect();
        let head = 1.0 - tail.iter().sum::<f64>();
        if head <= 0.0 {
            continue;
        }
        let mut alpha = vec![head];
        alpha.extend(tail);
        let verdict = v_convexity(&alpha).unwrap();
        // sample directional second derivatives at random interior points
        let mut saw_pos = false;
        let mut saw_neg = false;
        for _ in 0..200 {
            let p = random_pmf(&mut rng, k + 1);
            let x: Vec<f64> = (0..=k).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let d2 = v_directional_second_derivative(&alpha, &p, &x);
            if d2 > 1e-9 {
                saw_pos = true;
            }
            if d2 < -1e-9 {
                saw_neg = true;
            }
        }
        let consistent = match verdict {
            Curvature::Convex { .. } => !saw_neg,
            Curvature::Concave { .. } => !saw_pos,
            Curvature::Neither => saw_pos && saw_neg,
        };
        assert!(
            consistent,
            "curvature {verdict:?} inconsistent with sampled Hessian signs for {alpha:?}"
        );
        agree += 1;
    }
    assert!(agree >= 150, "only {agree} vectors classified");

    // ten 3-state dominance fixtures pass; their reverses fail with witnesses
    let grid = DirectionGrid {
        directions: 60,
        magnitudes: 8,
        seed: 0xfeed,
    };
    let mut built = 0;
    while built < 10 {
        let q = MultiStateExperiment::new(vec![
            random_pmf(&mut rng, 3),
            random_pmf(&mut rng, 3),
            random_pmf(&mut rng, 3),
        ])
        .unwrap();
        let extra = MultiStateExperiment::new(vec![
            random_pmf(&mut rng, 2),
            random_pmf(&mut rng, 2),
            random_pmf(&mut rng, 2),
        ])
        .unwrap();
        let p = q.product(&extra).unwrap();
        if !blackwell::multistate::multistate_generic(&p, &q) {
            continue;
        }
        built += 1;
        let forward = multistate_necessary(&p, &q, &grid).unwrap();
        assert!(
            forward.passed,
            "necessary conditions failed on a dominant fixture: {:?}",
            forward.witnesses.first()
        );
        let reverse = multistate_necessary(&q, &p, &grid).unwrap();
        assert!(!reverse.passed);
        assert!(
            !reverse.witnesses.is_empty(),
            "reverse must carry a witness"
        );
    }
    println!("criterion 12 PASS: 200 curvature classifications, 10 dominance fixtures + reverses");
}
