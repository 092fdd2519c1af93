//! Seeded random generators shared by the property tests.

use blackwell::experiment::Garbling;
use blackwell::FiniteExperiment;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_experiment(rng: &mut ChaCha8Rng, min_m: usize, max_m: usize) -> FiniteExperiment {
    let m = rng.gen_range(min_m..=max_m);
    let labels: Vec<String> = (0..m).map(|i| format!("o{i}")).collect();
    let mut row = || -> Vec<f64> {
        let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..1.0)).collect();
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
        v
    };
    let p0 = row();
    let p1 = row();
    FiniteExperiment::new(labels, p0, p1).expect("generated rows are valid")
}

/// A strictly positive row-stochastic kernel from m to k outcomes.
pub fn random_garbling(rng: &mut ChaCha8Rng, m: usize, k: usize) -> Garbling {
    let rows = (0..m)
        .map(|_| {
            let mut v: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
            let s: f64 = v.iter().sum();
            v.iter_mut().for_each(|x| *x /= s);
            v
        })
        .collect();
    Garbling::new(rows).expect("generated kernel is valid")
}

/// A strictly positive pmf with `m` entries.
pub fn random_pmf_vec(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}
