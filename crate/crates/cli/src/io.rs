//! File formats: experiments, pmfs, multi-state experiments, divergence
//! specs, and atom-list output.
//!
//! Probabilities may be JSON numbers, decimal strings, or exact rational
//! strings like "7/16"; rationals are parsed as a correctly rounded double
//! quotient so paper fixtures round-trip bit-exactly.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use blackwell::distribution::AtomicDistribution;
use blackwell::divergence::DivergenceSpec;
use blackwell::majorization::FinitePmf;
use blackwell::multistate::MultiStateExperiment;
use blackwell::{FiniteExperiment, State};

/// A probability entry: number, decimal string, or "a/b".
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ProbValue {
    Num(f64),
    Text(String),
}

impl ProbValue {
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            ProbValue::Num(v) => Ok(*v),
            ProbValue::Text(s) => parse_prob(s),
        }
    }
}

/// Parses "a/b" exactly (integer parts, one correctly rounded division)
/// or falls back to plain float syntax.
pub fn parse_prob(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .with_context(|| format!("bad rational numerator in {s:?}"))?;
        let d: i64 = den
            .trim()
            .parse()
            .with_context(|| format!("bad rational denominator in {s:?}"))?;
        if d == 0 {
            bail!("zero denominator in {s:?}");
        }
        return Ok(n as f64 / d as f64);
    }
    s.parse::<f64>()
        .with_context(|| format!("bad probability {s:?}"))
}

#[derive(Debug, Deserialize)]
struct ExperimentFile {
    outcomes: Vec<String>,
    p0: Vec<ProbValue>,
    p1: Vec<ProbValue>,
}

#[derive(Debug, Serialize)]
struct ExperimentOut<'a> {
    outcomes: &'a [String],
    p0: &'a [f64],
    p1: &'a [f64],
}

fn probs(values: &[ProbValue]) -> Result<Vec<f64>> {
    values.iter().map(ProbValue::to_f64).collect()
}

pub fn experiment_from_str(text: &str) -> Result<FiniteExperiment> {
    let raw: ExperimentFile = serde_json::from_str(text).context("malformed experiment JSON")?;
    let e = FiniteExperiment::new(raw.outcomes, probs(&raw.p0)?, probs(&raw.p1)?)?;
    Ok(e)
}

pub fn load_experiment(path: &Path) -> Result<FiniteExperiment> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    experiment_from_str(&text).with_context(|| format!("in {}", path.display()))
}

pub fn experiment_to_string(e: &FiniteExperiment) -> String {
    serde_json::to_string_pretty(&ExperimentOut {
        outcomes: e.outcomes(),
        p0: e.pmf(State::Zero),
        p1: e.pmf(State::One),
    })
    .expect("experiment serializes")
}

pub fn save_experiment(path: &Path, e: &FiniteExperiment) -> Result<()> {
    fs::write(path, experiment_to_string(e))
        .with_context(|| format!("cannot write {}", path.display()))
}

#[derive(Debug, Deserialize)]
struct PmfFile {
    probs: Vec<ProbValue>,
}

pub fn load_pmf(path: &Path) -> Result<FinitePmf> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let raw: PmfFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed pmf JSON in {}", path.display()))?;
    Ok(FinitePmf::new(probs(&raw.probs)?)?)
}

#[derive(Debug, Deserialize)]
struct MultiStateFile {
    states: usize,
    probs: Vec<Vec<ProbValue>>,
}

pub fn load_multistate(path: &Path) -> Result<MultiStateExperiment> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let raw: MultiStateFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed multi-state JSON in {}", path.display()))?;
    if raw.probs.len() != raw.states {
        bail!(
            "file declares {} states but has {} rows",
            raw.states,
            raw.probs.len()
        );
    }
    let rows: Result<Vec<Vec<f64>>> = raw.probs.iter().map(|r| probs(r)).collect();
    Ok(MultiStateExperiment::new(rows?)?)
}

/// Divergence spec: {"m0": [[t, w], ...], "m1": [[t, w], ...]} with t a
/// number or the string "inf".
#[derive(Debug, Deserialize)]
struct SpecFile {
    #[serde(default)]
    m0: Vec<(ProbValue, ProbValue)>,
    #[serde(default)]
    m1: Vec<(ProbValue, ProbValue)>,
}

fn order_value(v: &ProbValue) -> Result<f64> {
    if let ProbValue::Text(s) = v {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(f64::INFINITY);
        }
    }
    v.to_f64()
}

pub fn load_divergence_spec(path: &Path) -> Result<DivergenceSpec> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let raw: SpecFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed divergence spec in {}", path.display()))?;
    let atoms = |list: &[(ProbValue, ProbValue)]| -> Result<Vec<(f64, f64)>> {
        list.iter()
            .map(|(t, w)| Ok((order_value(t)?, w.to_f64()?)))
            .collect()
    };
    Ok(DivergenceSpec::new(atoms(&raw.m0)?, atoms(&raw.m1)?)?)
}

#[derive(Debug, Serialize)]
struct AtomsOut {
    atoms: Vec<(f64, f64)>,
}

pub fn distribution_to_string(d: &AtomicDistribution) -> String {
    serde_json::to_string_pretty(&AtomsOut {
        atoms: d.atoms().iter().map(|a| (a.value, a.prob)).collect(),
    })
    .expect("distribution serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_exactly() {
        assert_eq!(parse_prob("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_prob(" 7/16 ").unwrap(), 7.0 / 16.0);
        assert_eq!(parse_prob("0.625").unwrap(), 0.625);
        assert!(parse_prob("1/0").is_err());
        assert!(parse_prob("x").is_err());
    }

    #[test]
    fn experiment_round_trip_is_bit_exact() {
        let text = r#"{"outcomes": ["a","b"], "p0": ["1/3","2/3"], "p1": ["2/3","1/3"]}"#;
        let e = experiment_from_str(text).unwrap();
        assert_eq!(e.pmf(State::Zero)[0], 1.0 / 3.0);
        let again = experiment_from_str(&experiment_to_string(&e)).unwrap();
        assert_eq!(again.pmf(State::Zero), e.pmf(State::Zero));
        assert_eq!(again.pmf(State::One), e.pmf(State::One));
    }

    #[test]
    fn rejects_invalid_experiment() {
        let text = r#"{"outcomes": ["a","b"], "p0": ["0","1"], "p1": ["1/2","1/2"]}"#;
        assert!(experiment_from_str(text).is_err());
    }
}
