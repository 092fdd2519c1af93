//! Command-line interface for comparing finite binary experiments.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use blackwell::blackwell::{blackwell_dominates, llr_fosd, BlackwellVerdict, CompareMode};
use blackwell::large_deviations::sample_bound;
use blackwell::large_sample::{
    catalyst, dominance_vector, large_sample_verdict, ratio_search, LargeSampleVerdict,
};
use blackwell::renyi::{
    dominance_ratio, renyi_order_check, renyi_order_check_profiles, renyi_profile,
};
use blackwell::{FiniteExperiment, State};

use blackwell_cli::{fixtures, io, suite};

#[derive(Parser)]
#[command(
    name = "blackwell",
    about = "Compare binary statistical experiments: Blackwell order, Renyi order, large samples",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Grid configuration shared by the order-comparison commands.
#[derive(Args, Clone, Copy)]
struct GridOpts {
    /// Upper end of the Renyi order grid
    #[arg(long, default_value_t = 64.0)]
    t_max: f64,
    /// Number of grid points on [1/2, t-max]
    #[arg(long, default_value_t = 512)]
    grid_points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Blackwell,
    Renyi,
    LargeSample,
    Ratio,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an experiment file
    Validate { file: PathBuf },
    /// Compare two experiments; exit 0 on a positive verdict, 1 otherwise
    Compare {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, value_enum, default_value = "blackwell")]
        mode: Mode,
        /// Run both Blackwell decision procedures and insist they agree
        #[arg(long)]
        cross_validate: bool,
        /// Largest n for the large-sample dominance vector
        #[arg(long, default_value_t = 64)]
        cap: usize,
        /// Largest m tried per n in ratio mode
        #[arg(long, default_value_t = 128)]
        m_cap: usize,
        /// Absolute tolerance for Blackwell curve comparisons, in (0, 1e-3]
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// n-fold log-likelihood-ratio distribution of an experiment
    Power {
        file: PathBuf,
        #[arg(short, long)]
        n: usize,
        /// Conditioning state, 0 or 1
        #[arg(long, default_value_t = 1)]
        theta: u8,
        /// Write the atom list (JSON) here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the catalyst experiment R making P (x) R dominate Q (x) R
    Catalyst {
        p: PathBuf,
        q: PathBuf,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rate-function sample-size bound: prints b, eta, n0
    Bound {
        p: PathBuf,
        q: PathBuf,
        /// Write the eta verification grid as CSV
        #[arg(long)]
        grid_out: Option<PathBuf>,
    },
    /// Evaluate an additive-divergence spec on an experiment's pair
    Divergence { spec: PathBuf, experiment: PathBuf },
    /// Majorization and entropy-condition report for two pmfs
    Majorize {
        mu: PathBuf,
        nu: PathBuf,
        #[arg(long, default_value_t = 10)]
        powers: usize,
    },
    /// Necessary conditions for multi-state large-sample dominance
    Multistate {
        p: PathBuf,
        q: PathBuf,
        /// Sampled directions per orthant
        #[arg(long, default_value_t = 200)]
        directions: usize,
        /// Magnitudes per direction
        #[arg(long, default_value_t = 10)]
        magnitudes: usize,
        /// Seed for the sampled t-grid
        #[arg(long, default_value_t = 0x5eed_cafe)]
        seed: u64,
    },
    /// Emit CSV of Renyi profiles: t, R_P_theta0, R_Q_theta0, R_P_theta1, R_Q_theta1
    PlotData {
        /// Experiment files (omit with --uniform-linear)
        p: Option<PathBuf>,
        q: Option<PathBuf>,
        /// Use the closed-form uniform-vs-linear experiment as P
        #[arg(long)]
        uniform_linear: bool,
        /// Success probability of Q's high outcome with --uniform-linear
        #[arg(long, default_value_t = 0.63)]
        p_param: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Run all fixture checks and print a pass/fail table
    PaperSuite,
    /// Write a named fixture pair to experiment files
    Fixture {
        /// one-sided | uniform-linear | ternary | shared-top | symmetric
        name: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        p_param: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        bins: usize,
        #[arg(long)]
        accuracy: Option<f64>,
        #[arg(long)]
        out_p: PathBuf,
        #[arg(long)]
        out_q: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn positive() -> ExitCode {
    ExitCode::SUCCESS
}

fn negative() -> ExitCode {
    ExitCode::from(1)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let e = io::load_experiment(&file)?;
            println!(
                "valid experiment: {} outcomes, trivial: {}",
                e.len(),
                e.is_trivial()
            );
            Ok(positive())
        }
        Command::Compare {
            p,
            q,
            mode,
            cross_validate,
            cap,
            m_cap,
            tol,
            grid,
        } => {
            if !(tol > 0.0 && tol <= 1e-3) {
                bail!("tol must lie in (0, 1e-3]");
            }
            let pe = io::load_experiment(&p)?;
            let qe = io::load_experiment(&q)?;
            compare(&pe, &qe, mode, cross_validate, cap, m_cap, tol, grid)
        }
        Command::Power {
            file,
            n,
            theta,
            out,
        } => {
            let e = io::load_experiment(&file)?;
            let state = parse_state(theta)?;
            let d = e.power_llr(n, state)?;
            let text = io::distribution_to_string(&d);
            match out {
                Some(path) => fs::write(&path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(positive())
        }
        Command::Catalyst { p, q, n, out } => {
            let pe = io::load_experiment(&p)?;
            let qe = io::load_experiment(&q)?;
            match catalyst(&pe, &qe, n) {
                Ok(r) => {
                    io::save_experiment(&out, &r)?;
                    println!(
                        "catalyst with {} outcomes written to {}; P(x)R dominates Q(x)R",
                        r.len(),
                        out.display()
                    );
                    Ok(positive())
                }
                Err(blackwell::Error::PreconditionFailed(msg)) => {
                    println!("no catalyst: {msg}");
                    Ok(negative())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Bound { p, q, grid_out } => {
            let pe = io::load_experiment(&p)?;
            let qe = io::load_experiment(&q)?;
            match sample_bound(&pe, &qe) {
                Ok(s) => {
                    println!("b = {}", s.b);
                    println!("eta = {}", s.eta);
                    println!("n0 = {}", s.n0);
                    if let Some(path) = grid_out {
                        let mut w = fs::File::create(&path)
                            .with_context(|| format!("cannot write {}", path.display()))?;
                        writeln!(w, "theta,a,rate_x,rate_y")?;
                        for row in &s.verification_grid {
                            writeln!(
                                w,
                                "{},{},{},{}",
                                row.theta.index(),
                                row.a,
                                row.rate_x,
                                row.rate_y
                            )?;
                        }
                        println!("verification grid: {} rows", s.verification_grid.len());
                    }
                    Ok(positive())
                }
                Err(blackwell::Error::NoEtaFound) => {
                    println!("no eta in the ladder certifies the pair");
                    Ok(negative())
                }
                Err(blackwell::Error::PreconditionFailed(msg)) => {
                    println!("bound unavailable: {msg}");
                    Ok(negative())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Divergence { spec, experiment } => {
            let s = io::load_divergence_spec(&spec)?;
            let e = io::load_experiment(&experiment)?;
            let forward =
                blackwell::divergence::divergence_eval(&s, e.pmf(State::One), e.pmf(State::Zero))?;
            let backward =
                blackwell::divergence::divergence_eval(&s, e.pmf(State::Zero), e.pmf(State::One))?;
            println!("D(P1, P0) = {forward}");
            println!("D(P0, P1) = {backward}");
            Ok(positive())
        }
        Command::Majorize { mu, nu, powers } => {
            let m = io::load_pmf(&mu)?;
            let n = io::load_pmf(&nu)?;
            let report = blackwell::majorization::entropy_majorization_check(&m, &n, powers)?;
            println!(
                "entropy condition: {}",
                if report.condition_holds {
                    "holds"
                } else {
                    "fails"
                }
            );
            if let Some(w) = report.witness {
                println!("first violated order: alpha = {w}");
            }
            for (i, ok) in report.majorize_vector.iter().enumerate() {
                println!("n = {}: {}", i + 1, if *ok { "majorizes" } else { "no" });
            }
            match report.minimal_n {
                Some(n0) => println!("majorizes from n = {n0} (within the checked range)"),
                None => println!("no all-majorizing suffix within the checked range"),
            }
            Ok(if report.condition_holds && report.minimal_n.is_some() {
                positive()
            } else {
                negative()
            })
        }
        Command::Multistate {
            p,
            q,
            directions,
            magnitudes,
            seed,
        } => {
            let pe = io::load_multistate(&p)?;
            let qe = io::load_multistate(&q)?;
            let grid = blackwell::multistate::DirectionGrid {
                directions,
                magnitudes,
                seed,
            };
            let report = blackwell::multistate::multistate_necessary(&pe, &qe, &grid)?;
            if report.passed {
                println!("all necessary conditions hold on the sampled grid");
                Ok(positive())
            } else {
                println!("conditions fail; first witnesses:");
                for w in report.witnesses.iter().take(4) {
                    println!("  {w:?}");
                }
                Ok(negative())
            }
        }
        Command::PlotData {
            p,
            q,
            uniform_linear,
            p_param,
            out,
            grid,
        } => {
            let csv = plot_data(p, q, uniform_linear, p_param, grid)?;
            match out {
                Some(path) => fs::write(&path, csv)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{csv}"),
            }
            Ok(positive())
        }
        Command::PaperSuite => {
            let results = suite::run_paper_suite();
            let mut all_ok = true;
            for r in &results {
                println!(
                    "{} {:<32} {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
                all_ok &= r.passed;
            }
            println!(
                "{}/{} fixture checks passed",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            );
            Ok(if all_ok { positive() } else { negative() })
        }
        Command::Fixture {
            name,
            alpha,
            beta,
            eps,
            p_param,
            bins,
            accuracy,
            out_p,
            out_q,
        } => {
            let (pe, qe) = match name.as_str() {
                "one-sided" => {
                    let (p, q) = fixtures::one_sided_pair();
                    (p, Some(q))
                }
                "uniform-linear" => {
                    let (p, q) = fixtures::uniform_linear_pair(p_param.unwrap_or(0.63), bins)?;
                    (p, Some(q))
                }
                "ternary" => {
                    let (p, q) = fixtures::ternary_vs_binary(
                        alpha.context("ternary needs --alpha")?,
                        beta.context("ternary needs --beta")?,
                    )?;
                    (p, Some(q))
                }
                "shared-top" => {
                    let (p, q) = fixtures::shared_top_pair(eps.unwrap_or(suite::SHARED_TOP_EPS))?;
                    (p, Some(q))
                }
                "symmetric" => (
                    fixtures::symmetric(accuracy.context("symmetric needs --accuracy")?)?,
                    None,
                ),
                other => bail!("unknown fixture {other:?}"),
            };
            io::save_experiment(&out_p, &pe)?;
            match (qe, out_q) {
                (Some(q), Some(path)) => io::save_experiment(&path, &q)?,
                (Some(_), None) => bail!("fixture {name} is a pair; pass --out-q"),
                (None, Some(_)) => bail!("fixture {name} is a single experiment"),
                (None, None) => {}
            }
            Ok(positive())
        }
    }
}

fn parse_state(theta: u8) -> Result<State> {
    match theta {
        0 => Ok(State::Zero),
        1 => Ok(State::One),
        _ => bail!("theta must be 0 or 1"),
    }
}

#[allow(clippy::too_many_arguments)]
fn compare(
    p: &FiniteExperiment,
    q: &FiniteExperiment,
    mode: Mode,
    cross_validate: bool,
    cap: usize,
    m_cap: usize,
    tol: f64,
    grid: GridOpts,
) -> Result<ExitCode> {
    match mode {
        Mode::Blackwell => {
            let mode = if cross_validate {
                CompareMode::CrossValidate
            } else {
                CompareMode::Perfected
            };
            let verdict = blackwell_dominates(p, q, mode)?;
            println!("{}", verdict.as_str());
            if verdict == BlackwellVerdict::Incomparable {
                // witness breakpoints where each direction fails
                let f1 = p.llr_distribution(State::One);
                let g1 = q.llr_distribution(State::One);
                if let Some((a, gap)) = llr_fosd(&f1, &g1, tol)?.witness {
                    println!("P fails to dominate at a = {a}: curve gap {gap:.3e}");
                }
                if let Some((a, gap)) = llr_fosd(&g1, &f1, tol)?.witness {
                    println!("Q fails to dominate at a = {a}: curve gap {gap:.3e}");
                }
            }
            Ok(if verdict.dominates_weakly() {
                positive()
            } else {
                negative()
            })
        }
        Mode::Renyi => {
            let verdict = renyi_order_check(p, q, grid.t_max, grid.grid_points);
            println!("{verdict:?}");
            Ok(if verdict.dominates() {
                positive()
            } else {
                negative()
            })
        }
        Mode::LargeSample => {
            let verdict = large_sample_verdict(p, q);
            match verdict {
                LargeSampleVerdict::PredictDominates { n0 } => {
                    println!("PredictDominates (theory n0 = {n0:?})")
                }
                LargeSampleVerdict::PredictNotDominates { theta, t, gap } => {
                    println!(
                        "PredictNotDominates (witness theta = {}, t = {t}, gap = {gap:.3e})",
                        theta.index()
                    )
                }
                LargeSampleVerdict::NonGeneric => println!("NonGeneric"),
            }
            let report = dominance_vector(p, q, cap)?;
            let cells: Vec<&str> = report.vector.iter().map(|v| v.as_str()).collect();
            println!("vector (n = 1..{cap}): {}", cells.join(", "));
            match report.minimal_n {
                Some(n) => println!("minimal n with all-dominating suffix: {n}"),
                None => println!("no all-dominating suffix up to the cap"),
            }
            if let Some(n0) = report.theory_n0 {
                println!("theory n0: {n0}");
            }
            Ok(match verdict {
                LargeSampleVerdict::PredictDominates { .. } => positive(),
                _ => negative(),
            })
        }
        Mode::Ratio => {
            let r = dominance_ratio(p, q, grid.t_max, grid.grid_points)?;
            println!(
                "dominance ratio (grid infimum): {} at theta = {}, t = {}",
                r.value,
                r.witness_theta.index(),
                r.witness_t
            );
            let table = ratio_search(p, q, cap.min(12), m_cap)?;
            for (n, m) in &table.pairs {
                println!("P^(x){n} dominates Q^(x){m}");
            }
            println!("empirical best m/n: {}", table.best);
            Ok(positive())
        }
    }
}

fn plot_data(
    p: Option<PathBuf>,
    q: Option<PathBuf>,
    uniform_linear: bool,
    p_param: f64,
    grid: GridOpts,
) -> Result<String> {
    let (p0, p1, q0, q1) = if uniform_linear {
        let (pp0, pp1) = fixtures::uniform_linear_profiles(grid.t_max, grid.grid_points)?;
        let (_, qe) = fixtures::uniform_linear_pair(p_param, 2)?;
        (
            pp0,
            pp1,
            renyi_profile(&qe, State::Zero, grid.t_max, grid.grid_points)?,
            renyi_profile(&qe, State::One, grid.t_max, grid.grid_points)?,
        )
    } else {
        let (p, q) = match (p, q) {
            (Some(p), Some(q)) => (p, q),
            _ => bail!("plot-data needs two experiment files or --uniform-linear"),
        };
        let pe = io::load_experiment(&p)?;
        let qe = io::load_experiment(&q)?;
        (
            renyi_profile(&pe, State::Zero, grid.t_max, grid.grid_points)?,
            renyi_profile(&pe, State::One, grid.t_max, grid.grid_points)?,
            renyi_profile(&qe, State::Zero, grid.t_max, grid.grid_points)?,
            renyi_profile(&qe, State::One, grid.t_max, grid.grid_points)?,
        )
    };
    // consistency of the four profiles is checked as a side effect
    let _ = renyi_order_check_profiles(&p0, &p1, &q0, &q1)?;
    let mut csv = String::from("t,R_P_theta0,R_Q_theta0,R_P_theta1,R_Q_theta1\n");
    for (i, &t) in p0.grid.iter().enumerate() {
        csv.push_str(&format!(
            "{t},{},{},{},{}\n",
            p0.values[i], q0.values[i], p1.values[i], q1.values[i]
        ));
    }
    csv.push_str(&format!(
        "inf,{},{},{},{}\n",
        p0.infinity, q0.infinity, p1.infinity, q1.infinity
    ));
    Ok(csv)
}
