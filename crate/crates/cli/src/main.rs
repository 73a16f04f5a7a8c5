//! `ggp`: command-line front-end for signed interlacing checks, branching
//! enumeration, projection experiments and preimage search.
//!
//! Exit codes: 0 success or true, 1 false or NOT_FOUND, 2 usage or domain
//! error, 3 numerical failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ggp_core::spectrum::parse_real;
use ggp_core::{
    check_cauchy_tol, check_ggp, enumerate_sign_patterns, find_preimage,
    is_holomorphic_pattern, merge_candidates, weyl_branching, weyl_dimension, Error, Execution,
    HarishChandraParameter, Lattice, SampleConfig, SearchConfig, Sign, SignedSpectrum, ValueWindow, DEFAULT_TOL,
};
use ggp_core::enumeration::{enumerate_small_spectra_with, ggp_discrete_branching_with};
use ggp_core::matrix_lab::{cauchy_matrix_experiment, sample_projection_experiment, ProjectionReport};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "ggp", version, about = "Signed eigenvalue interlacing for U(p,q) and U(p,q-1)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Absolute tolerance on spectral values.
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Run trials, patterns and restarts on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the signed interlacing relation between two spectra.
    CheckGgp {
        #[arg(long, value_name = "JSON", value_parser = spectrum_arg)]
        big: SignedSpectrum,
        #[arg(long, value_name = "JSON", value_parser = spectrum_arg)]
        small: SignedSpectrum,
    },
    /// Decide classical interlacing of two descending lists.
    CheckCauchy {
        #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = reals_arg)]
        lambda: Reals,
        #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = reals_arg)]
        mu: Reals,
    },
    /// List the admissible merged sign patterns for a big sign vector.
    Patterns {
        /// Signs of the big spectrum in descending value order, e.g. `1,-1` or `+-`.
        #[arg(long, value_name = "SIGNS", allow_hyphen_values = true, value_parser = signs_arg)]
        signs: Signs,
        /// Print the small symbols as ⊕ and ⊖.
        #[arg(long)]
        unicode: bool,
    },
    /// Enumerate the interlacing small spectra on a lattice within a window.
    Enumerate {
        #[arg(long, value_name = "JSON", value_parser = spectrum_arg)]
        big: SignedSpectrum,
        #[arg(long, value_name = "Z|Z+1/2", default_value = "Z", value_parser = lattice_arg)]
        lattice: Lattice,
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true, value_parser = window_arg)]
        window: ValueWindow,
    },
    /// Discrete-series branching of a Harish-Chandra parameter, truncated to a window.
    Branch {
        #[arg(long, value_name = "JSON", value_parser = hc_arg)]
        hc: HarishChandraParameter,
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true, value_parser = window_arg)]
        window: ValueWindow,
    },
    /// Compact branching U(n) to U(n-1) of a highest weight.
    Weyl {
        #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = ints_arg)]
        lambda: Ints,
    },
    /// Dimension of the U(n) representation with a given highest weight.
    WeylDim {
        #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = ints_arg)]
        lambda: Ints,
    },
    /// Random orbit projections checked against the signed interlacing rule.
    Sample {
        #[arg(long, value_name = "JSON", value_parser = spectrum_arg)]
        big: SignedSpectrum,
        #[command(flatten)]
        sampling: Sampling,
        /// Round recovered spectra to this lattice in the histogram.
        #[arg(long, value_name = "Z|Z+1/2", value_parser = lattice_arg)]
        lattice: Option<Lattice>,
    },
    /// Random unitary corner projections checked against Cauchy interlacing.
    CauchySample {
        #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = reals_arg)]
        lambda: Reals,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Search for an orbit element whose projection has a target spectrum.
    Search {
        #[arg(long, value_name = "JSON", value_parser = spectrum_arg)]
        big: SignedSpectrum,
        #[arg(long, value_name = "JSON", value_parser = spectrum_arg)]
        target: SignedSpectrum,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-6)]
        objective_tol: f64,
        /// Edge length of the initial simplex.
        #[arg(long, default_value_t = 0.5)]
        step: f64,
    },
    /// Whether all positive signs sit above all negative ones.
    Holomorphic {
        #[arg(long, value_name = "JSON", value_parser = spectrum_arg)]
        spectrum: SignedSpectrum,
    },
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0.5)]
    scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone)]
struct Reals(Vec<f64>);

#[derive(Clone)]
struct Ints(Vec<i64>);

#[derive(Clone)]
struct Signs(Vec<Sign>);

fn spectrum_arg(s: &str) -> Result<SignedSpectrum, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

fn hc_arg(s: &str) -> Result<HarishChandraParameter, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

fn lattice_arg(s: &str) -> Result<Lattice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn window_arg(s: &str) -> Result<ValueWindow, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn items(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn reals_arg(s: &str) -> Result<Reals, String> {
    items(s).map(|t| parse_real(t).map_err(|e| e.to_string())).collect::<Result<_, _>>().map(Reals)
}

fn ints_arg(s: &str) -> Result<Ints, String> {
    items(s)
        .map(|t| t.parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Ints)
}

fn signs_arg(s: &str) -> Result<Signs, String> {
    let tokens: Vec<String> = if s.contains(',') || s.contains(|c: char| c.is_ascii_digit()) {
        items(s).map(String::from).collect()
    } else {
        s.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
    };
    tokens
        .iter()
        .map(|t| match t.as_str() {
            "+" | "1" | "+1" => Ok(Sign::Plus),
            "-" | "-1" | "−" => Ok(Sign::Minus),
            other => Err(format!("unknown sign {other:?}; use 1, -1, + or -")),
        })
        .collect::<Result<_, _>>()
        .map(Signs)
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    /// Attributes a library error to the flag that carried the bad input.
    fn from_core(flag: &str, e: Error) -> Self {
        let code = match e {
            Error::EigensolverFailure | Error::FormViolation(_) => 3,
            _ => 2,
        };
        Failure { code, message: format!("{flag}: {e}") }
    }
}

/// Rendered output plus the exit code it implies.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn new(text: String, ok: bool) -> Self {
        Outcome { text, code: if ok { 0 } else { 1 } }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let Common { json, tol, sequential, .. } = cli.common;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::usage(format!("--tol: must be positive and finite, got {tol}")));
    }
    let execution = if sequential { Execution::Sequential } else { Execution::default() };

    match cli.command {
        Command::CheckGgp { big, small } => {
            let ok = check_ggp(&big, &small, tol).map_err(|e| Failure::from_core("--small", e))?;
            let text = if json {
                let patterns: Vec<String> = merge_candidates(&big, &small, tol)
                    .map_err(|e| Failure::from_core("--small", e))?
                    .iter()
                    .filter(|m| m.is_allowed())
                    .map(|m| m.pattern().to_string())
                    .collect();
                to_json(&json!({ "big": big, "small": small, "tol": tol, "ggp": ok, "patterns": patterns }))
            } else {
                ok.to_string()
            };
            Ok(Outcome::new(text, ok))
        }
        Command::CheckCauchy { lambda, mu } => {
            let ok = check_cauchy_tol(&lambda.0, &mu.0, tol).map_err(|e| Failure::from_core("--mu", e))?;
            let text = if json {
                to_json(&json!({ "lambda": lambda.0, "mu": mu.0, "tol": tol, "interlaces": ok }))
            } else {
                ok.to_string()
            };
            Ok(Outcome::new(text, ok))
        }
        Command::Patterns { signs, unicode } => {
            let patterns = enumerate_sign_patterns(&signs.0).map_err(|e| Failure::from_core("--signs", e))?;
            let text = if json {
                to_json(&patterns)
            } else {
                patterns.iter().map(|p| if unicode { p.to_unicode() } else { p.to_string() }).collect::<Vec<_>>().join("\n")
            };
            Ok(Outcome::new(text, true))
        }
        Command::Enumerate { big, lattice, window } => {
            let found = enumerate_small_spectra_with(&big, lattice, &window, tol, execution).map_err(|e| {
                let flag = if matches!(e, Error::EmptyWindow { .. }) { "--window" } else { "--big" };
                Failure::from_core(flag, e)
            })?;
            let text = if json {
                to_json(&found)
            } else {
                found.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            };
            Ok(Outcome::new(text, true))
        }
        Command::Branch { hc, window } => {
            let found = ggp_discrete_branching_with(&hc, &window, execution).map_err(|e| {
                let flag = if matches!(e, Error::EmptyWindow { .. }) { "--window" } else { "--hc" };
                Failure::from_core(flag, e)
            })?;
            let text = if json {
                to_json(&found)
            } else {
                found.iter().map(|h| h.spectrum().to_string()).collect::<Vec<_>>().join("\n")
            };
            Ok(Outcome::new(text, true))
        }
        Command::Weyl { lambda } => {
            let branches = weyl_branching(&lambda.0).map_err(|e| Failure::from_core("--lambda", e))?;
            let text = if json {
                to_json(&json!({ "lambda": lambda.0, "branches": branches }))
            } else {
                branches.iter().map(|mu| join(mu)).collect::<Vec<_>>().join("\n")
            };
            Ok(Outcome::new(text, true))
        }
        Command::WeylDim { lambda } => {
            let dim = weyl_dimension(&lambda.0).map_err(|e| Failure::from_core("--lambda", e))?;
            let text = if json {
                to_json(&json!({ "lambda": lambda.0, "dimension": dim.to_string() }))
            } else {
                dim.to_string()
            };
            Ok(Outcome::new(text, true))
        }
        Command::Sample { big, sampling, lattice } => {
            let cfg = sample_config(&sampling, tol, lattice, execution);
            let report = sample_projection_experiment(&big, &cfg).map_err(|e| Failure::from_core("--big", e))?;
            Ok(report_outcome(&report, json))
        }
        Command::CauchySample { lambda, sampling } => {
            let cfg = sample_config(&sampling, tol, None, execution);
            let report = cauchy_matrix_experiment(&lambda.0, &cfg).map_err(|e| Failure::from_core("--lambda", e))?;
            Ok(report_outcome(&report, json))
        }
        Command::Search { big, target, seed, restarts, max_iters, objective_tol, step } => {
            let cfg = SearchConfig { max_iters, restarts, objective_tol, step, seed, tol, execution, ..SearchConfig::default() };
            let result = find_preimage(&big, &target, &cfg).map_err(|e| {
                let flag = match e {
                    Error::ConfigInvalid(_) => "search options",
                    _ => "--target",
                };
                Failure::from_core(flag, e)
            })?;
            let text = if json {
                to_json(&result)
            } else if let Some(w) = &result.witness {
                format!(
                    "FOUND objective={:.3e} restart={} iterations={}\nprojected {}",
                    result.objective, result.restart, result.iterations, w.projected
                )
            } else {
                format!(
                    "NOT_FOUND best objective={:.3e} over {} restarts (evidence, not proof of infeasibility)",
                    result.objective, restarts
                )
            };
            Ok(Outcome::new(text, result.found()))
        }
        Command::Holomorphic { spectrum } => {
            let ok = is_holomorphic_pattern(&spectrum);
            let text = if json { to_json(&json!({ "spectrum": spectrum, "holomorphic": ok })) } else { ok.to_string() };
            Ok(Outcome::new(text, ok))
        }
    }
}

fn sample_config(s: &Sampling, tol: f64, round_to: Option<Lattice>, execution: Execution) -> SampleConfig {
    SampleConfig { trials: s.trials, scale: s.scale, seed: s.seed, tol, round_to, execution }
}

fn report_outcome(r: &ProjectionReport, json: bool) -> Outcome {
    let text = if json {
        to_json(r)
    } else {
        let mut lines = vec![
            format!("trials              {}", r.trials),
            format!("elliptic            {}", r.elliptic_count),
            format!("non-elliptic        {}", r.non_elliptic_count),
            format!("near-degenerate     {}", r.near_degenerate_count),
            format!("interlacing_pass    {}", r.interlacing_pass),
            format!("interlacing_fail    {}", r.interlacing_fail),
        ];
        for (pattern, count) in &r.patterns {
            lines.push(format!("pattern {pattern:<12}{count}"));
        }
        for entry in &r.histogram {
            lines.push(format!("spectrum {} {}", entry.spectrum, entry.count));
        }
        for w in &r.failures {
            lines.push(format!("FAILURE trial {} seed {}: {:?}", w.trial, w.seed, w.projected_values));
        }
        lines.join("\n")
    };
    Outcome::new(text, r.interlacing_fail == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.common.out.clone();
    match run(cli) {
        Ok(outcome) => {
            let mut text = outcome.text;
            text.push('\n');
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: --out {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
