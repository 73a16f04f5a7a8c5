//! Constructive search for orbit elements with a prescribed projection.
//!
//! Given a big spectrum and a target small spectrum, the search minimizes
//! the distance between the target and the signed spectrum of
//! `corner(exp(Y) D exp(-Y))`, where `D` is the diagonal model of the big
//! spectrum and `Y` ranges over `u(p,q)` through its `(p+q)^2` real
//! coordinates. The objective is not smooth where eigenvalues cross, so the
//! local method is Nelder-Mead with random restarts.
//!
//! A `NOT_FOUND` result is evidence, not a proof of infeasibility.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix_lab::{
    conjugate, diagonal_model, expm, lie_algebra_element, project_corner, random_lie_coordinates,
    signed_spectrum_of, trial_rng, ComplexMatrix, EllipticityReport, PseudoSkewElement, Verdict,
};
use crate::spectrum::{check_ggp, validate_pair, SignedSpectrum, DEFAULT_TOL};

/// Objective value assigned to projections without a regular elliptic spectrum.
pub const DEGENERATE_PENALTY: f64 = 10.0;

/// Objective value for parameters where the pipeline itself fails.
const FAILURE_PENALTY: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Nelder-Mead iterations per restart.
    pub max_iters: usize,
    pub restarts: usize,
    pub objective_tol: f64,
    /// Edge length of the initial simplex.
    pub step: f64,
    /// Spread of the random starting points of restarts after the first.
    pub start_scale: f64,
    pub seed: u64,
    /// Tolerance handed to the spectral classification and interlacing check.
    pub tol: f64,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_iters: 5000,
            restarts: 20,
            objective_tol: 1e-6,
            step: 0.5,
            start_scale: 0.5,
            seed: 0,
            tol: DEFAULT_TOL,
            execution: Execution::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::ConfigInvalid(format!("{name} must be positive and finite, got {v}")))
            }
        };
        if self.max_iters == 0 {
            return Err(Error::ConfigInvalid("max_iters must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::ConfigInvalid("restarts must be at least 1".into()));
        }
        positive("objective_tol", self.objective_tol)?;
        positive("step", self.step)?;
        positive("start_scale", self.start_scale)?;
        positive("tol", self.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchStatus {
    Found,
    NotFound,
}

/// Everything needed to replay a successful search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchWitness {
    /// Coordinates of `Y` in `u(p,q)`.
    pub theta: Vec<f64>,
    /// The conjugated element `exp(Y) D exp(-Y)` before projection.
    pub matrix: ComplexMatrix,
    pub projected: SignedSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub big: SignedSpectrum,
    pub target: SignedSpectrum,
    pub config: SearchConfig,
    /// Best objective of the reported restart.
    pub objective: f64,
    /// Index of the reported restart: the lowest that succeeded, or the best one.
    pub restart: usize,
    pub iterations: usize,
    pub witness: Option<SearchWitness>,
}

impl SearchResult {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

/// Squared value differences plus one per mismatched sign; lengths must agree.
pub fn signed_distance(a: &SignedSpectrum, target: &SignedSpectrum) -> f64 {
    if a.len() != target.len() {
        return DEGENERATE_PENALTY + a.len().abs_diff(target.len()) as f64;
    }
    a.values()
        .iter()
        .zip(target.values())
        .map(|(x, y)| (x - y).powi(2))
        .chain(a.signs().iter().zip(target.signs()).map(|(s, t)| if s == t { 0.0 } else { 1.0 }))
        .sum()
}

/// Distance from a classified projection to `target`. Zero exactly when the
/// projection is regular elliptic with spectrum equal to `target`.
pub fn spectrum_distance(report: &EllipticityReport, target: &SignedSpectrum) -> f64 {
    match (&report.verdict, &report.spectrum) {
        (Verdict::EllipticRegular, Some(s)) => signed_distance(s, target),
        _ => DEGENERATE_PENALTY + report.diagnostics.max_abs_re,
    }
}

/// One evaluation of the search pipeline at coordinates `theta`.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub objective: f64,
    pub element: PseudoSkewElement,
    pub report: EllipticityReport,
}

/// Projection of the orbit point `exp(Y(theta)) D exp(-Y(theta))` and its
/// distance to `target`.
pub fn evaluate(base: &PseudoSkewElement, theta: &[f64], target: &SignedSpectrum, tol: f64) -> Result<Evaluation> {
    let form = base.form();
    let g = expm(&lie_algebra_element(&form, theta)?);
    let element = conjugate(&g, base)?;
    let report = signed_spectrum_of(&project_corner(&element)?, tol)?;
    Ok(Evaluation { objective: spectrum_distance(&report, target), element, report })
}

struct LocalResult {
    theta: Vec<f64>,
    objective: f64,
    iterations: usize,
}

/// Adaptive Nelder-Mead. Stops when `stop_below` is reached, when `abort`
/// says so, or after `max_iters` iterations. A collapsed simplex is rebuilt
/// around the best vertex while iterations remain.
fn nelder_mead<F, A>(f: F, x0: Vec<f64>, step: f64, max_iters: usize, stop_below: f64, abort: A) -> Option<LocalResult>
where
    F: Fn(&[f64]) -> f64,
    A: Fn() -> bool,
{
    let n = x0.len();
    let nf = n as f64;
    let (alpha, gamma) = (1.0, 1.0 + 2.0 / nf);
    let (rho, sigma) = (0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf.max(2.0));

    let build = |center: &[f64], fc: f64, edge: f64| -> Vec<(Vec<f64>, f64)> {
        let mut simplex = vec![(center.to_vec(), fc)];
        for i in 0..n {
            let mut x = center.to_vec();
            x[i] += edge;
            let fx = f(&x);
            simplex.push((x, fx));
        }
        simplex
    };
    let f0 = f(&x0);
    if f0 < stop_below {
        return Some(LocalResult { theta: x0, objective: f0, iterations: 0 });
    }
    let mut simplex = build(&x0, f0, step);
    let mut iterations = 0;
    let mut edge = step;
    while iterations < max_iters {
        if abort() {
            return None;
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[0].1 < stop_below {
            break;
        }
        let spread = simplex[n].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diameter < 1e-10 || (spread <= 1e-15 * (1.0 + simplex[0].1.abs()) && diameter < 1e-6) {
            edge *= 0.5;
            if edge < 1e-8 {
                edge = step;
            }
            let (best, fb) = simplex[0].clone();
            simplex = build(&best, fb, edge);
            iterations += 1;
            continue;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..n).map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / nf).collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> { (0..n).map(|k| centroid[k] + t * (worst.0[k] - centroid[k])).collect() };

        let xr = along(-alpha);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-alpha * gamma);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = along(-alpha * rho);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(rho);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < worst.1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = (0..n).map(|k| best[k] + sigma * (v.0[k] - best[k])).collect();
                    let fx = f(&x);
                    *v = (x, fx);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (theta, objective) = simplex.swap_remove(0);
    Some(LocalResult { theta, objective, iterations })
}

/// Searches for an element of the orbit of `big` whose corner projection has
/// signed spectrum `target`.
///
/// Restart 0 starts at the diagonal model itself; later restarts start at
/// random coordinates drawn from `(seed, restart)`. Restarts may run
/// concurrently; the reported restart is always the lowest-indexed success,
/// so the result is deterministic.
pub fn find_preimage(big: &SignedSpectrum, target: &SignedSpectrum, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    validate_pair(big, target, cfg.tol)?;
    let base = diagonal_model(big)?;
    let form = base.form();
    let objective = |theta: &[f64]| match evaluate(&base, theta, target, cfg.tol) {
        Ok(e) => e.objective,
        Err(_) => FAILURE_PENALTY,
    };
    let stop_below = cfg.objective_tol * 1e-4;
    let first_found = AtomicUsize::new(usize::MAX);

    let outcomes = cfg.execution.map(cfg.restarts, |r| {
        let x0 = if r == 0 {
            vec![0.0; form.algebra_dim()]
        } else {
            random_lie_coordinates(&form, cfg.start_scale, &mut trial_rng(cfg.seed, r as u64))
        };
        let local = nelder_mead(objective, x0, cfg.step, cfg.max_iters, stop_below, || {
            first_found.load(Ordering::Relaxed) < r
        })?;
        let found = if local.objective < cfg.objective_tol {
            let eval = evaluate(&base, &local.theta, target, cfg.tol).ok();
            match eval.as_ref().and_then(|e| e.report.spectrum.as_ref()) {
                Some(s) => check_ggp(big, s, cfg.tol).unwrap_or(false),
                None => false,
            }
        } else {
            false
        };
        if found {
            first_found.fetch_min(r, Ordering::Relaxed);
        }
        Some((local, found))
    });

    let chosen = outcomes
        .iter()
        .enumerate()
        .find_map(|(r, o)| o.as_ref().filter(|(_, found)| *found).map(|_| r))
        .or_else(|| {
            outcomes
                .iter()
                .enumerate()
                .filter_map(|(r, o)| o.as_ref().map(|(l, _)| (r, l.objective)))
                .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
                .map(|(r, _)| r)
        })
        .expect("restart 0 is never aborted");
    let (local, found) = outcomes[chosen].as_ref().expect("chosen restart ran");

    let witness = if *found {
        let eval = evaluate(&base, &local.theta, target, cfg.tol)?;
        Some(SearchWitness {
            theta: local.theta.clone(),
            matrix: ComplexMatrix(eval.element.into_matrix()),
            projected: eval.report.spectrum.expect("found implies elliptic"),
        })
    } else {
        None
    };
    Ok(SearchResult {
        status: if *found { SearchStatus::Found } else { SearchStatus::NotFound },
        big: big.clone(),
        target: target.clone(),
        config: cfg.clone(),
        objective: local.objective,
        restart: chosen,
        iterations: local.iterations,
        witness,
    })
}
