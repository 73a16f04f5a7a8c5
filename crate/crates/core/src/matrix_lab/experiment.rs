//! Randomized projection experiments.
//!
//! Each trial draws its own random stream from `(seed, trial index)`, so a
//! report is identical whether trials run sequentially or in parallel, and
//! any single trial can be replayed on its own.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::{
    conjugate, diagonal_model, project_corner, sample_pseudo_unitary, signed_spectrum_of, trial_rng, ComplexMatrix,
    IndefiniteForm, Verdict,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{HalfInt, Lattice, LatticeSpectrum};
use crate::spectrum::{check_cauchy_tol, check_ggp, merge_candidates, SignedSpectrum, DEFAULT_TOL};

/// Parameters shared by the sampling experiments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleConfig {
    pub trials: usize,
    /// Size of the Lie-algebra element whose exponential conjugates the base point.
    pub scale: f64,
    pub seed: u64,
    pub tol: f64,
    /// Round recovered spectra to this lattice for the histogram.
    pub round_to: Option<Lattice>,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            trials: 1000,
            scale: 0.5,
            seed: 0,
            tol: DEFAULT_TOL,
            round_to: None,
            execution: Execution::default(),
        }
    }
}

impl SampleConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::ConfigInvalid("trials must be at least 1".into()));
        }
        if !(self.scale >= 0.0) || !self.scale.is_finite() {
            return Err(Error::ConfigInvalid(format!("scale must be finite and non-negative, got {}", self.scale)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::ConfigInvalid(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `U(p,q)` orbit projected to `u(p,q-1)`, checked with the signed rule.
    Ggp { big: SignedSpectrum },
    /// Hermitian `U(n)` orbit projected to the corner, checked with Cauchy interlacing.
    Cauchy { lambda: Vec<f64> },
}

/// A sample that failed the interlacing check, with what is needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub seed: u64,
    /// The conjugated element before projection.
    pub matrix: ComplexMatrix,
    /// Recovered values of the projection, descending.
    pub projected_values: Vec<f64>,
    pub projected: Option<SignedSpectrum>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramEntry {
    pub spectrum: LatticeSpectrum,
    pub count: usize,
}

/// Aggregate outcome of a projection experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub experiment: ExperimentKind,
    pub config: SampleConfig,
    pub trials: usize,
    pub elliptic_count: usize,
    pub non_elliptic_count: usize,
    pub near_degenerate_count: usize,
    pub interlacing_pass: usize,
    pub interlacing_fail: usize,
    pub failures: Vec<Witness>,
    /// Merged sign patterns of the passing samples.
    pub patterns: BTreeMap<String, usize>,
    pub histogram: Vec<HistogramEntry>,
}

impl ProjectionReport {
    fn new(experiment: ExperimentKind, config: &SampleConfig) -> Self {
        ProjectionReport {
            experiment,
            config: config.clone(),
            trials: config.trials,
            elliptic_count: 0,
            non_elliptic_count: 0,
            near_degenerate_count: 0,
            interlacing_pass: 0,
            interlacing_fail: 0,
            failures: Vec::new(),
            patterns: BTreeMap::new(),
            histogram: Vec::new(),
        }
    }

    /// Every elliptic sample interlaced.
    pub fn all_passed(&self) -> bool {
        self.interlacing_fail == 0 && self.elliptic_count == self.interlacing_pass
    }
}

enum Outcome {
    NonElliptic,
    NearDegenerate,
    Elliptic { spectrum: SignedSpectrum, pattern: Option<String>, witness: Option<Witness> },
}

fn nearest_lattice_point(lattice: Lattice, x: f64) -> HalfInt {
    let (lo, hi) = (lattice.floor_point(x), lattice.ceil_point(x));
    if x - lo.to_f64() <= hi.to_f64() - x {
        lo
    } else {
        hi
    }
}

fn fold(mut report: ProjectionReport, outcomes: Vec<Result<Outcome>>) -> Result<ProjectionReport> {
    let mut histogram: BTreeMap<LatticeSpectrum, usize> = BTreeMap::new();
    for outcome in outcomes {
        match outcome? {
            Outcome::NonElliptic => report.non_elliptic_count += 1,
            Outcome::NearDegenerate => report.near_degenerate_count += 1,
            Outcome::Elliptic { spectrum, pattern, witness } => {
                report.elliptic_count += 1;
                match witness {
                    None => report.interlacing_pass += 1,
                    Some(w) => {
                        report.interlacing_fail += 1;
                        report.failures.push(w);
                    }
                }
                if let Some(p) = pattern {
                    *report.patterns.entry(p).or_default() += 1;
                }
                if let Some(lattice) = report.config.round_to {
                    let values = spectrum.values().iter().map(|&v| nearest_lattice_point(lattice, v)).collect();
                    let key = LatticeSpectrum::new(values, spectrum.signs().to_vec())?;
                    *histogram.entry(key).or_default() += 1;
                }
            }
        }
    }
    report.histogram = histogram.into_iter().map(|(spectrum, count)| HistogramEntry { spectrum, count }).collect();
    Ok(report)
}

/// Samples the orbit of `big` in `u(p,q)`, projects each sample to
/// `u(p,q-1)` and checks every elliptic projection against `big` with the
/// signed interlacing rule. Non-elliptic and near-degenerate projections are
/// counted but not judged.
pub fn sample_projection_experiment(big: &SignedSpectrum, config: &SampleConfig) -> Result<ProjectionReport> {
    config.validate()?;
    let base = diagonal_model(big)?;
    let form = base.form();
    if form.q == 0 {
        return Err(Error::SignatureMismatch(format!("big spectrum has signature ({},0); need q >= 1", form.p)));
    }
    if form.dim() < 2 {
        return Err(Error::RankTooSmall(form.dim()));
    }
    let run = |trial: usize| -> Result<Outcome> {
        let mut rng = trial_rng(config.seed, trial as u64);
        let g = sample_pseudo_unitary(&form, config.scale, &mut rng)?;
        let x = conjugate(&g, &base)?;
        let projected = project_corner(&x)?;
        let report = signed_spectrum_of(&projected, config.tol)?;
        match report.verdict {
            Verdict::NonElliptic => Ok(Outcome::NonElliptic),
            Verdict::NearDegenerate => Ok(Outcome::NearDegenerate),
            Verdict::EllipticRegular => {
                let spectrum = report.spectrum.expect("elliptic verdict carries a spectrum");
                if check_ggp(big, &spectrum, config.tol)? {
                    let pattern = merge_candidates(big, &spectrum, config.tol)?
                        .into_iter()
                        .find(|m| m.is_allowed())
                        .map(|m| m.pattern().to_string());
                    Ok(Outcome::Elliptic { spectrum, pattern, witness: None })
                } else {
                    let witness = Witness {
                        trial,
                        seed: config.seed,
                        matrix: ComplexMatrix(x.into_matrix()),
                        projected_values: spectrum.values().to_vec(),
                        projected: Some(spectrum.clone()),
                    };
                    Ok(Outcome::Elliptic { spectrum, pattern: None, witness: Some(witness) })
                }
            }
        }
    };
    let outcomes = config.execution.map(config.trials, run);
    fold(ProjectionReport::new(ExperimentKind::Ggp { big: big.clone() }, config), outcomes)
}

/// Conjugates `diag(lambda)` by random unitaries, deletes the last row and
/// column, and checks the eigenvalues of the corner against `lambda` with
/// tolerance-relaxed Cauchy interlacing.
pub fn cauchy_matrix_experiment(lambda: &[f64], config: &SampleConfig) -> Result<ProjectionReport> {
    config.validate()?;
    let n = lambda.len();
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    if let Some(k) = lambda.windows(2).position(|w| !(w[0] >= w[1])) {
        return Err(Error::NotDescending(k + 1));
    }
    let form = IndefiniteForm::new(n, 0)?;
    let d = DMatrix::from_diagonal(&DVector::from_iterator(n, lambda.iter().map(|&v| Complex64::new(v, 0.0))));
    let run = |trial: usize| -> Result<Outcome> {
        let mut rng = trial_rng(config.seed, trial as u64);
        let u = sample_pseudo_unitary(&form, config.scale, &mut rng)?;
        let h = &u * &d * u.adjoint();
        let corner = h.view((0, 0), (n - 1, n - 1)).into_owned();
        let corner = (&corner + corner.adjoint()) * Complex64::new(0.5, 0.0);
        let mut mu: Vec<f64> = corner.symmetric_eigen().eigenvalues.iter().copied().collect();
        mu.sort_by(|a, b| b.total_cmp(a));
        let spectrum = SignedSpectrum::new(mu.clone(), vec![crate::spectrum::Sign::Plus; n - 1])?;
        if check_cauchy_tol(lambda, &mu, config.tol)? {
            Ok(Outcome::Elliptic { spectrum, pattern: None, witness: None })
        } else {
            let witness = Witness {
                trial,
                seed: config.seed,
                matrix: ComplexMatrix(h),
                projected_values: mu,
                projected: None,
            };
            Ok(Outcome::Elliptic { spectrum, pattern: None, witness: Some(witness) })
        }
    };
    let outcomes = config.execution.map(config.trials, run);
    fold(ProjectionReport::new(ExperimentKind::Cauchy { lambda: lambda.to_vec() }, config), outcomes)
}
