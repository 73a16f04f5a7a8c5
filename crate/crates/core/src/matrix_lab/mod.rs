//! Matrix realizations of elliptic orbits in `u(p,q)`.
//!
//! Conventions: `J = diag(I_p, -I_q)`; `u(p,q)` is `{X : X^H J + J X = 0}`;
//! the subalgebra `u(p,q-1)` sits in the upper-left corner, so projection
//! deletes the last row and column (a negative-definite direction).

pub mod eigen;
mod experiment;
mod signed;

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spectrum::{Sign, SignedSpectrum, DEFAULT_TOL};

pub use experiment::{
    cauchy_matrix_experiment, sample_projection_experiment, ExperimentKind, HistogramEntry, ProjectionReport,
    SampleConfig, Witness,
};
pub use signed::{signed_spectrum_of, Diagnostics, EllipticityReport, Verdict};

/// Relative tolerance for the defining relation of `u(p,q)`.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Tolerance on `g^H J g = J` for conjugating elements.
pub const GROUP_TOL: f64 = 1e-8;

/// Hermitian form `diag(I_p, -I_q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndefiniteForm {
    pub p: usize,
    pub q: usize,
}

impl IndefiniteForm {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::FormViolation("form must have p + q >= 1".into()));
        }
        Ok(IndefiniteForm { p, q })
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Diagonal entry `J_ii`.
    pub fn j(&self, i: usize) -> f64 {
        if i < self.p {
            1.0
        } else {
            -1.0
        }
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&DVector::from_fn(self.dim(), |i, _| Complex64::new(self.j(i), 0.0)))
    }

    /// Real dimension of `u(p,q)`, which is `(p+q)^2`.
    pub fn algebra_dim(&self) -> usize {
        self.dim() * self.dim()
    }

    /// `v^H J v`, which is real because `J` is real diagonal.
    pub fn quadratic(&self, v: &DVector<Complex64>) -> f64 {
        v.iter().enumerate().map(|(i, z)| self.j(i) * z.norm_sqr()).sum()
    }
}

impl fmt::Display for IndefiniteForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u({},{})", self.p, self.q)
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |X^H J + J X|`, the violation of the `u(p,q)` relation.
pub fn structure_residual(form: &IndefiniteForm, x: &DMatrix<Complex64>) -> f64 {
    let n = form.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            // (X^H J)_{ij} = conj(X_ji) J_jj ; (J X)_{ij} = J_ii X_ij
            let r = x[(j, i)].conj() * form.j(j) + x[(i, j)] * form.j(i);
            worst = worst.max(r.norm());
        }
    }
    worst
}

/// `max |g^H J g - J|`.
pub fn group_residual(form: &IndefiniteForm, g: &DMatrix<Complex64>) -> f64 {
    let jg = DMatrix::from_fn(g.nrows(), g.ncols(), |i, j| g[(i, j)] * form.j(i));
    max_abs(&(g.adjoint() * jg - form.matrix()))
}

/// An element of `u(p,q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoSkewElement {
    form: IndefiniteForm,
    matrix: DMatrix<Complex64>,
}

impl PseudoSkewElement {
    pub fn new(form: IndefiniteForm, matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = form.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::FormViolation(format!(
                "matrix is {}x{}, form {form} needs {n}x{n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let residual = structure_residual(&form, &matrix);
        let reference = max_abs(&matrix).max(1.0);
        if residual > STRUCTURE_TOL * reference {
            return Err(Error::FormViolation(format!("matrix is not in {form}: residual {residual:e}")));
        }
        Ok(PseudoSkewElement { form, matrix })
    }

    pub fn form(&self) -> IndefiniteForm {
        self.form
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn residual(&self) -> f64 {
        structure_residual(&self.form, &self.matrix)
    }
}

/// The element of `u(p,q)` with real coordinates `theta` (length `(p+q)^2`):
/// skew-Hermitian diagonal blocks (`p^2` then `q^2` coordinates), then the
/// complex off-diagonal block `B` (`2pq` coordinates) with lower block `B^H`.
pub fn lie_algebra_element(form: &IndefiniteForm, theta: &[f64]) -> Result<DMatrix<Complex64>> {
    if theta.len() != form.algebra_dim() {
        return Err(Error::LengthMismatch { expected: form.algebra_dim(), actual: theta.len() });
    }
    let n = form.dim();
    let mut y = DMatrix::<Complex64>::zeros(n, n);
    let mut k = 0;
    for (offset, size) in [(0, form.p), (form.p, form.q)] {
        for i in 0..size {
            y[(offset + i, offset + i)] = Complex64::new(0.0, theta[k]);
            k += 1;
            for j in i + 1..size {
                let z = Complex64::new(theta[k], theta[k + 1]);
                k += 2;
                y[(offset + i, offset + j)] = z;
                y[(offset + j, offset + i)] = -z.conj();
            }
        }
    }
    for i in 0..form.p {
        for j in 0..form.q {
            let z = Complex64::new(theta[k], theta[k + 1]);
            k += 2;
            y[(i, form.p + j)] = z;
            y[(form.p + j, i)] = z.conj();
        }
    }
    Ok(y)
}

/// Random coordinates for [`lie_algebra_element`]: diagonal entries have
/// standard deviation `scale`, each complex off-diagonal entry has
/// `E|z|^2 = scale^2`.
pub fn random_lie_coordinates<R: Rng + ?Sized>(form: &IndefiniteForm, scale: f64, rng: &mut R) -> Vec<f64> {
    let mut theta = Vec::with_capacity(form.algebra_dim());
    let off = scale / std::f64::consts::SQRT_2;
    let mut normal = |s: f64| s * rng.sample::<f64, _>(StandardNormal);
    for size in [form.p, form.q] {
        for i in 0..size {
            theta.push(normal(scale));
            for _ in i + 1..size {
                theta.push(normal(off));
                theta.push(normal(off));
            }
        }
    }
    for _ in 0..2 * form.p * form.q {
        theta.push(normal(off));
    }
    theta
}

/// Matrix exponential (Padé scaling and squaring).
pub fn expm(y: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    y.exp()
}

/// `exp(Y)` for `Y` drawn from `u(p,q)` by [`random_lie_coordinates`].
pub fn sample_pseudo_unitary<R: Rng + ?Sized>(
    form: &IndefiniteForm,
    scale: f64,
    rng: &mut R,
) -> Result<DMatrix<Complex64>> {
    if !(scale >= 0.0) || !scale.is_finite() {
        return Err(Error::ConfigInvalid(format!("scale must be finite and non-negative, got {scale}")));
    }
    let theta = random_lie_coordinates(form, scale, rng);
    Ok(expm(&lie_algebra_element(form, &theta)?))
}

/// Random element of `U(p,q)`, deterministic in `seed`.
pub fn random_pseudo_unitary(form: &IndefiniteForm, scale: f64, seed: u64) -> Result<DMatrix<Complex64>> {
    sample_pseudo_unitary(form, scale, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Independent random stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `J g^H J`, the inverse of a pseudo-unitary `g`.
fn pseudo_inverse(form: &IndefiniteForm, g: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = g.nrows();
    DMatrix::from_fn(n, n, |i, j| g[(j, i)].conj() * form.j(i) * form.j(j))
}

/// `g X g^{-1}`.
pub fn conjugate(g: &DMatrix<Complex64>, x: &PseudoSkewElement) -> Result<PseudoSkewElement> {
    let form = x.form;
    if g.nrows() != form.dim() || g.ncols() != form.dim() {
        return Err(Error::FormViolation(format!("conjugating matrix has wrong shape for {form}")));
    }
    let residual = group_residual(&form, g);
    let reference = max_abs(g).powi(2).max(1.0);
    if residual > GROUP_TOL * reference {
        return Err(Error::FormViolation(format!("g is not in U({},{}): residual {residual:e}", form.p, form.q)));
    }
    let y = g * &x.matrix * pseudo_inverse(&form, g);
    PseudoSkewElement::new(form, y)
}

/// Diagonal element with signed spectrum `spec`: `i * (+ values)` in the
/// first `p` slots and `i * (- values)` in the last `q`, each descending.
pub fn diagonal_model(spec: &SignedSpectrum) -> Result<PseudoSkewElement> {
    spec.ensure_regular(DEFAULT_TOL)?;
    let (p, q) = spec.signature();
    let form = IndefiniteForm::new(p, q)?;
    let mut diag = spec.values_with_sign(Sign::Plus);
    diag.extend(spec.values_with_sign(Sign::Minus));
    let d = DVector::from_iterator(diag.len(), diag.iter().map(|&v| Complex64::new(0.0, v)));
    PseudoSkewElement::new(form, DMatrix::from_diagonal(&d))
}

/// Upper-left `(n-1) x (n-1)` corner, an element of `u(p,q-1)`.
pub fn project_corner(x: &PseudoSkewElement) -> Result<PseudoSkewElement> {
    let form = x.form;
    if form.dim() == 1 {
        return Err(Error::RankTooSmall(1));
    }
    if form.q == 0 {
        return Err(Error::SignatureMismatch(format!(
            "{form} has no negative direction; use the Hermitian interlacing path"
        )));
    }
    let n = form.dim() - 1;
    let small = IndefiniteForm::new(form.p, form.q - 1)?;
    PseudoSkewElement::new(small, x.matrix.view((0, 0), (n, n)).into_owned())
}

/// Row-major JSON form of a complex matrix: rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(pub DMatrix<Complex64>);

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.0.nrows())
            .map(|i| (0..self.0.ncols()).map(|j| [self.0[(i, j)].re, self.0[(i, j)].im]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != m) {
            return Err(de::Error::custom("matrix rows have different lengths"));
        }
        Ok(ComplexMatrix(DMatrix::from_fn(n, m, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1]))))
    }
}
