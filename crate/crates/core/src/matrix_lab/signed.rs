use serde::Serialize;

use super::eigen::eigen;
use super::PseudoSkewElement;
use crate::error::Result;
use crate::spectrum::{Sign, SignedSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    EllipticRegular,
    NonElliptic,
    NearDegenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Frobenius norm of the matrix.
    pub norm: f64,
    /// Smallest distance between two eigenvalues (infinite for 1x1).
    pub min_gap: f64,
    pub max_abs_re: f64,
    /// Smallest `|v^H J v|` over unit eigenvectors.
    pub min_krein: f64,
}

/// Classification of an element of `u(p,q)` with its signed spectrum when
/// it is elliptic and regular.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipticityReport {
    pub verdict: Verdict,
    pub spectrum: Option<SignedSpectrum>,
    pub diagnostics: Diagnostics,
}

impl EllipticityReport {
    pub fn is_elliptic(&self) -> bool {
        self.verdict == Verdict::EllipticRegular
    }
}

/// Eigenvalues `iχ_k` of `x` with signs `sign(v_k^H J v_k)`.
///
/// The element is elliptic and regular when every eigenvalue has
/// `|Re| < tol * max(‖X‖, 1)`, eigenvalues are separated by more than the
/// same amount, every unit eigenvector has `|v^H J v| > tol`, and the signs
/// reproduce the signature of the form. A violation of the first test gives
/// `NON_ELLIPTIC`, of the others `NEAR_DEGENERATE`.
pub fn signed_spectrum_of(x: &PseudoSkewElement, tol: f64) -> Result<EllipticityReport> {
    let form = x.form();
    let m = x.matrix();
    let norm = m.norm();
    let threshold = tol * norm.max(1.0);
    let pairs = eigen(m)?;

    let max_abs_re = pairs.iter().map(|p| p.value.re.abs()).fold(0.0, f64::max);
    let mut min_gap = f64::INFINITY;
    for (i, a) in pairs.iter().enumerate() {
        for b in &pairs[i + 1..] {
            min_gap = min_gap.min((a.value - b.value).norm());
        }
    }
    let krein: Vec<f64> = pairs.iter().map(|p| form.quadratic(&p.vector)).collect();
    let min_krein = krein.iter().map(|k| k.abs()).fold(f64::INFINITY, f64::min);
    let diagnostics = Diagnostics { norm, min_gap, max_abs_re, min_krein };

    let degenerate = |verdict| Ok(EllipticityReport { verdict, spectrum: None, diagnostics });
    if max_abs_re >= threshold {
        return degenerate(Verdict::NonElliptic);
    }
    if min_gap <= threshold || min_krein <= tol {
        return degenerate(Verdict::NearDegenerate);
    }
    let values: Vec<f64> = pairs.iter().map(|p| p.value.im).collect();
    let signs: Vec<Sign> = krein.iter().map(|&k| Sign::of(k)).collect();
    let spectrum = SignedSpectrum::new(values, signs)?;
    if spectrum.signature() != (form.p, form.q) {
        return degenerate(Verdict::NearDegenerate);
    }
    Ok(EllipticityReport { verdict: Verdict::EllipticRegular, spectrum: Some(spectrum), diagnostics })
}
