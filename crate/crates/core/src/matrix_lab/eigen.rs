//! Dense complex eigensolver: Householder reduction to Hessenberg form,
//! single-shift QR iteration to a complex Schur form `A = Q T Q^H`, and
//! eigenvectors by back-substitution on `T`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// An eigenvalue with a unit-norm eigenvector.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: DVector<Complex64>,
}

/// Complex Schur decomposition `A = Q T Q^H` with `Q` unitary and `T` upper
/// triangular.
#[derive(Debug, Clone)]
pub struct Schur {
    pub q: DMatrix<Complex64>,
    pub t: DMatrix<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Reduces `a` to upper Hessenberg form in place and returns the
/// accumulated unitary factor.
fn hessenberg(a: &mut DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let mut q = DMatrix::<Complex64>::identity(n, n);
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H = I - 2 v v^H / (v^H v), applied on both sides.
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * a[(k + 1 + r, j)]).sum();
            let f = dot * (2.0 / vnorm2);
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] -= vr * f;
            }
        }
        for m in [&mut *a, &mut q] {
            for i in 0..n {
                let dot: Complex64 = v.iter().enumerate().map(|(r, vr)| m[(i, k + 1 + r)] * vr).sum();
                let f = dot * (2.0 / vnorm2);
                for (r, vr) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= f * vr.conj();
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = zero();
        }
    }
    q
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with `G [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, zero());
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let (l1, l2) = (half_tr + root, half_tr - root);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Schur decomposition of a square matrix.
pub fn schur(a: &DMatrix<Complex64>) -> Result<Schur> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "schur: matrix must be square");
    let mut t = a.clone();
    let mut q = hessenberg(&mut t);
    if n <= 1 {
        return Ok(Schur { q, t });
    }
    let scale = t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(Schur { q, t });
    }
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iters = 0usize;
    let mut since_deflation = 0usize;
    while hi > 0 {
        if iters > MAX_SWEEPS_PER_EIGENVALUE * n {
            return Err(Error::EigensolverFailure);
        }
        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let diag = t[(lo, lo)].norm() + t[(lo - 1, lo - 1)].norm();
            let reference = if diag == 0.0 { scale } else { diag };
            if sub <= eps * reference {
                t[(lo, lo - 1)] = zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iters += 1;
        since_deflation += 1;
        let shift = if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            t[(hi, hi)] + Complex64::new(t[(hi, hi - 1)].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(t[(hi - 1, hi - 1)], t[(hi - 1, hi)], t[(hi, hi - 1)], t[(hi, hi)])
        };
        for i in lo..=hi {
            t[(i, i)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(t[(k, k)], t[(k + 1, k)]);
            for j in k..n {
                let (x, y) = (t[(k, j)], t[(k + 1, j)]);
                t[(k, j)] = x * c + s * y;
                t[(k + 1, j)] = -s.conj() * x + y * c;
            }
            t[(k + 1, k)] = zero();
            rotations.push((k, c, s));
        }
        for &(k, c, s) in &rotations {
            let rows = (k + 2).min(hi) + 1;
            for i in 0..rows {
                let (x, y) = (t[(i, k)], t[(i, k + 1)]);
                t[(i, k)] = x * c + y * s.conj();
                t[(i, k + 1)] = -x * s + y * c;
            }
            for i in 0..n {
                let (x, y) = (q[(i, k)], q[(i, k + 1)]);
                q[(i, k)] = x * c + y * s.conj();
                q[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            t[(i, i)] += shift;
        }
    }
    for j in 0..n {
        for i in j + 1..n {
            t[(i, j)] = zero();
        }
    }
    Ok(Schur { q, t })
}

/// All eigenpairs of `a`, in the order they appear on the Schur diagonal.
pub fn eigen(a: &DMatrix<Complex64>) -> Result<Vec<EigenPair>> {
    let n = a.nrows();
    let Schur { q, t } = schur(a)?;
    let norm = t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let small = (f64::EPSILON * norm).max(f64::MIN_POSITIVE);
    let mut pairs = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut y = vec![zero(); n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let rhs: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
            let mut den = t[(i, i)] - lambda;
            if den.norm() < small {
                den = Complex64::new(small, 0.0);
            }
            y[i] = -rhs / den;
        }
        let y = DVector::from_vec(y);
        let mut v = &q * y;
        let vn = v.norm();
        v /= Complex64::new(vn, 0.0);
        pairs.push(EigenPair { value: lambda, vector: v });
    }
    Ok(pairs)
}
