//! Implicit-shift QL iterations on symmetric tridiagonal matrices.
//!
//! The complex variant runs the same recurrence in complex arithmetic with
//! complex *orthogonal* plane rotations (`c^2 + s^2 = 1`, not unitary), which
//! keeps a complex-symmetric tridiagonal matrix tridiagonal and symmetric at
//! every step. Cost is O(n^2) for all eigenvalues.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

use super::NumericsError;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 100;

fn check_shape(diagonal: usize, off_diagonal: usize) -> Result<(), NumericsError> {
    if diagonal == 0 || off_diagonal + 1 != diagonal {
        return Err(NumericsError::ShapeMismatch { diagonal, off_diagonal });
    }
    Ok(())
}

/// All eigenvalues of the real symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal (length `n - 1`), in ascending order.
pub fn symmetric_eigenvalues(diagonal: &[f64], off_diagonal: &[f64]) -> Result<Vec<f64>, NumericsError> {
    check_shape(diagonal.len(), off_diagonal.len())?;
    let n = diagonal.len();
    let mut d = diagonal.to_vec();
    let mut e = off_diagonal.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(NumericsError::NoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = norm2(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = norm2(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

fn l1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// `sqrt(a^2 + b^2)` without `hypot`'s cost; falls back to it on overflow.
fn norm2(a: f64, b: f64) -> f64 {
    let r = (a * a + b * b).sqrt();
    if r.is_finite() && r > f64::MIN_POSITIVE {
        r
    } else {
        a.hypot(b)
    }
}

/// Principal square root through the half-angle formulas.
fn csqrt(z: Complex64) -> Complex64 {
    let m = norm2(z.re, z.im);
    if m == 0.0 {
        return Complex64::zero();
    }
    let t = (0.5 * (m + z.re.abs())).sqrt();
    if z.re >= 0.0 {
        Complex64::new(t, 0.5 * z.im / t)
    } else {
        Complex64::new(0.5 * z.im.abs() / t, t.copysign(z.im))
    }
}

/// All eigenvalues of the complex symmetric (`A = A^T`) tridiagonal matrix,
/// sorted by real part, ties by imaginary part.
pub fn complex_symmetric_eigenvalues(
    diagonal: &[Complex64],
    off_diagonal: &[Complex64],
) -> Result<Vec<Complex64>, NumericsError> {
    check_shape(diagonal.len(), off_diagonal.len())?;
    let n = diagonal.len();
    let mut d = diagonal.to_vec();
    let mut e = off_diagonal.to_vec();
    e.push(Complex64::zero());
    let one = Complex64::one();

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = l1(d[m]) + l1(d[m + 1]);
                if l1(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(NumericsError::NoConvergence { index: l });
            }
            // shift: eigenvalue of the leading 2x2 block nearer to d[l]
            let mut g = (d[l + 1] - d[l]) / (e[l] * 2.0);
            let r = csqrt(g * g + one);
            let denom = if (g + r).norm() >= (g - r).norm() { g + r } else { g - r };
            g = d[m] - d[l] + e[l] / denom;
            let (mut s, mut c, mut p) = (one, one, Complex64::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                let rr = f * f + g * g;
                let scale = f.norm_sqr() + g.norm_sqr();
                if scale == 0.0 {
                    d[i + 1] -= p;
                    e[m] = Complex64::zero();
                    deflated = true;
                    break;
                }
                // an isotropic pair (f^2 + g^2 = 0) has no orthogonal rotation
                if rr.norm_sqr() < 1e-28 * scale * scale {
                    return Err(NumericsError::Breakdown { index: i });
                }
                let r = csqrt(rr);
                e[i + 1] = r;
                let inv = r.inv();
                s = f * inv;
                c = g * inv;
                g = d[i + 1] - p;
                let r = (d[i] - g) * s + c * b * 2.0;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = Complex64::zero();
        }
    }
    d.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(d)
}

/// Solves `(T - shift I) x = rhs` for the symmetric tridiagonal `T` by
/// Gaussian elimination with partial pivoting. Exactly zero pivots are
/// replaced by `tiny`, which is what inverse iteration wants.
pub fn solve_shifted(
    diagonal: &[Complex64],
    off_diagonal: &[Complex64],
    shift: Complex64,
    rhs: &[Complex64],
    tiny: f64,
) -> Result<Vec<Complex64>, NumericsError> {
    check_shape(diagonal.len(), off_diagonal.len())?;
    let n = diagonal.len();
    if rhs.len() != n {
        return Err(NumericsError::ShapeMismatch {
            diagonal: n,
            off_diagonal: rhs.len(),
        });
    }
    let tiny = Complex64::new(tiny.max(f64::MIN_POSITIVE), 0.0);
    let mut d: Vec<Complex64> = diagonal.iter().map(|v| v - shift).collect();
    let dl = off_diagonal.to_vec();
    let mut du = off_diagonal.to_vec();
    // second superdiagonal created by row interchanges
    let mut du2 = alloc::vec![Complex64::zero(); n.saturating_sub(2)];
    let mut b = rhs.to_vec();

    for i in 0..n.saturating_sub(1) {
        if d[i].norm() >= dl[i].norm() {
            if d[i].is_zero() {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] = b[i + 1] - fact * b[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            let tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
    }
    if d[n - 1].is_zero() {
        d[n - 1] = tiny;
    }
    b[n - 1] /= d[n - 1];
    if n > 1 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
    Ok(b)
}
