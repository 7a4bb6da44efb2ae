//! Special functions: Gauss hypergeometric `2F1` for real arguments and
//! associated Legendre functions of integer degree and order.

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

/// Term budget of a non-terminating hypergeometric series.
pub const MAX_SERIES_TERMS: usize = 200;
/// Accuracy a truncated series must reach before [`MAX_SERIES_TERMS`].
pub const SERIES_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Hyp2f1Error {
    #[error("c = {0} is a non-positive integer (pole of 2F1)")]
    CPole(f64),
    #[error("series did not reach tolerance within {terms} terms (argument {argument})")]
    NonConvergence { terms: usize, argument: f64 },
    #[error("argument z = {0} outside the supported range z < 1")]
    Domain(f64),
}

fn nonpositive_integer(v: f64) -> Option<usize> {
    (v <= 0.0 && v == v.round() && v > -1e9).then(|| (-v) as usize)
}

/// Finite sum of the series truncated after the `degree`-th term.
fn polynomial(a: f64, b: f64, c: f64, z: f64, degree: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..degree {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
    }
    sum
}

fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64, Hyp2f1Error> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            return Ok(sum);
        }
    }
    // ratio of successive terms tends to z; bound the geometric tail
    let tail = term.abs() * z.abs() / (1.0 - z.abs());
    if tail <= SERIES_TOLERANCE * sum.abs() {
        Ok(sum)
    } else {
        Err(Hyp2f1Error::NonConvergence {
            terms: MAX_SERIES_TERMS,
            argument: z,
        })
    }
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real parameters and
/// real `z < 1`.
///
/// Terminating parameter sets (`a` or `b` a non-positive integer) are summed
/// exactly for any `z`. Otherwise the power series is used directly for
/// `-1/2 <= z < 1` and through the Pfaff transformation
/// `2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))` below that; when
/// `c - a` rather than `c - b` terminates, the symmetric variant with
/// `(1-z)^{-b}` is taken.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64, Hyp2f1Error> {
    let terminating = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (m, n) => m.or(n),
    };
    if let Some(cp) = nonpositive_integer(c) {
        // the series survives only if it stops before (c)_k hits zero
        if !terminating.is_some_and(|m| m < cp) {
            return Err(Hyp2f1Error::CPole(c));
        }
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if let Some(m) = terminating {
        return Ok(polynomial(a, b, c, z, m));
    }
    if !(z < 1.0) {
        return Err(Hyp2f1Error::Domain(z));
    }
    if z >= -0.5 {
        return series(a, b, c, z);
    }
    let w = z / (z - 1.0);
    let base = 1.0 - z;
    if let Some(m) = nonpositive_integer(c - b) {
        Ok(base.powf(-a) * polynomial(a, c - b, c, w, m))
    } else if let Some(m) = nonpositive_integer(c - a) {
        Ok(base.powf(-b) * polynomial(c - a, b, c, w, m))
    } else {
        Ok(base.powf(-a) * series(a, c - b, c, w)?)
    }
}

/// Associated Legendre function `P_l^m(t)` for integers `0 <= m <= l`,
/// without the Condon-Shortley phase, so `P_l^l(t) = (2l-1)!! (1-t^2)^{l/2}`.
pub fn assoc_legendre(l: usize, m: usize, t: f64) -> f64 {
    let s = ((1.0 - t) * (1.0 + t)).max(0.0).sqrt();
    assoc_legendre_pair(l, m, t, s).0
}

/// `(P_l^m(t), P_{l-1}^m(t))` with the factor `s = sqrt(1 - t^2)` supplied by
/// the caller, which keeps full relative accuracy when `t = tanh(y)` and
/// `s = sech(y)` for large `|y|`. `P_{l-1}^m` is zero when `l - 1 < m`.
///
/// Together they give the derivative through
/// `(1 - t^2) dP_l^m/dt = (l + m) P_{l-1}^m - l t P_l^m`.
pub fn assoc_legendre_pair(l: usize, m: usize, t: f64, s: f64) -> (f64, f64) {
    if m > l {
        return (0.0, 0.0);
    }
    // P_m^m = (2m-1)!! s^m
    let mut pmm = 1.0;
    for k in 0..m {
        pmm *= (2 * k + 1) as f64 * s;
    }
    if l == m {
        return (pmm, 0.0);
    }
    let mut prev = pmm;
    let mut cur = t * (2 * m + 1) as f64 * pmm;
    for k in (m + 2)..=l {
        let next = ((2 * k - 1) as f64 * t * cur - (k + m - 1) as f64 * prev) / (k - m) as f64;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}
