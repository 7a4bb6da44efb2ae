//! Adaptive Simpson quadrature, including integrals of exponentially decaying
//! integrands over the whole line.

use thiserror::Error;

const MAX_DEPTH: u32 = 48;
const INITIAL_PANELS: usize = 256;
const MAX_DOUBLINGS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuadratureError {
    #[error("integral keeps growing with the window (last value {last} at half-width {half_width})")]
    Diverging { last: f64, half_width: f64 },
    #[error("integrand is not finite")]
    NonFinite,
}

fn simpson_rule(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    width / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson_rule(fa, flm, fm, m - a);
    let right = simpson_rule(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `int_a^b f` by adaptive Simpson to relative tolerance `rel_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64, QuadratureError> {
    let width = (b - a) / INITIAL_PANELS as f64;
    // composite estimate fixes the absolute scale of the tolerance
    let mut rough = 0.0;
    let mut panels = [(0.0, 0.0, 0.0, 0.0, 0.0); INITIAL_PANELS];
    for (k, panel) in panels.iter_mut().enumerate() {
        let lo = a + k as f64 * width;
        let hi = if k + 1 == INITIAL_PANELS { b } else { lo + width };
        let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
        if !(fa.is_finite() && fm.is_finite() && fb.is_finite()) {
            return Err(QuadratureError::NonFinite);
        }
        rough += simpson_rule(fa, fm, fb, hi - lo);
        *panel = (lo, hi, fa, fm, fb);
    }
    let tol = rel_tol * rough.abs().max(f64::MIN_POSITIVE) / INITIAL_PANELS as f64;
    let total: f64 = panels
        .iter()
        .map(|&(lo, hi, fa, fm, fb)| {
            adapt(
                &f,
                lo,
                hi,
                fa,
                fm,
                fb,
                simpson_rule(fa, fm, fb, hi - lo),
                tol,
                MAX_DEPTH,
            )
        })
        .sum();
    if total.is_finite() {
        Ok(total)
    } else {
        Err(QuadratureError::NonFinite)
    }
}

/// `int_{-inf}^{inf} f` for an integrand decaying like `exp(-rate |x|)`.
///
/// Starts on `[-X, X]` with `exp(-rate X) < 1e-14` and doubles `X` until the
/// value changes by less than `1e-12` relative.
pub fn integrate_line<F: Fn(f64) -> f64>(f: F, rate: f64, rel_tol: f64) -> Result<f64, QuadratureError> {
    let mut half_width = 14.0 * core::f64::consts::LN_10 / rate.abs();
    let mut last = integrate(&f, -half_width, half_width, rel_tol)?;
    for _ in 0..MAX_DOUBLINGS {
        half_width *= 2.0;
        let next = integrate(&f, -half_width, half_width, rel_tol)?;
        if (next - last).abs() <= 1e-12 * next.abs() {
            return Ok(next);
        }
        last = next;
    }
    Err(QuadratureError::Diverging { last, half_width })
}
