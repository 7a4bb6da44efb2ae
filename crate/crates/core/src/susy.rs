//! Superpotentials and partner potentials.
//!
//! A superpotential `U = a + i b` generates the pair
//! `V1 = U^2 + U'` and `V2 = U^2 - U'`. Imposing `a = b' / (2 b)` makes the
//! imaginary part of `V2` vanish identically:
//!
//! ```text
//! V1 = (a^2 - b^2 + a') + 2 i b'
//! V2 =  a^2 - b^2 - a'
//! ```
//!
//! so `V2` is real while `V1` stays complex, and `V1 - V2 = 2 U'`.

use alloc::sync::Arc;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::sech;

/// Number of probe samples used to validate a user supplied `b(x)`.
pub const PROBE_POINTS: usize = 512;

/// `|b(x)|` at or below this value makes `b' / (2 b)` singular.
pub const VALUE_FLOOR: f64 = 1e-300;

/// Step of the central differences used to audit user derivatives.
const FD_STEP: f64 = 1e-4;
/// Allowed derivative mismatch, relative to the largest probe magnitude.
const FD_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SusyError {
    #[error("parameter {name} must be finite and non-zero, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("mu = lambda = {0} is excluded for this family (use the explicit bypass to allow it)")]
    MuEqualsLambda(f64),
    #[error("working interval [{lo}, {hi}] is empty or not finite")]
    BadInterval { lo: f64, hi: f64 },
    #[error("b({x}) = {value} is at or below the floor; a = b'/(2b) is singular there")]
    SingularConstraint { x: f64, value: f64 },
    #[error("b changes sign on the working interval (b({x}) = {value}); the constraint needs a definite b")]
    SignChange { x: f64, value: f64 },
    #[error("{which} derivative at x = {x} is {analytic}, central difference gives {finite_difference}")]
    DerivativeMismatch {
        which: &'static str,
        x: f64,
        analytic: f64,
        finite_difference: f64,
    },
    #[error("non-finite sample of b or its derivatives at x = {x}")]
    NonFinite { x: f64 },
}

/// A real function with analytic first and second derivatives.
pub trait SmoothFunction {
    fn value(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
}

/// [`SmoothFunction`] assembled from three closures.
#[derive(Clone, Copy)]
pub struct FnTriple<F, G, H> {
    value: F,
    d1: G,
    d2: H,
}

/// Wraps `value`, `d1`, `d2` closures as a [`SmoothFunction`].
pub fn smooth_fn<F, G, H>(value: F, d1: G, d2: H) -> FnTriple<F, G, H>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    FnTriple { value, d1, d2 }
}

impl<F, G, H> SmoothFunction for FnTriple<F, G, H>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (self.d1)(x)
    }
    fn d2(&self, x: f64) -> f64 {
        (self.d2)(x)
    }
}

/// Closed interval on which a user supplied `b` is validated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64) -> Self {
        Self::new(-half_width, half_width)
    }

    fn probe(&self, count: usize) -> impl Iterator<Item = f64> + '_ {
        let step = (self.hi - self.lo) / (count - 1) as f64;
        (0..count).map(move |i| self.lo + i as f64 * step)
    }
}

/// Parameters of the sech/tanh family `a = -(mu/2) tanh(mu x)`, `b = lambda sech(mu x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarfParams {
    mu: f64,
    lambda: f64,
}

impl ScarfParams {
    /// Validated parameters: `mu != 0`, `lambda != 0` and `mu != lambda`.
    pub fn new(mu: f64, lambda: f64) -> Result<Self, SusyError> {
        let p = Self::new_allowing_mu_eq_lambda(mu, lambda)?;
        if mu == lambda {
            return Err(SusyError::MuEqualsLambda(mu));
        }
        Ok(p)
    }

    /// Same as [`ScarfParams::new`] but accepts `mu == lambda`.
    pub fn new_allowing_mu_eq_lambda(mu: f64, lambda: f64) -> Result<Self, SusyError> {
        for (name, value) in [("mu", mu), ("lambda", lambda)] {
            if !value.is_finite() || value == 0.0 {
                return Err(SusyError::InvalidParameter { name, value });
            }
        }
        Ok(Self { mu, lambda })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `lambda / mu`.
    pub fn ratio(&self) -> f64 {
        self.lambda / self.mu
    }

    pub fn lambda_bar(&self) -> f64 {
        lambda_bar(self)
    }

    /// `lambda_bar (lambda_bar - 1) = lambda^2 / mu^2 - 1/4`.
    pub fn well_strength(&self) -> f64 {
        let r = self.ratio();
        r * r - 0.25
    }

    /// Asymptotic value `mu^2 / 4` of both partner potentials.
    pub fn continuum_edge(&self) -> f64 {
        0.25 * self.mu * self.mu
    }
}

/// Larger root `1/2 + |lambda/mu|` of `t (t - 1) = lambda^2/mu^2 - 1/4`.
pub fn lambda_bar(p: &ScarfParams) -> f64 {
    0.5 + p.ratio().abs()
}

#[derive(Clone)]
enum SuperRepr {
    General {
        b: Arc<dyn SmoothFunction + Send + Sync>,
        sign: f64,
    },
    Scarf(ScarfParams),
}

/// Complex superpotential `U = a + i b` with `a = b' / (2 b)`.
#[derive(Clone)]
pub struct Superpotential {
    repr: SuperRepr,
}

impl fmt::Debug for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            SuperRepr::General { sign, .. } => f
                .debug_struct("Superpotential")
                .field("kind", &"general")
                .field("sign", sign)
                .finish(),
            SuperRepr::Scarf(p) => f
                .debug_struct("Superpotential")
                .field("kind", &"scarf")
                .field("params", p)
                .finish(),
        }
    }
}

impl Superpotential {
    pub fn a(&self, x: f64) -> f64 {
        match &self.repr {
            SuperRepr::General { b, .. } => 0.5 * b.d1(x) / b.value(x),
            SuperRepr::Scarf(p) => -0.5 * p.mu * (p.mu * x).tanh(),
        }
    }

    pub fn a_prime(&self, x: f64) -> f64 {
        match &self.repr {
            SuperRepr::General { b, .. } => {
                let (f, f1, f2) = (b.value(x), b.d1(x), b.d2(x));
                (f2 * f - f1 * f1) / (2.0 * f * f)
            }
            SuperRepr::Scarf(p) => {
                let s = sech(p.mu * x);
                -0.5 * p.mu * p.mu * s * s
            }
        }
    }

    pub fn b(&self, x: f64) -> f64 {
        match &self.repr {
            SuperRepr::General { b, .. } => b.value(x),
            SuperRepr::Scarf(p) => p.lambda * sech(p.mu * x),
        }
    }

    pub fn b_prime(&self, x: f64) -> f64 {
        match &self.repr {
            SuperRepr::General { b, .. } => b.d1(x),
            SuperRepr::Scarf(p) => {
                let y = p.mu * x;
                -p.lambda * p.mu * sech(y) * y.tanh()
            }
        }
    }

    /// Sign of `b` on the working interval (+1 or -1).
    pub fn b_sign(&self) -> f64 {
        match &self.repr {
            SuperRepr::General { sign, .. } => *sign,
            SuperRepr::Scarf(p) => p.lambda.signum(),
        }
    }

    pub fn scarf_params(&self) -> Option<ScarfParams> {
        match &self.repr {
            SuperRepr::Scarf(p) => Some(*p),
            SuperRepr::General { .. } => None,
        }
    }

    pub fn u(&self, x: f64) -> Complex64 {
        Complex64::new(self.a(x), self.b(x))
    }

    pub fn u_prime(&self, x: f64) -> Complex64 {
        Complex64::new(self.a_prime(x), self.b_prime(x))
    }

    /// `|a(x) - b'(x) / (2 b(x))|`.
    pub fn constraint_residual(&self, x: f64) -> f64 {
        (self.a(x) - 0.5 * self.b_prime(x) / self.b(x)).abs()
    }

    /// `(U^2 + U', U^2 - U')` evaluated in complex arithmetic, without using
    /// the constraint to simplify.
    pub fn unconstrained_pair(&self, x: f64) -> (Complex64, Complex64) {
        let u = self.u(x);
        let up = self.u_prime(x);
        (u * u + up, u * u - up)
    }
}

/// Builds `U` from `b = f`, with `a = f'/(2f)` and `a' = (f'' f - f'^2)/(2 f^2)`.
///
/// `f` is probed on [`PROBE_POINTS`] uniform samples of `interval`: it must be
/// finite, of one sign and above [`VALUE_FLOOR`] in magnitude, and its
/// derivatives must agree with central differences. A negative-definite `f` is
/// accepted; the sign is kept in `b` and reported by
/// [`Superpotential::b_sign`].
pub fn make_superpotential<F>(f: F, interval: Interval) -> Result<Superpotential, SusyError>
where
    F: SmoothFunction + Send + Sync + 'static,
{
    if !(interval.lo.is_finite() && interval.hi.is_finite() && interval.hi > interval.lo) {
        return Err(SusyError::BadInterval {
            lo: interval.lo,
            hi: interval.hi,
        });
    }

    let mut sign = 0.0;
    let mut scale: f64 = 0.0;
    for x in interval.probe(PROBE_POINTS) {
        let (v, d1, d2) = (f.value(x), f.d1(x), f.d2(x));
        if !(v.is_finite() && d1.is_finite() && d2.is_finite()) {
            return Err(SusyError::NonFinite { x });
        }
        if v.abs() <= VALUE_FLOOR {
            return Err(SusyError::SingularConstraint { x, value: v });
        }
        if sign == 0.0 {
            sign = v.signum();
        } else if v.signum() != sign {
            return Err(SusyError::SignChange { x, value: v });
        }
        scale = scale.max(v.abs()).max(d1.abs()).max(d2.abs());
    }

    let tol = FD_TOLERANCE * scale;
    for x in interval.probe(PROBE_POINTS) {
        let (fm, f0, fp) = (f.value(x - FD_STEP), f.value(x), f.value(x + FD_STEP));
        let fd1 = (fp - fm) / (2.0 * FD_STEP);
        let fd2 = (fp - 2.0 * f0 + fm) / (FD_STEP * FD_STEP);
        for (which, analytic, finite_difference) in [("first", f.d1(x), fd1), ("second", f.d2(x), fd2)] {
            // rounding in the second difference
            let slack = if which == "second" {
                40.0 * f64::EPSILON * f0.abs() / (FD_STEP * FD_STEP)
            } else {
                0.0
            };
            if (analytic - finite_difference).abs() > tol + slack {
                return Err(SusyError::DerivativeMismatch {
                    which,
                    x,
                    analytic,
                    finite_difference,
                });
            }
        }
    }

    Ok(Superpotential {
        repr: SuperRepr::General { b: Arc::new(f), sign },
    })
}

/// `a = -(mu/2) tanh(mu x)`, `b = lambda sech(mu x)` with closed-form derivatives.
pub fn scarf2_superpotential(p: ScarfParams) -> Superpotential {
    Superpotential {
        repr: SuperRepr::Scarf(p),
    }
}

#[derive(Clone, Debug)]
enum PairRepr {
    Partner(Superpotential),
    Scarf(ScarfParams),
}

/// The complex potential `V1` and its real partner `V2`.
#[derive(Clone, Debug)]
pub struct PotentialPair {
    repr: PairRepr,
}

impl PotentialPair {
    pub fn v1(&self, x: f64) -> Complex64 {
        match &self.repr {
            PairRepr::Partner(u) => {
                let (a, b) = (u.a(x), u.b(x));
                Complex64::new(a * a - b * b + u.a_prime(x), 2.0 * u.b_prime(x))
            }
            PairRepr::Scarf(p) => {
                let (mu, y) = (p.mu, p.mu * x);
                let s = sech(y);
                let re = 0.25 * mu * mu - mu * mu * (p.well_strength() + 1.0) * s * s;
                let im = -2.0 * p.lambda * mu * s * y.tanh();
                Complex64::new(re, im)
            }
        }
    }

    /// The real partner; its imaginary part is zero by construction.
    pub fn v2(&self, x: f64) -> f64 {
        match &self.repr {
            PairRepr::Partner(u) => {
                let (a, b) = (u.a(x), u.b(x));
                a * a - b * b - u.a_prime(x)
            }
            PairRepr::Scarf(p) => {
                let (mu, s) = (p.mu, sech(p.mu * x));
                0.25 * mu * mu - mu * mu * p.well_strength() * s * s
            }
        }
    }

    pub fn v2_complex(&self, x: f64) -> Complex64 {
        Complex64::new(self.v2(x), 0.0)
    }

    pub fn u_prime(&self, x: f64) -> Complex64 {
        self.superpotential().u_prime(x)
    }

    pub fn superpotential(&self) -> Superpotential {
        match &self.repr {
            PairRepr::Partner(u) => u.clone(),
            PairRepr::Scarf(p) => scarf2_superpotential(*p),
        }
    }

    /// `mu^2/4` for the sech/tanh family; `None` for a general pair.
    pub fn continuum_edge(&self) -> Option<f64> {
        match &self.repr {
            PairRepr::Scarf(p) => Some(p.continuum_edge()),
            PairRepr::Partner(u) => u.scarf_params().map(|p| p.continuum_edge()),
        }
    }
}

/// `V1 = (a^2 - b^2 + a') + 2 i b'`, `V2 = a^2 - b^2 - a'`.
pub fn partner_potentials(u: &Superpotential) -> PotentialPair {
    PotentialPair {
        repr: PairRepr::Partner(u.clone()),
    }
}

/// Closed forms
/// `V1 = mu^2/4 - mu^2 [w + 1] sech^2 - 2 i lambda mu sech tanh` and
/// `V2 = mu^2/4 - mu^2 w sech^2`, with `w = lambda^2/mu^2 - 1/4`.
pub fn scarf2_potentials(p: ScarfParams) -> PotentialPair {
    PotentialPair {
        repr: PairRepr::Scarf(p),
    }
}
