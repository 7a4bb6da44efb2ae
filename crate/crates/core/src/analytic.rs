//! Closed-form oracles for the sech/tanh family: bound-state energies,
//! eigenfunctions of the real partner `V2`, the two-level closed forms for
//! `lambda/mu = -5/2`, and the zero-energy state of the complex partner `V1`.
//!
//! The real partner is a Poschl-Teller well `-mu^2 w sech^2(mu x)` with
//! `w = t (t - 1)`, `t = lambda_bar`; its levels are
//! `E_n = mu^2/4 - mu^2 (t - 1 - n)^2` for integers `0 <= n < t - 1`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::numerics::quadrature::{integrate_line, QuadratureError};
use crate::special::{assoc_legendre_pair, hyp2f1, Hyp2f1Error};
use crate::susy::{scarf2_superpotential, ScarfParams};
use crate::{sech, I};

/// Tolerance for treating `lambda_bar` as an integer.
const INTEGER_TOLERANCE: f64 = 1e-12;
/// Half-width (in units of `1/mu`) where the printed hypergeometric forms are
/// compared against the Legendre closed forms.
const COMPARISON_WINDOW: f64 = 1.5;
const COMPARISON_SAMPLES: usize = 301;
/// Agreement threshold on `1 - |overlap|` for that comparison.
pub const FLUGGE_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("closed forms for the two-level table need lambda/mu = -5/2 (lambda_bar = 3), got lambda_bar = {0}")]
    NotTableCase(f64),
    #[error("level n = {n} is not bound for lambda_bar = {lambda_bar} (need n < lambda_bar - 1)")]
    LevelNotBound { n: usize, lambda_bar: f64 },
    #[error("the table lists only n = 0 and n = 1, got {0}")]
    TableLevel(usize),
    #[error("lambda_bar = {0} is not an integer >= 2; no polynomial closed form")]
    NonIntegerLambdaBar(f64),
    #[error("lambda_bar = {0} must exceed 1")]
    LambdaBarTooSmall(f64),
    #[error("wavefunction is not normalizable: {0}")]
    NotNormalizable(QuadratureError),
    #[error(transparent)]
    Hypergeometric(#[from] Hyp2f1Error),
}

/// Which Hamiltonian a state or energy belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partner {
    /// Complex `H1 = -d^2/dx^2 + V1`.
    Partner1,
    /// Real `H2 = -d^2/dx^2 + V2`.
    Partner2,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundStateEnergy {
    pub n: usize,
    pub energy: f64,
    pub which: Partner,
}

/// `E_n = mu^2/4 - (lambda_bar - 1 - n)^2 mu^2` for all integers
/// `0 <= n < lambda_bar - 1`, ascending in energy; shared by both partners.
pub fn bound_energies(mu: f64, lambda_bar: f64) -> Vec<BoundStateEnergy> {
    let mu2 = mu * mu;
    (0..)
        .take_while(|&n| (n as f64) < lambda_bar - 1.0)
        .map(|n| {
            let k = lambda_bar - 1.0 - n as f64;
            BoundStateEnergy {
                n,
                energy: 0.25 * mu2 - k * k * mu2,
                which: Partner::Both,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateLabel {
    Level(usize),
    ZeroMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    ZeroMode(ScarfParams),
    Table {
        which: Partner,
        n: usize,
        mu: f64,
    },
    Legendre {
        mu: f64,
        degree: usize,
        order: usize,
    },
    /// `cosh^t(mu x) [sinh(mu x)] 2F1(a, b; c; -sinh^2(mu x))`
    Hypergeometric {
        mu: f64,
        power: f64,
        odd: bool,
        a: f64,
        b: f64,
        c: f64,
    },
}

/// A closed-form wavefunction with its analytic derivative (where known),
/// parity, decay rate and an overall factor (normalization times phase).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormWavefunction {
    form: Form,
    parity: Parity,
    label: StateLabel,
    decay_rate: f64,
    factor: Complex64,
    normalization: Option<f64>,
}

impl ClosedFormWavefunction {
    fn new(form: Form, parity: Parity, label: StateLabel, decay_rate: f64) -> Self {
        Self {
            form,
            parity,
            label,
            decay_rate,
            factor: Complex64::new(1.0, 0.0),
            normalization: None,
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn label(&self) -> StateLabel {
        self.label
    }

    /// `kappa` in `|psi| ~ exp(-kappa |x|)`.
    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    /// Normalization constant applied by [`normalized`], `None` while unresolved.
    pub fn normalization(&self) -> Option<f64> {
        self.normalization
    }

    /// Overall complex factor multiplying the bare closed form.
    pub fn factor(&self) -> Complex64 {
        self.factor
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            factor: self.factor * c,
            normalization: None,
            ..*self
        }
    }

    pub fn try_evaluate(&self, x: f64) -> Result<Complex64, AnalyticError> {
        Ok(self.factor * self.bare(x)?)
    }

    /// Value at `x`; NaN if a hypergeometric form cannot be summed there.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        self.try_evaluate(x).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// Analytic `d psi / dx`; `None` for the hypergeometric forms.
    pub fn derivative(&self, x: f64) -> Option<Complex64> {
        let bare = match self.form {
            Form::ZeroMode(p) => scarf2_superpotential(p).u(x) * zero_mode_bare(p, x),
            Form::Table { which, n, mu } => {
                let y = mu * x;
                let (s, t) = (sech(y), y.tanh());
                let d = match (which, n) {
                    (Partner::Partner2, 0) => Complex64::new(-2.0 * s * s * t, 0.0),
                    (Partner::Partner2, _) => Complex64::new(s * (2.0 * s * s - 1.0), 0.0),
                    (_, 0) => Complex64::new(s * s * (s * s - 2.0 * t * t), -3.0 * s * s * s * t),
                    (_, _) => Complex64::new(-s * t + 5.0 * s * s * s * t, 5.0 / 3.0 * s * s * (s * s - 2.0 * t * t)),
                };
                d * mu
            }
            Form::Legendre { mu, degree, order } => {
                let y = mu * x;
                let t = y.tanh();
                let (p, pm1) = assoc_legendre_pair(degree, order, t, sech(y));
                Complex64::new(mu * ((degree + order) as f64 * pm1 - degree as f64 * t * p), 0.0)
            }
            Form::Hypergeometric { .. } => return None,
        };
        Some(self.factor * bare)
    }

    fn bare(&self, x: f64) -> Result<Complex64, AnalyticError> {
        Ok(match self.form {
            Form::ZeroMode(p) => zero_mode_bare(p, x),
            Form::Table { which, n, mu } => {
                let y = mu * x;
                let (s, t) = (sech(y), y.tanh());
                match (which, n) {
                    (Partner::Partner2, 0) => Complex64::new(s * s, 0.0),
                    // sech^2 sinh = sech tanh
                    (Partner::Partner2, _) => Complex64::new(s * t, 0.0),
                    (_, 0) => Complex64::new(s * s * t, s * s * s),
                    (_, _) => Complex64::new(s * (1.0 - 5.0 / 3.0 * s * s), 5.0 / 3.0 * s * s * t),
                }
            }
            Form::Legendre { mu, degree, order } => {
                let y = mu * x;
                Complex64::new(assoc_legendre_pair(degree, order, y.tanh(), sech(y)).0, 0.0)
            }
            Form::Hypergeometric {
                mu,
                power,
                odd,
                a,
                b,
                c,
            } => {
                let y = mu * x;
                let sh = y.sinh();
                let f = hyp2f1(a, b, c, -sh * sh)?;
                let pre = y.cosh().powf(power) * if odd { sh } else { 1.0 };
                Complex64::new(pre * f, 0.0)
            }
        })
    }
}

fn zero_mode_bare(p: ScarfParams, x: f64) -> Complex64 {
    let y = p.mu() * x;
    let phase = 2.0 * p.ratio() * y.exp().atan();
    (I * phase).exp() * sech(y).sqrt()
}

/// `sqrt(sech(mu x)) exp(2 i (lambda/mu) atan(exp(mu x)))`, unnormalized; the
/// zero-energy state of `H1`, annihilated by `-d/dx + U`.
pub fn zero_mode(p: ScarfParams) -> ClosedFormWavefunction {
    ClosedFormWavefunction::new(
        Form::ZeroMode(p),
        Parity::None,
        StateLabel::ZeroMode,
        0.5 * p.mu().abs(),
    )
}

fn is_table_case(p: &ScarfParams) -> bool {
    (p.lambda_bar() - 3.0).abs() < INTEGER_TOLERANCE && (p.ratio() + 2.5).abs() < INTEGER_TOLERANCE
}

/// Unnormalized closed forms for `lambda/mu = -5/2`:
///
/// | n | `V2`                     | `V1`                                            |
/// |---|--------------------------|-------------------------------------------------|
/// | 0 | `sech^2`                 | `sech^2 (tanh + i sech)`                         |
/// | 1 | `sech^2 sinh`            | `sech (1 - 5/3 sech^2 + i 5/3 sech^2 sinh)`      |
///
/// all with argument `mu x`.
pub fn table1_wavefunction(which: Partner, n: usize, p: ScarfParams) -> Result<ClosedFormWavefunction, AnalyticError> {
    if !is_table_case(&p) {
        return Err(AnalyticError::NotTableCase(p.lambda_bar()));
    }
    if n > 1 {
        return Err(AnalyticError::TableLevel(n));
    }
    let which = match which {
        Partner::Both => Partner::Partner2,
        w => w,
    };
    let parity = match (which, n) {
        (Partner::Partner2, 0) => Parity::Even,
        (Partner::Partner2, _) => Parity::Odd,
        _ => Parity::None,
    };
    let mu = p.mu();
    Ok(ClosedFormWavefunction::new(
        Form::Table { which, n, mu },
        parity,
        StateLabel::Level(n),
        mu.abs() * (2.0 - n as f64),
    ))
}

fn integer_lambda_bar(p: &ScarfParams) -> Result<usize, AnalyticError> {
    let lb = p.lambda_bar();
    let r = lb.round();
    if (lb - r).abs() > INTEGER_TOLERANCE || r < 2.0 {
        return Err(AnalyticError::NonIntegerLambdaBar(lb));
    }
    Ok(r as usize)
}

/// `P^{t-1-n}_{t-1}(tanh(mu x))` for integer `t = lambda_bar >= 2`: the
/// level-`n` eigenfunction of `V2`, real with parity `(-1)^n`.
pub fn legendre_eigenfunction(n: usize, p: ScarfParams) -> Result<ClosedFormWavefunction, AnalyticError> {
    let lb = integer_lambda_bar(&p)?;
    if n + 1 >= lb {
        return Err(AnalyticError::LevelNotBound {
            n,
            lambda_bar: p.lambda_bar(),
        });
    }
    let degree = lb - 1;
    let order = degree - n;
    let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    let mu = p.mu();
    Ok(ClosedFormWavefunction::new(
        Form::Legendre { mu, degree, order },
        parity,
        StateLabel::Level(n),
        mu.abs() * order as f64,
    ))
}

/// Outcome of comparing the hypergeometric form with the Legendre oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricComparison {
    /// `cosh^t [sinh] 2F1(...)` with the parameters as printed.
    pub printed: ClosedFormWavefunction,
    /// The Legendre closed form for the requested level, when it exists.
    pub oracle: Option<ClosedFormWavefunction>,
    /// `1 - |<printed, oracle>| / (||printed|| ||oracle||)` on the comparison
    /// window; NaN without an oracle.
    pub discrepancy: f64,
    pub agrees: bool,
    /// `(x, printed(x), oracle(x))` on the comparison window.
    pub samples: Vec<(f64, Complex64, Complex64)>,
}

impl HypergeometricComparison {
    /// The eigenfunction to trust: the oracle whenever it exists.
    pub fn authoritative(&self) -> &ClosedFormWavefunction {
        self.oracle.as_ref().unwrap_or(&self.printed)
    }
}

/// Evaluates the hypergeometric eigenfunction forms of the real partner,
///
/// ```text
/// even: cosh^t(mu x)         2F1((t-1)/2, (t+1)/2; 1/2; -sinh^2(mu x))
/// odd:  cosh^t(mu x) sinh(mu x) 2F1(t/2, t/2 + 1; 3/2; -sinh^2(mu x))
/// ```
///
/// with `t = lambda_bar`, and cross-checks them against
/// [`legendre_eigenfunction`] for level `n`. These forms carry no level index;
/// the comparison reports where they fail to be the level-`n` state instead of
/// correcting them.
pub fn flugge_eigenfunction(
    parity: Parity,
    p: ScarfParams,
    n: usize,
) -> Result<HypergeometricComparison, AnalyticError> {
    let t = p.lambda_bar();
    if t <= 1.0 {
        return Err(AnalyticError::LambdaBarTooSmall(t));
    }
    let mu = p.mu();
    let odd = parity == Parity::Odd;
    let (a, b, c) = if odd {
        (0.5 * t, 0.5 * t + 1.0, 1.5)
    } else {
        (0.5 * (t - 1.0), 0.5 * (t + 1.0), 0.5)
    };
    let printed = ClosedFormWavefunction::new(
        Form::Hypergeometric {
            mu,
            power: t,
            odd,
            a,
            b,
            c,
        },
        if odd { Parity::Odd } else { Parity::Even },
        StateLabel::Level(n),
        f64::NAN,
    );
    let oracle = legendre_eigenfunction(n, p).ok();

    let half = COMPARISON_WINDOW / mu.abs();
    let step = 2.0 * half / (COMPARISON_SAMPLES - 1) as f64;
    let mut samples = Vec::with_capacity(COMPARISON_SAMPLES);
    let (mut cross, mut np, mut no) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
    let mut evaluable = true;
    for i in 0..COMPARISON_SAMPLES {
        let x = -half + i as f64 * step;
        let u = printed.evaluate(x);
        let v = oracle.map(|o| o.evaluate(x)).unwrap_or(Complex64::new(f64::NAN, 0.0));
        evaluable &= u.re.is_finite();
        cross += u.conj() * v;
        np += u.norm_sqr();
        no += v.norm_sqr();
        samples.push((x, u, v));
    }
    let discrepancy = if oracle.is_some() && evaluable {
        1.0 - cross.norm() / (np * no).sqrt()
    } else {
        f64::NAN
    };
    Ok(HypergeometricComparison {
        printed,
        oracle,
        agrees: discrepancy <= FLUGGE_AGREEMENT,
        discrepancy,
        samples,
    })
}

/// `N` with `int |N w|^2 dx = 1`.
pub fn normalize(w: &ClosedFormWavefunction, mu: f64) -> Result<f64, AnalyticError> {
    let rate = if w.decay_rate.is_finite() && w.decay_rate > 0.0 {
        mu.abs().min(2.0 * w.decay_rate)
    } else {
        mu.abs()
    };
    let integral = integrate_line(|x| w.evaluate(x).norm_sqr(), rate, 1e-12).map_err(AnalyticError::NotNormalizable)?;
    Ok(1.0 / integral.sqrt())
}

/// Unit-norm copy of `w` with the global phase fixed: the value at `x = 0` is
/// made real and positive, or the derivative at `x = 0` when the value
/// vanishes there (odd states).
pub fn normalized(w: &ClosedFormWavefunction, mu: f64) -> Result<ClosedFormWavefunction, AnalyticError> {
    let n = normalize(w, mu)?;
    let at0 = w.evaluate(0.0);
    let probe = if at0.norm() > 1e-12 * w.evaluate(0.5 / mu.abs()).norm().max(at0.norm()) {
        at0
    } else {
        w.derivative(0.0).unwrap_or(Complex64::new(1.0, 0.0))
    };
    let phase = if probe.norm() > 0.0 {
        probe.conj() / probe.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut out = w.scaled(phase * n);
    out.normalization = Some(n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn table_params() -> ScarfParams {
        ScarfParams::new(1.0, -2.5).unwrap()
    }

    #[test]
    fn energies_for_lambda_bar_three() {
        let e = bound_energies(1.0, 3.0);
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].energy, 0.25 - 4.0);
        assert_eq!(e[1].energy, 0.25 - 1.0);
        assert!(e.iter().all(|s| s.which == Partner::Both));
        assert!(bound_energies(1.0, 1.0).is_empty());
        let e2: Vec<f64> = bound_energies(2.0, 3.0).iter().map(|s| s.energy).collect();
        assert_eq!(e2, [-15.0, -3.0]);
        // lambda_bar = 1.1 admits a single shallow level
        let shallow = bound_energies(1.0, 1.1);
        assert_eq!(shallow.len(), 1);
        assert!((shallow[0].energy - (0.25 - 0.01)).abs() < 1e-15);
    }

    #[test]
    fn energies_below_edge_and_increasing() {
        for lb in [1.5, 2.0, 2.5, 3.0, 4.0, 6.3] {
            let e = bound_energies(1.7, lb);
            for w in e.windows(2) {
                assert!(w[0].energy < w[1].energy);
            }
            assert!(e.iter().all(|s| s.energy < 0.25 * 1.7 * 1.7));
        }
    }

    #[test]
    fn zero_mode_at_origin() {
        let z = zero_mode(table_params()).evaluate(0.0);
        assert!((z.norm() - 1.0).abs() < 1e-15);
        let expected = -5.0 * PI / 4.0;
        // compare phases modulo 2 pi
        let d = (z / Complex64::from_polar(1.0, expected)).arg();
        assert!(d.abs() < 1e-14);
    }

    #[test]
    fn zero_mode_modulus_ignores_lambda() {
        let a = zero_mode(ScarfParams::new(1.3, -2.5).unwrap());
        let b = zero_mode(ScarfParams::new(1.3, 7.0).unwrap());
        for i in 0..50 {
            let x = -6.0 + 0.25 * i as f64;
            assert!((a.evaluate(x).norm() - b.evaluate(x).norm()).abs() < 1e-15);
            assert!((a.evaluate(x).norm() - sech(1.3 * x).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_mode_phase_derivative_is_b() {
        let p = table_params();
        let z = zero_mode(p);
        let u = scarf2_superpotential(p);
        for i in 0..40 {
            let x = -5.0 + 0.25 * i as f64;
            let h = 1e-5;
            let dphase = ((z.evaluate(x + h) / z.evaluate(x - h)).arg()) / (2.0 * h);
            assert!((dphase - u.b(x)).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn table_values_and_errors() {
        let p = table_params();
        let v = table1_wavefunction(Partner::Partner1, 0, p).unwrap().evaluate(0.0);
        assert_eq!(v, Complex64::new(0.0, 1.0));
        assert_eq!(
            table1_wavefunction(Partner::Partner2, 1, p).unwrap().evaluate(0.0),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            table1_wavefunction(Partner::Partner2, 2, p),
            Err(AnalyticError::TableLevel(2))
        );
        assert!(matches!(
            table1_wavefunction(Partner::Partner1, 0, ScarfParams::new(1.0, -1.5).unwrap()),
            Err(AnalyticError::NotTableCase(_))
        ));
        // lambda = +5/2 has lambda_bar = 3 but the opposite phase convention
        assert!(table1_wavefunction(Partner::Partner1, 0, ScarfParams::new(1.0, 2.5).unwrap()).is_err());
    }

    #[test]
    fn modulus_identity_for_ground_states() {
        let p = ScarfParams::new(0.7, -1.75).unwrap();
        let a = table1_wavefunction(Partner::Partner1, 0, p).unwrap();
        let b = table1_wavefunction(Partner::Partner2, 0, p).unwrap();
        for i in 0..=200 {
            let x = -10.0 + 0.1 * i as f64;
            assert!((a.evaluate(x).norm() - b.evaluate(x).norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn analytic_derivatives_match_differences() {
        let p = ScarfParams::new(1.4, -3.5).unwrap();
        let mut states = alloc::vec![zero_mode(p)];
        for which in [Partner::Partner1, Partner::Partner2] {
            for n in 0..2 {
                states.push(table1_wavefunction(which, n, p).unwrap());
            }
        }
        for n in 0..2 {
            states.push(legendre_eigenfunction(n, ScarfParams::new(1.4, -3.5).unwrap()).unwrap());
        }
        let h = 1e-5;
        for w in &states {
            for i in 0..30 {
                let x = -3.0 + 0.2 * i as f64;
                let fd = (w.evaluate(x + h) - w.evaluate(x - h)) / (2.0 * h);
                assert!((fd - w.derivative(x).unwrap()).norm() < 1e-8, "{:?} at {x}", w.label());
            }
        }
    }

    #[test]
    fn legendre_matches_table_shapes() {
        let p = table_params();
        let l0 = legendre_eigenfunction(0, p).unwrap();
        let l1 = legendre_eigenfunction(1, p).unwrap();
        assert_eq!(l0.parity(), Parity::Even);
        assert_eq!(l1.parity(), Parity::Odd);
        for i in 1..40 {
            let x = -4.0 + 0.2 * i as f64 + 0.01;
            let s = sech(x);
            assert!((l0.evaluate(x).re / (s * s) - 3.0).abs() < 1e-13);
            assert!((l1.evaluate(x).re / (s * x.tanh()) - 3.0).abs() < 1e-12);
        }
        let p2 = ScarfParams::new(1.0, -1.5).unwrap();
        let g = legendre_eigenfunction(0, p2).unwrap();
        assert!((g.evaluate(0.8).re - sech(0.8)).abs() < 1e-15);
        assert!(matches!(
            legendre_eigenfunction(1, p2),
            Err(AnalyticError::LevelNotBound { .. })
        ));
        assert!(matches!(
            legendre_eigenfunction(0, ScarfParams::new(1.0, -2.0).unwrap()),
            Err(AnalyticError::NonIntegerLambdaBar(_))
        ));
    }

    #[test]
    fn hypergeometric_forms_against_oracle() {
        let p = table_params();
        let even = flugge_eigenfunction(Parity::Even, p, 0).unwrap();
        assert_eq!(even.printed.evaluate(0.0), Complex64::new(1.0, 0.0));
        // printed even form is not the ground state; the oracle is
        assert!(!even.agrees, "discrepancy {}", even.discrepancy);
        let auth = even.authoritative();
        assert!((auth.evaluate(0.3).re / sech(0.3).powi(2) - 3.0).abs() < 1e-13);

        let odd = flugge_eigenfunction(Parity::Odd, p, 1).unwrap();
        assert_eq!(odd.printed.evaluate(0.0), Complex64::new(0.0, 0.0));
        assert!(odd.agrees, "discrepancy {}", odd.discrepancy);
        // exact: cosh^3 sinh 2F1(3/2, 5/2; 3/2; -sinh^2) = sech^2 sinh
        for x in [-3.0, -0.4, 2.0, 7.5] {
            let expected = sech(x).powi(2) * x.sinh();
            assert!((odd.printed.evaluate(x).re - expected).abs() < 1e-13 * (1.0 + expected.abs()));
        }

        let no_oracle = flugge_eigenfunction(Parity::Even, ScarfParams::new(1.0, -2.2).unwrap(), 0).unwrap();
        assert!(no_oracle.oracle.is_none() && !no_oracle.agrees && no_oracle.discrepancy.is_nan());
        assert!(matches!(
            flugge_eigenfunction(Parity::Even, ScarfParams::new(1.0, 0.3).unwrap(), 0),
            Err(AnalyticError::LambdaBarTooSmall(_))
        ));
    }

    #[test]
    fn normalization_constants() {
        let p = table_params();
        let ground = table1_wavefunction(Partner::Partner2, 0, p).unwrap();
        assert!((normalize(&ground, 1.0).unwrap() - 0.75f64.sqrt()).abs() < 1e-10);
        let z = zero_mode(p);
        assert!((normalize(&z, 1.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-10);
        let c = Complex64::new(-2.0, 1.5);
        let ratio = normalize(&ground.scaled(c), 1.0).unwrap() / normalize(&ground, 1.0).unwrap();
        assert!((ratio - 1.0 / c.norm()).abs() < 1e-10);
        // scale mu: int sech^4(mu x) = 4/(3 mu)
        let p2 = ScarfParams::new(2.0, -5.0).unwrap();
        let g2 = table1_wavefunction(Partner::Partner2, 0, p2).unwrap();
        assert!((normalize(&g2, 2.0).unwrap() - (1.5f64).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn phase_convention() {
        let p = table_params();
        let w = normalized(&table1_wavefunction(Partner::Partner1, 0, p).unwrap(), 1.0).unwrap();
        let v = w.evaluate(0.0);
        assert!(v.re > 0.0 && v.im.abs() < 1e-15);
        let odd = normalized(&table1_wavefunction(Partner::Partner2, 1, p).unwrap(), 1.0).unwrap();
        let d = odd.derivative(0.0).unwrap();
        assert!(d.re > 0.0 && d.im.abs() < 1e-15);
        assert!(odd.normalization().is_some());
    }
}
