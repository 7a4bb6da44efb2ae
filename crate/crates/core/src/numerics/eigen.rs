use alloc::vec::Vec;

use num_complex::Complex64;

use super::tridiag::{complex_symmetric_eigenvalues, solve_shifted, symmetric_eigenvalues};
use super::{apply, NumericsError, SampledWavefunction, Spectrum, SpectrumEntry, TridiagonalOperator};

const INVERSE_ITERATIONS: usize = 4;

/// Classifies an eigenvalue as bound when `Re E < edge - margin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCriterion {
    pub edge: f64,
    pub margin: f64,
}

impl BoundCriterion {
    pub fn new(edge: f64, margin: f64) -> Self {
        Self { edge, margin }
    }

    /// Margin `10 h^2 s^2 e` for an edge `e = s^2/4`-type potential with
    /// inverse length `s`: `10 (s h)^2` in units of `s^2`.
    pub fn for_scale(edge: f64, inverse_length: f64, spacing: f64) -> Self {
        let s2 = inverse_length * inverse_length;
        Self::new(edge, 10.0 * spacing * spacing * s2 * s2)
    }

    pub fn is_bound(&self, energy: Complex64) -> bool {
        energy.re < self.edge - self.margin
    }
}

/// All eigenvalues of a real operator (implicit QL), ascending; bound entries
/// get an inverse-iteration eigenvector residual.
pub fn eigen_real(op: &TridiagonalOperator, criterion: BoundCriterion) -> Result<Spectrum, NumericsError> {
    if !op.is_real() {
        return Err(NumericsError::NotReal);
    }
    let d: Vec<f64> = op.diagonal().iter().map(|z| z.re).collect();
    let e = alloc::vec![op.off_diagonal(); d.len() - 1];
    let values = symmetric_eigenvalues(&d, &e)?;
    build_spectrum(op, values.into_iter().map(|v| Complex64::new(v, 0.0)), criterion)
}

/// Eigenvalues of a (possibly complex) symmetric operator whose real part lies
/// in `window = (lo, hi)`, sorted by real part then imaginary part; bound
/// entries get residuals.
pub fn eigen_complex(
    op: &TridiagonalOperator,
    window: (f64, f64),
    criterion: BoundCriterion,
) -> Result<Spectrum, NumericsError> {
    let e = alloc::vec![Complex64::new(op.off_diagonal(), 0.0); op.diagonal().len() - 1];
    let values = complex_symmetric_eigenvalues(op.diagonal(), &e)?;
    let (lo, hi) = window;
    build_spectrum(op, values.into_iter().filter(|z| z.re >= lo && z.re <= hi), criterion)
}

fn build_spectrum<I>(op: &TridiagonalOperator, values: I, criterion: BoundCriterion) -> Result<Spectrum, NumericsError>
where
    I: Iterator<Item = Complex64>,
{
    let mut entries = Vec::new();
    for energy in values {
        let bound = criterion.is_bound(energy);
        let residual = if bound {
            let v = eigenvector(op, energy)?;
            Some(residual(op, &v, energy)?)
        } else {
            None
        };
        entries.push(SpectrumEntry {
            energy,
            residual,
            bound,
            defective: false,
        });
    }
    Ok(Spectrum {
        entries,
        continuum_edge: criterion.edge,
        margin: criterion.margin,
    })
}

/// `||H v - E v|| / ||v||` in the Euclidean sample norm.
pub(crate) fn residual(
    op: &TridiagonalOperator,
    v: &SampledWavefunction,
    energy: Complex64,
) -> Result<f64, NumericsError> {
    let hv = apply(op, v)?;
    let r = hv.sub(&v.scaled(energy))?;
    let nv = v.norm();
    Ok(if nv == 0.0 { 0.0 } else { r.norm() / nv })
}

/// Eigenvector for a computed eigenvalue by inverse iteration, scaled to unit
/// trapezoidal L2 norm.
pub fn eigenvector(op: &TridiagonalOperator, energy: Complex64) -> Result<SampledWavefunction, NumericsError> {
    let n = op.diagonal().len();
    let e = alloc::vec![Complex64::new(op.off_diagonal(), 0.0); n - 1];
    let tiny = f64::EPSILON * op.norm_inf();
    // start with no special symmetry
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.37 * ((i * 7919) % 101) as f64 / 101.0, 0.0))
        .collect();
    for _ in 0..INVERSE_ITERATIONS {
        v = solve_shifted(op.diagonal(), &e, energy, &v, tiny)?;
        let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(scale.is_finite() && scale > 0.0) {
            return Err(NumericsError::NoConvergence { index: 0 });
        }
        for z in &mut v {
            *z /= scale;
        }
    }
    let w = SampledWavefunction::from_values(op.grid(), v)?;
    let norm = w.l2_norm();
    Ok(w.scaled(Complex64::new(1.0 / norm, 0.0)))
}
