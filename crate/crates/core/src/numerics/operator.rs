use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{Grid, NumericsError};

/// `-d^2/dx^2 + V` with the 3-point stencil: diagonal `2/h^2 + V(x_i)`,
/// off-diagonal `-1/h^2`, Dirichlet at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    diagonal: Vec<Complex64>,
    off_diagonal: f64,
    grid: Grid,
    is_real: bool,
}

impl TridiagonalOperator {
    pub fn diagonal(&self) -> &[Complex64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> f64 {
        self.off_diagonal
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// Adds `shift` to every diagonal entry.
    pub fn shifted(&self, shift: Complex64) -> Self {
        let diagonal: Vec<_> = self.diagonal.iter().map(|d| d + shift).collect();
        let is_real = diagonal.iter().all(|d| d.im == 0.0);
        Self {
            diagonal,
            off_diagonal: self.off_diagonal,
            grid: self.grid,
            is_real,
        }
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.diagonal
            .iter()
            .map(|d| d.norm() + 2.0 * self.off_diagonal.abs())
            .fold(0.0, f64::max)
    }
}

/// Assembles `-d^2/dx^2 + V` on `grid`.
pub fn assemble<F>(grid: &Grid, potential: F) -> Result<TridiagonalOperator, NumericsError>
where
    F: Fn(f64) -> Complex64,
{
    let h2 = grid.spacing() * grid.spacing();
    let mut diagonal = Vec::with_capacity(grid.len());
    for x in grid.nodes() {
        let v = potential(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(NumericsError::NonFinitePotential { x });
        }
        diagonal.push(Complex64::new(2.0 / h2, 0.0) + v);
    }
    let is_real = diagonal.iter().all(|d| d.im == 0.0);
    Ok(TridiagonalOperator {
        diagonal,
        off_diagonal: -1.0 / h2,
        grid: *grid,
        is_real,
    })
}

/// [`assemble`] for a real potential.
pub fn assemble_real<F>(grid: &Grid, potential: F) -> Result<TridiagonalOperator, NumericsError>
where
    F: Fn(f64) -> f64,
{
    assemble(grid, |x| Complex64::new(potential(x), 0.0))
}

/// Complex samples of a wavefunction on the grid nodes; values outside the
/// grid are taken as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWavefunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledWavefunction {
    pub fn sample<F>(grid: &Grid, f: F) -> Self
    where
        F: Fn(f64) -> Complex64,
    {
        Self {
            grid: *grid,
            values: grid.nodes().map(f).collect(),
        }
    }

    pub fn from_values(grid: &Grid, values: Vec<Complex64>) -> Result<Self, NumericsError> {
        if values.len() != grid.len() {
            return Err(NumericsError::GridMismatch);
        }
        Ok(Self { grid: *grid, values })
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self {
            grid: *grid,
            values: alloc::vec![Complex64::zero(); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Euclidean norm of the sample vector.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Trapezoidal `sqrt(int |psi|^2 dx)`.
    pub fn l2_norm(&self) -> f64 {
        inner(self, self, InnerForm::Hermitian)
            .map(|z| z.re.sqrt())
            .unwrap_or(0.0)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Pointwise `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self, NumericsError> {
        if self.grid != other.grid {
            return Err(NumericsError::GridMismatch);
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    /// 4th-order central difference `d/dx`, extending by zero past the ends.
    pub fn derivative4(&self) -> Self {
        let n = self.values.len();
        let at = |i: isize| -> Complex64 {
            if i < 0 || i as usize >= n {
                Complex64::zero()
            } else {
                self.values[i as usize]
            }
        };
        let inv = 1.0 / (12.0 * self.grid.spacing());
        let values = (0..n as isize)
            .map(|i| (-at(i + 2) + at(i + 1) * 8.0 - at(i - 1) * 8.0 + at(i - 2)) * inv)
            .collect();
        Self {
            grid: self.grid,
            values,
        }
    }

    /// Pointwise multiplication by `f(x)`.
    pub fn multiplied<F>(&self, f: F) -> Self
    where
        F: Fn(f64) -> Complex64,
    {
        Self {
            grid: self.grid,
            values: self.grid.nodes().zip(&self.values).map(|(x, v)| f(x) * v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NumericsError> {
        if self.grid != other.grid {
            return Err(NumericsError::GridMismatch);
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }
}

/// Matrix-vector product `H psi`.
pub fn apply(op: &TridiagonalOperator, psi: &SampledWavefunction) -> Result<SampledWavefunction, NumericsError> {
    if op.grid != psi.grid {
        return Err(NumericsError::GridMismatch);
    }
    let n = psi.values.len();
    let v = &psi.values;
    let e = op.off_diagonal;
    let values = (0..n)
        .map(|i| {
            let mut acc = op.diagonal[i] * v[i];
            if i > 0 {
                acc += v[i - 1] * e;
            }
            if i + 1 < n {
                acc += v[i + 1] * e;
            }
            acc
        })
        .collect();
    Ok(SampledWavefunction { grid: psi.grid, values })
}

/// Pairing used by [`inner`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerForm {
    /// `int conj(u) v dx`
    Hermitian,
    /// `int u v dx`, under which eigenvectors of a complex-symmetric operator
    /// are orthogonal.
    Bilinear,
}

/// Trapezoidal inner product on the common grid.
pub fn inner(u: &SampledWavefunction, v: &SampledWavefunction, form: InnerForm) -> Result<Complex64, NumericsError> {
    if u.grid != v.grid {
        return Err(NumericsError::GridMismatch);
    }
    let n = u.values.len();
    let mut acc = Complex64::zero();
    for (i, (a, b)) in u.values.iter().zip(&v.values).enumerate() {
        let a = match form {
            InnerForm::Hermitian => a.conj(),
            InnerForm::Bilinear => *a,
        };
        let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        acc += a * b * w;
    }
    Ok(acc * u.grid.spacing())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::make_grid;

    #[test]
    fn assembly_layout_and_reality_flag() {
        let g = make_grid(1.0, 5).unwrap();
        let op = assemble_real(&g, |x| x * x).unwrap();
        assert!(op.is_real());
        assert_eq!(op.off_diagonal(), -4.0);
        assert_eq!(op.diagonal()[0], Complex64::new(8.0 + 1.0, 0.0));
        assert_eq!(op.diagonal()[2], Complex64::new(8.0, 0.0));
        let cop = assemble(&g, |x| Complex64::new(0.0, x)).unwrap();
        assert!(!cop.is_real());
        assert!(assemble_real(&g, |x| 1.0 / x).is_err());
    }

    #[test]
    fn apply_zero_and_mismatch() {
        let g = make_grid(2.0, 11).unwrap();
        let op = assemble_real(&g, |x| x).unwrap();
        let z = SampledWavefunction::zeros(&g);
        assert!(apply(&op, &z).unwrap().values().iter().all(|v| v.is_zero()));
        let other = SampledWavefunction::zeros(&make_grid(2.0, 13).unwrap());
        assert_eq!(apply(&op, &other), Err(NumericsError::GridMismatch));
        assert_eq!(
            inner(&z, &other, InnerForm::Hermitian),
            Err(NumericsError::GridMismatch)
        );
    }

    #[test]
    fn parity_orthogonality() {
        let g = make_grid(5.0, 501).unwrap();
        let even = SampledWavefunction::sample(&g, |x| Complex64::new((-x * x).exp(), 0.3 * (-x * x).exp()));
        let odd = SampledWavefunction::sample(&g, |x| Complex64::new(x * (-x * x).exp(), 0.0));
        for form in [InnerForm::Hermitian, InnerForm::Bilinear] {
            assert!(inner(&even, &odd, form).unwrap().norm() < 1e-14);
        }
        let n2 = inner(&even, &even, InnerForm::Hermitian).unwrap();
        assert!(n2.re > 0.0 && n2.im == 0.0);
    }

    #[test]
    fn derivative4_is_fourth_order() {
        let err = |n: usize| {
            let g = make_grid(6.0, n).unwrap();
            let f = SampledWavefunction::sample(&g, |x| Complex64::new((-x * x).exp(), 0.0));
            let d = f.derivative4();
            g.nodes()
                .zip(d.values())
                .map(|(x, v)| (v.re + 2.0 * x * (-x * x).exp()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(241) / err(481);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }
}
