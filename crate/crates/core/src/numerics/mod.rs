//! Finite-difference Hamiltonians `H = -d^2/dx^2 + V` on a uniform grid with
//! Dirichlet ends, tridiagonal eigensolvers, Richardson extrapolation and
//! quadrature.

mod eigen;
mod grid;
mod operator;
pub mod quadrature;
mod spectrum;
mod tridiag;

pub(crate) use eigen::residual;
pub use eigen::{eigen_complex, eigen_real, eigenvector, BoundCriterion};
pub use grid::{make_grid, Grid};
pub use operator::{apply, assemble, assemble_real, inner, InnerForm, SampledWavefunction, TridiagonalOperator};
pub use spectrum::{refine, refine_complex, refine_spectrum, RefinedLevel, Spectrum, SpectrumEntry};
pub use tridiag::{complex_symmetric_eigenvalues, solve_shifted, symmetric_eigenvalues};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("grid needs half_width > 0 and an odd n_points >= 3 (got L = {half_width}, n = {n_points})")]
    InvalidGrid { half_width: f64, n_points: usize },
    #[error("potential is not finite at x = {x}")]
    NonFinitePotential { x: f64 },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("operator has complex diagonal entries; use the complex solver")]
    NotReal,
    #[error("eigenvalue iteration did not converge for index {index}")]
    NoConvergence { index: usize },
    #[error("complex orthogonal rotation broke down at index {index}")]
    Breakdown { index: usize },
    #[error("coarse and fine spectra have {coarse} and {fine} bound states; cannot pair them for extrapolation")]
    SpectrumMismatch { coarse: usize, fine: usize },
    #[error("tridiagonal data has inconsistent lengths ({diagonal} diagonal, {off_diagonal} off-diagonal)")]
    ShapeMismatch { diagonal: usize, off_diagonal: usize },
}
