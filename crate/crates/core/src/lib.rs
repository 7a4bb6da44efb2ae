//! Real/complex isospectral partner potentials built from a complex
//! superpotential `U = a + i b` under the reality constraint `a = b' / (2 b)`.
//!
//! The crate is `no_std` (it needs `alloc`) and has no IO. It contains:
//!
//! * [`susy`]: superpotentials, the partner pair `V1 = U^2 + U'` (complex) and
//!   `V2 = U^2 - U'` (real), and the closed-form sech/tanh family.
//! * [`special`]: the Gauss hypergeometric function, associated Legendre
//!   functions and adaptive quadrature.
//! * [`analytic`]: closed-form bound energies and eigenfunctions used as
//!   oracles.
//! * [`numerics`]: finite-difference Hamiltonians on a uniform grid and the
//!   real-symmetric / complex-symmetric tridiagonal eigensolvers.
//! * [`verify`]: executable checks (PT symmetry, real spectrum, isospectrality,
//!   intertwining, zero mode) gathered into a [`verify::VerificationReport`].

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod numerics;
pub mod special;
pub mod susy;
pub mod verify;

pub use num_complex::Complex64;

/// Imaginary unit.
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub(crate) fn sech(x: f64) -> f64 {
    #[allow(unused_imports)]
    use num_traits::Float;
    // cosh overflows to +inf for |x| > ~710, which gives the right limit.
    1.0 / x.cosh()
}
