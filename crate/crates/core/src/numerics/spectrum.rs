use alloc::vec::Vec;

use num_complex::Complex64;

use super::NumericsError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub energy: Complex64,
    /// `||H v - E v|| / ||v||` for the inverse-iteration eigenvector.
    pub residual: Option<f64>,
    pub bound: bool,
    /// Member of a coalescing (Jordan-type) pair; set only by [`refine_spectrum`].
    pub defective: bool,
}

/// Eigenvalues sorted by real part (ties by imaginary part).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    pub continuum_edge: f64,
    pub margin: f64,
}

impl Spectrum {
    pub fn bound(&self) -> impl Iterator<Item = &SpectrumEntry> + '_ {
        self.entries.iter().filter(|e| e.bound)
    }

    pub fn bound_energies(&self) -> Vec<Complex64> {
        self.bound().map(|e| e.energy).collect()
    }
}

/// Richardson extrapolation `(4 E(h/2) - E(h)) / 3` for an O(h^2) scheme.
pub fn refine(e_h: f64, e_h2: f64) -> f64 {
    (4.0 * e_h2 - e_h) / 3.0
}

pub fn refine_complex(e_h: Complex64, e_h2: Complex64) -> Complex64 {
    (e_h2 * 4.0 - e_h) / 3.0
}

/// One extrapolated bound level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedLevel {
    pub energy: Complex64,
    pub coarse: Complex64,
    pub fine: Complex64,
    pub defective: bool,
}

/// Pairs the bound states of spectra computed at `h` and `h/2` on the same
/// interval and extrapolates each.
///
/// Two levels closer than `cluster_radius` at both spacings form a candidate
/// pair. If the squared half-gap `((E1-E2)/2)^2` shrinks under halving by a
/// factor in `[3, 20]` (an `O(h)` split gives 4, an `O(h^2)` split 16), both
/// members converge to one eigenvalue of the unperturbed operator: they are
/// reported at the extrapolated mean and flagged `defective`. Every other
/// level is extrapolated on its own.
pub fn refine_spectrum(
    coarse: &Spectrum,
    fine: &Spectrum,
    cluster_radius: f64,
) -> Result<Vec<RefinedLevel>, NumericsError> {
    let c: Vec<Complex64> = coarse.bound_energies();
    let f: Vec<Complex64> = fine.bound_energies();
    if c.len() != f.len() {
        return Err(NumericsError::SpectrumMismatch {
            coarse: c.len(),
            fine: f.len(),
        });
    }
    let mut out = Vec::with_capacity(c.len());
    let mut i = 0;
    while i < c.len() {
        let clustered =
            i + 1 < c.len() && (f[i] - f[i + 1]).norm() < cluster_radius && (c[i] - c[i + 1]).norm() < cluster_radius;
        if !clustered {
            out.push(RefinedLevel {
                energy: refine_complex(c[i], f[i]),
                coarse: c[i],
                fine: f[i],
                defective: false,
            });
            i += 1;
            continue;
        }
        let (hc, hf) = ((c[i] - c[i + 1]) * 0.5, (f[i] - f[i + 1]) * 0.5);
        let ratio = (hc * hc).norm() / (hf * hf).norm();
        let defective = (3.0..=20.0).contains(&ratio);
        let (lo, hi) = if defective {
            let mean = refine_complex((c[i] + c[i + 1]) * 0.5, (f[i] + f[i + 1]) * 0.5);
            (mean, mean)
        } else {
            (refine_complex(c[i], f[i]), refine_complex(c[i + 1], f[i + 1]))
        };
        out.push(RefinedLevel {
            energy: lo,
            coarse: c[i],
            fine: f[i],
            defective,
        });
        out.push(RefinedLevel {
            energy: hi,
            coarse: c[i + 1],
            fine: f[i + 1],
            defective,
        });
        i += 2;
    }
    Ok(out)
}
