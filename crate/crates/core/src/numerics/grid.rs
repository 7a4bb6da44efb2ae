use super::NumericsError;

/// Uniform grid on `[-L, L]` with an odd number of nodes, so `x = 0` is a node.
///
/// Nodes are generated as `(i - mid) h`, which makes `x[n-1-i] == -x[i]`
/// hold exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    half_width: f64,
    n_points: usize,
    spacing: f64,
}

/// `L > 0`, odd `n_points >= 3`, `h = 2L/(n_points - 1)`.
pub fn make_grid(half_width: f64, n_points: usize) -> Result<Grid, NumericsError> {
    if !(half_width.is_finite() && half_width > 0.0) || n_points < 3 || n_points.is_multiple_of(2) {
        return Err(NumericsError::InvalidGrid { half_width, n_points });
    }
    Ok(Grid {
        half_width,
        n_points,
        spacing: 2.0 * half_width / (n_points - 1) as f64,
    })
}

impl Grid {
    /// Grid with spacing `h` reaching at least `half_width` (rounded up to a
    /// whole number of steps).
    pub fn with_spacing(half_width: f64, spacing: f64) -> Result<Grid, NumericsError> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(NumericsError::InvalidGrid {
                half_width,
                n_points: 0,
            });
        }
        let steps = libm::ceil(half_width / spacing - 1e-9).max(1.0) as usize;
        make_grid(steps as f64 * spacing, 2 * steps + 1)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Index of the node at `x = 0`.
    pub fn center(&self) -> usize {
        self.n_points / 2
    }

    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - self.center() as f64) * self.spacing
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.node(i))
    }

    /// Same interval with spacing `h/2`.
    pub fn refined(&self) -> Grid {
        Grid {
            half_width: self.half_width,
            n_points: 2 * self.n_points - 1,
            spacing: 0.5 * self.spacing,
        }
    }

    /// Same spacing on a wider interval, rounded up to whole steps.
    pub fn widened(&self, half_width: f64) -> Grid {
        if half_width <= self.half_width {
            return *self;
        }
        Grid::with_spacing(half_width, self.spacing).expect("valid spacing")
    }
}
