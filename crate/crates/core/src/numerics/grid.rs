use crate::error::{Error, Result};

/// Equispaced abscissae `start + i * step`, `i < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

/// Smallest grid accepted by the radial geometry routines.
pub const MIN_SAMPLES: usize = 16;

impl UniformGrid {
    pub fn new(start: f64, end: f64, len: usize) -> Result<Self> {
        if len < MIN_SAMPLES {
            return Err(Error::Resolution {
                what: "radial samples",
                got: len,
                min: MIN_SAMPLES,
            });
        }
        if !(start.is_finite() && end.is_finite()) || end <= start {
            return Err(Error::Input(format!(
                "grid endpoints must satisfy start < end, got [{start}, {end}]"
            )));
        }
        Ok(Self {
            start,
            step: (end - start) / (len - 1) as f64,
            len,
        })
    }

    /// Recovers the grid behind a list of abscissae, rejecting anything that
    /// is not strictly increasing and equispaced.
    pub fn from_points(points: &[f64]) -> Result<Self> {
        if points.len() < MIN_SAMPLES {
            return Err(Error::Resolution {
                what: "radial samples",
                got: points.len(),
                min: MIN_SAMPLES,
            });
        }
        for w in points.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Input(format!(
                    "grid is not strictly increasing near r = {}",
                    w[0]
                )));
            }
        }
        let grid = Self::new(points[0], points[points.len() - 1], points.len())?;
        for (i, &r) in points.iter().enumerate() {
            if (r - grid.point(i)).abs() > 1e-9 * grid.step {
                return Err(Error::Input(format!(
                    "grid is not equispaced at index {i} (r = {r})"
                )));
            }
        }
        Ok(grid)
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.len {
            self.end()
        } else {
            self.start + i as f64 * self.step
        }
    }

    #[inline]
    pub fn end(&self) -> f64 {
        self.start + (self.len - 1) as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.point(i)).collect()
    }

    /// Index of the node equal to `x` up to rounding, if any.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let s = (x - self.start) / self.step;
        let i = s.round();
        if i >= 0.0 && (i as usize) < self.len && (s - i).abs() < 1e-9 {
            Some(i as usize)
        } else {
            None
        }
    }

    /// Local six-point Lagrange interpolation of sampled values at `x`.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        debug_assert_eq!(values.len(), self.len);
        if let Some(i) = self.node_index(x) {
            return values[i];
        }
        let s = (x - self.start) / self.step;
        let base = (s.floor() as isize - 2).clamp(0, self.len as isize - 6) as usize;
        lagrange(
            &(base..base + 6).map(|j| j as f64).collect::<Vec<_>>(),
            &values[base..base + 6],
            s,
        )
    }
}

pub(crate) fn lagrange(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut sum = 0.0;
    for (j, (&xj, &yj)) in xs.iter().zip(ys).enumerate() {
        let mut basis = 1.0;
        for (k, &xk) in xs.iter().enumerate() {
            if k != j {
                basis *= (x - xk) / (xj - xk);
            }
        }
        sum += basis * yj;
    }
    sum
}
