use crate::error::{Error, Result};
use crate::flat_ball::FlatAffineSolution;
use crate::numerics::UniformGrid;

/// The 3-metric `phi(r)^2 dr^2 + r^2 g_{S^2}` sampled on a uniform radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMetric {
    grid: UniformGrid,
    phi: Vec<f64>,
}

impl RadialMetric {
    /// Builds the metric from `(r, phi)` samples.
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        let radii: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let phi: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let grid = UniformGrid::from_points(&radii)?;
        Self::from_parts(grid, phi)
    }

    pub fn from_fn<F: Fn(f64) -> f64>(r_in: f64, r_out: f64, n: usize, phi: F) -> Result<Self> {
        let grid = UniformGrid::new(r_in, r_out, n)?;
        let phi = grid.points().into_iter().map(phi).collect();
        Self::from_parts(grid, phi)
    }

    pub(crate) fn from_parts(grid: UniformGrid, phi: Vec<f64>) -> Result<Self> {
        if grid.start <= 0.0 {
            return Err(Error::Input(format!(
                "inner radius must be positive, got {}",
                grid.start
            )));
        }
        if let Some((i, p)) = phi
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && **p > 0.0))
        {
            return Err(Error::Input(format!(
                "phi must be finite and positive, got {p} at r = {}",
                grid.point(i)
            )));
        }
        Ok(Self { grid, phi })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn r_in(&self) -> f64 {
        self.grid.start
    }

    pub fn r_out(&self) -> f64 {
        self.grid.end()
    }

    pub fn len(&self) -> usize {
        self.grid.len
    }

    pub fn is_empty(&self) -> bool {
        self.grid.len == 0
    }

    pub fn radii(&self) -> Vec<f64> {
        self.grid.points()
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// `m(r)` defined by `phi^2 = (1 - 2 m / r)^{-1}`.
    pub fn mass_function(&self) -> Vec<f64> {
        self.radii()
            .iter()
            .zip(&self.phi)
            .map(|(&r, &p)| 0.5 * r * (1.0 - 1.0 / (p * p)))
            .collect()
    }

    /// The metric `lambda^2 g`, sampled on the rescaled grid.
    pub fn rescaled(&self, lambda: f64) -> Result<Self> {
        let grid = UniformGrid {
            start: lambda * self.grid.start,
            step: lambda * self.grid.step,
            len: self.grid.len,
        };
        Self::from_parts(grid, self.phi.clone())
    }
}

/// How the inner end of a radial domain enters boundary integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerEnd {
    /// The inner sphere sits (numerically) on a horizon `u = 0` and is not
    /// part of the Bartnik boundary.
    Horizon,
    /// The inner sphere is an ordinary boundary component.
    Boundary,
}

/// A spherically symmetric pair `(g, u)`; not necessarily a solution.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialStaticSolution {
    pub metric: RadialMetric,
    pub u: Vec<f64>,
    pub u_prime: Vec<f64>,
    pub mass_fn: Vec<f64>,
    pub inner: InnerEnd,
}

impl RadialStaticSolution {
    pub fn new(metric: RadialMetric, u: Vec<f64>, u_prime: Vec<f64>, inner: InnerEnd) -> Result<Self> {
        let n = metric.len();
        if u.len() != n || u_prime.len() != n {
            return Err(Error::Input(format!(
                "potential samples ({}, {}) not aligned with the {n}-point metric grid",
                u.len(),
                u_prime.len()
            )));
        }
        if u.iter().chain(&u_prime).any(|v| !v.is_finite()) {
            return Err(Error::Input("potential samples must be finite".into()));
        }
        let mass_fn = metric.mass_function();
        if mass_fn.iter().any(|m| !m.is_finite()) {
            return Err(Error::Input("mass function is not finite".into()));
        }
        Ok(Self {
            metric,
            u,
            u_prime,
            mass_fn,
            inner,
        })
    }

    /// Samples closed-form profiles on `n` equispaced radii.
    pub fn from_fns<P, U, D>(
        r_in: f64,
        r_out: f64,
        n: usize,
        phi: P,
        u: U,
        u_prime: D,
        inner: InnerEnd,
    ) -> Result<Self>
    where
        P: Fn(f64) -> f64,
        U: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        let metric = RadialMetric::from_fn(r_in, r_out, n, phi)?;
        let radii = metric.radii();
        let us = radii.iter().map(|&r| u(r)).collect();
        let ds = radii.iter().map(|&r| u_prime(r)).collect();
        Self::new(metric, us, ds, inner)
    }

    pub fn radii(&self) -> Vec<f64> {
        self.metric.radii()
    }

    /// Same data for `lambda^2 g` (and unchanged `u`).
    pub fn rescaled(&self, lambda: f64) -> Result<Self> {
        Self::new(
            self.metric.rescaled(lambda)?,
            self.u.clone(),
            self.u_prime.iter().map(|d| d / lambda).collect(),
            self.inner,
        )
    }
}

/// Either kind of data the geometry routines accept.
#[derive(Debug, Clone, Copy)]
pub enum Solution<'a> {
    Radial(&'a RadialStaticSolution),
    Flat(&'a FlatAffineSolution),
}

impl<'a> From<&'a RadialStaticSolution> for Solution<'a> {
    fn from(s: &'a RadialStaticSolution) -> Self {
        Solution::Radial(s)
    }
}

impl<'a> From<&'a FlatAffineSolution> for Solution<'a> {
    fn from(s: &'a FlatAffineSolution) -> Self {
        Solution::Flat(s)
    }
}
