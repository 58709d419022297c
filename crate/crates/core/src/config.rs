//! Default tolerances and resolutions.
//!
//! Every numeric threshold used by the checks lives here so the command-line
//! front end can override it from a TOML file.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Pass threshold for residuals of closed-form solutions.
    pub exact_residual: f64,
    /// Pass threshold for residuals of integrated (shot) solutions.
    pub shot_residual: f64,
    /// Relative tolerance of the adaptive Runge-Kutta integrator.
    pub ode_rtol: f64,
    /// Absolute tolerance of the adaptive Runge-Kutta integrator.
    pub ode_atol: f64,
    /// Target accuracy of the bracketed root finders.
    pub root: f64,
    /// Distance from the maximal boundary potential inside which a target is
    /// treated as the fold itself.
    pub fold_window: f64,
    /// Band above `fold_window` in which branch roots are seeded from the
    /// quadratic model of the fold.
    pub fold_taylor_band: f64,
    /// Relative budget for the horizon series truncation error.
    pub launch_series: f64,
    /// Newton tolerance of the level-set corrector.
    pub levelset_newton: f64,
    /// Maximal gap for declaring a traced level set closed.
    pub levelset_closure: f64,
    /// Minimal value of `a - |b|` for an affine potential to be admissible.
    pub positivity_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exact_residual: 1e-9,
            shot_residual: 1e-6,
            ode_rtol: 1e-10,
            ode_atol: 1e-12,
            root: 1e-12,
            fold_window: 1e-8,
            fold_taylor_band: 1e-6,
            launch_series: 1e-10,
            levelset_newton: 1e-10,
            levelset_closure: 1e-8,
            positivity_margin: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Quadrature {
    /// Gauss-Legendre nodes in cos(theta).
    pub sphere_order: usize,
    /// Uniform azimuthal points.
    pub azimuth_points: usize,
    /// Radial samples for exact and shot profiles.
    pub radial_samples: usize,
    /// Equispaced radii at which shot trajectories are reported.
    pub dense_output: usize,
    /// Spherical-harmonic band limit.
    pub lmax: usize,
    /// Arc-length step of the level-set continuation.
    pub levelset_step: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            sphere_order: 64,
            azimuth_points: 128,
            radial_samples: 512,
            dense_output: 256,
            lmax: 32,
            levelset_step: 1e-2,
        }
    }
}
