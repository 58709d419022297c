//! Spherically symmetric static vacuum solutions by integration outward from
//! a regular horizon.
//!
//! With `g = dr²/V + r² dΩ²`, `V = 1 - 2m(r)/r` and `w = u'`, the system is
//!
//! ```text
//! m' = m/r - r V w / u                 (rr-component of u Ric = D²u)
//! w' = -w (2/r + V'/(2V))              (Δu = 0)
//! ```
//!
//! The θθ-component `u (m/r³ + m'/r²) - V w / r` is not used to evolve and
//! is reported as a monitor.

use serde::Serialize;

use crate::config::{Quadrature, Tolerances};
use crate::error::{Error, Result};
use crate::geometry::{InnerEnd, RadialMetric, RadialStaticSolution};
use crate::numerics::ode::Dopri5;
use crate::schwarzschild::{BartnikBoundaryData, SchwarzschildParams};

/// Largest admissible launch offset `r - 2m`.
pub const MAX_OFFSET: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootingState {
    pub r: f64,
    pub mass_fn: f64,
    pub u: f64,
    pub w: f64,
}

impl ShootingState {
    pub fn lapse_squared(&self) -> f64 {
        1.0 - 2.0 * self.mass_fn / self.r
    }

    /// `N(u) = sqrt(V) u'`.
    pub fn normal_derivative(&self) -> f64 {
        self.lapse_squared().sqrt() * self.w
    }

    /// Eigenvalue of the second fundamental form of the sphere through the
    /// state, `sqrt(V) / r`.
    pub fn principal_curvature(&self) -> f64 {
        self.lapse_squared().sqrt() / self.r
    }

    /// `u -> s u`, a symmetry of the system.
    pub fn rescale_potential(&self, s: f64) -> Self {
        Self {
            u: s * self.u,
            w: s * self.w,
            ..*self
        }
    }

    fn to_array(self) -> [f64; 3] {
        [self.mass_fn, self.u, self.w]
    }

    fn from_array(r: f64, y: &[f64; 3]) -> Self {
        Self {
            r,
            mass_fn: y[0],
            u: y[1],
            w: y[2],
        }
    }
}

/// Launch data with its truncation-error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Launch {
    pub state: ShootingState,
    /// Relative size of the first omitted series term.
    pub series_error: f64,
}

/// Relative truncation error of the launch series at `y = ε / (2m)`.
fn series_error(y: f64) -> f64 {
    35.0 / 16.0 * y.powi(3)
}

/// Largest offset whose series error stays within `budget`, capped at
/// [`MAX_OFFSET`].
pub fn launch_offset(m: f64, budget: f64) -> f64 {
    let y = (budget * 16.0 / 35.0).cbrt();
    // Stay strictly inside the budget.
    (0.5 * 2.0 * m * y).min(MAX_OFFSET)
}

pub fn horizon_launch(m: f64, eps: f64) -> Result<Launch> {
    horizon_launch_with(m, eps, Tolerances::default().launch_series)
}

/// State at `r = 2m + ε` on the horizon-regular branch with surface gravity
/// 1, i.e. `u = 4m sqrt(V)`, from the expansion in `y = ε/(2m)`:
///
/// ```text
/// sqrt(V) = y^{1/2} (1 - y/2 + 3y²/8 + O(y³))
/// ```
///
/// The mass function is exactly `m` on this branch.
pub fn horizon_launch_with(m: f64, eps: f64, budget: f64) -> Result<Launch> {
    if !(m > 0.0 && m < 0.5) {
        return Err(Error::Parameter(format!("mass {m} outside (0, 1/2)")));
    }
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("offset {eps} must be positive")));
    }
    let y = eps / (2.0 * m);
    let estimate = series_error(y);
    if eps > MAX_OFFSET || estimate > budget {
        return Err(Error::Launch {
            offset: eps,
            estimate,
            budget,
        });
    }
    let c = 4.0 * m;
    let sq = y.sqrt();
    let u = c * sq * (1.0 - y / 2.0 + 3.0 * y * y / 8.0);
    // d/dr = (1/2m) d/dy of y^{1/2} - y^{3/2}/2 + 3 y^{5/2}/8.
    let w = c / (2.0 * m) * (0.5 / sq - 0.75 * sq + 15.0 / 16.0 * y * sq);
    Ok(Launch {
        state: ShootingState {
            r: 2.0 * m + eps,
            mass_fn: m,
            u,
            w,
        },
        series_error: estimate,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ShootOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Number of equispaced reporting radii, endpoints included.
    pub dense_output: usize,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self::from_config(&Tolerances::default(), &Quadrature::default())
    }
}

impl ShootOptions {
    pub fn from_config(t: &Tolerances, q: &Quadrature) -> Self {
        Self {
            rtol: t.ode_rtol,
            atol: t.ode_atol,
            dense_output: q.dense_output,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShotReport {
    pub trajectory: Vec<ShootingState>,
    /// Closed form matched to the launch state: `m` from the launch and
    /// `c = u / sqrt(V)` there.
    pub matched: SchwarzschildParams,
    /// Sup over the trajectory of `|u - u_Sch|`, `|m(r) - m|` and
    /// `|u' - u'_Sch| / max(1, |u'_Sch|)`.
    pub deviation: f64,
    /// Sup of `|dm/dr|`.
    pub mass_drift: f64,
    /// Sup of the θθ-residual.
    pub theta_residual: f64,
    pub boundary: BartnikBoundaryData,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

fn mass_rate(r: f64, m: f64, u: f64, w: f64) -> f64 {
    m / r - r * (1.0 - 2.0 * m / r) * w / u
}

fn rhs(r: f64, y: &[f64; 3]) -> std::result::Result<[f64; 3], String> {
    let [m, u, w] = *y;
    let v = 1.0 - 2.0 * m / r;
    if !(v > 0.0) {
        return Err(format!("horizon forms: 1 - 2m/r = {v:e}"));
    }
    if !(u > 0.0) {
        return Err(format!("potential reaches {u:e}"));
    }
    let dm = mass_rate(r, m, u, w);
    let dv = 2.0 * m / (r * r) - 2.0 * dm / r;
    let dw = -w * (2.0 / r + dv / (2.0 * v));
    Ok([dm, w, dw])
}

fn theta_residual(s: &ShootingState) -> f64 {
    let dm = mass_rate(s.r, s.mass_fn, s.u, s.w);
    let r = s.r;
    s.u * (s.mass_fn / (r * r * r) + dm / (r * r)) - s.lapse_squared() * s.w / r
}

pub fn integrate(state: ShootingState, r_out: f64) -> Result<ShotReport> {
    integrate_with(state, r_out, &ShootOptions::default())
}

pub fn integrate_with(state: ShootingState, r_out: f64, opts: &ShootOptions) -> Result<ShotReport> {
    if !(r_out > state.r) {
        return Err(Error::Input(format!(
            "outer radius {r_out} must exceed the launch radius {}",
            state.r
        )));
    }
    if !(state.lapse_squared() > 0.0 && state.u > 0.0) {
        return Err(Error::Input(format!("launch state {state:?} is not regular")));
    }
    if opts.dense_output < 2 {
        return Err(Error::Resolution {
            what: "dense output radii",
            got: opts.dense_output,
            min: 2,
        });
    }
    let n = opts.dense_output;
    let step = (r_out - state.r) / (n - 1) as f64;
    let outputs: Vec<f64> = (1..n)
        .map(|i| if i == n - 1 { r_out } else { state.r + step * i as f64 })
        .collect();
    let solver = Dopri5::new(opts.rtol, opts.atol);
    let (ys, stats) = solver.solve(rhs, state.r, state.to_array(), &outputs)?;

    let mut trajectory = Vec::with_capacity(n);
    trajectory.push(state);
    trajectory.extend(outputs.iter().zip(&ys).map(|(&r, y)| ShootingState::from_array(r, y)));

    let c = state.u / state.lapse_squared().sqrt();
    let matched = SchwarzschildParams::with(state.mass_fn, c, r_out)?;
    let mut deviation = 0.0f64;
    let mut mass_drift = 0.0f64;
    let mut theta = 0.0f64;
    for s in &trajectory {
        let wu = matched.u_prime(s.r);
        deviation = deviation
            .max((s.u - matched.u(s.r)).abs())
            .max((s.mass_fn - matched.m).abs())
            .max((s.w - wu).abs() / wu.abs().max(1.0));
        mass_drift = mass_drift.max(mass_rate(s.r, s.mass_fn, s.u, s.w).abs());
        theta = theta.max(theta_residual(s).abs());
    }
    let end = trajectory[n - 1];
    Ok(ShotReport {
        boundary: BartnikBoundaryData::round(end.r, end.lapse_squared(), end.u),
        trajectory,
        matched,
        deviation,
        mass_drift,
        theta_residual: theta,
        steps_accepted: stats.accepted,
        steps_rejected: stats.rejected,
    })
}

pub fn boundary_map_of_shot(report: &ShotReport) -> BartnikBoundaryData {
    let end = report.trajectory.last().expect("trajectory is never empty");
    BartnikBoundaryData::round(end.r, end.lapse_squared(), end.u)
}

impl ShotReport {
    /// The sampled trajectory as a solution on the reporting grid.
    pub fn to_solution(&self) -> Result<RadialStaticSolution> {
        let samples: Vec<(f64, f64)> = self
            .trajectory
            .iter()
            .map(|s| (s.r, s.lapse_squared().sqrt().recip()))
            .collect();
        let metric = RadialMetric::new(&samples)?;
        let u = self.trajectory.iter().map(|s| s.u).collect();
        let w = self.trajectory.iter().map(|s| s.w).collect();
        RadialStaticSolution::new(metric, u, w, InnerEnd::Horizon)
    }
}

/// Launch at the largest admissible offset and integrate to `r_out`.
pub fn shoot(m: f64, r_out: f64) -> Result<ShotReport> {
    let t = Tolerances::default();
    let launch = horizon_launch_with(m, launch_offset(m, t.launch_series), t.launch_series)?;
    integrate(launch.state, r_out)
}
