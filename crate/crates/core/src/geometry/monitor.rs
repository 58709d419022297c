use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::quadrature::integral_to_end;

use super::curvature::record;
use super::metric::{InnerEnd, RadialStaticSolution};

/// Scale-invariant interior quantities `t^2 |Rm|` and `t |d log u|`, with
/// `t` the distance to the outer boundary. No threshold is applied.
#[derive(Debug, Clone, Serialize)]
pub struct InteriorMonitor {
    pub r: Vec<f64>,
    pub distance: Vec<f64>,
    pub curvature_profile: Vec<f64>,
    pub log_gradient_profile: Vec<f64>,
    pub curvature_sup: f64,
    pub log_gradient_sup: f64,
}

pub fn interior_estimate_monitor(sol: &RadialStaticSolution) -> Result<InteriorMonitor> {
    let n = sol.u.len();
    let r = sol.radii();
    if let Some(i) = (0..n - 1).find(|&i| !(sol.u[i] > 0.0)) {
        return Err(Error::Domain(format!("u = {} at r = {}", sol.u[i], r[i])));
    }
    let phi = sol.metric.phi();
    let distance = distance_to_end(sol);
    let f = sol.fields();
    let curv = record(r.clone(), &f.k_radial, &f.k_tangential, &f.scalar);
    let curvature_profile: Vec<f64> = (0..n)
        .map(|i| distance[i] * distance[i] * curv.rm_norm[i])
        .collect();
    let log_gradient_profile: Vec<f64> = (0..n)
        .map(|i| {
            if distance[i] == 0.0 {
                0.0
            } else {
                distance[i] * (sol.u_prime[i] / (phi[i] * sol.u[i])).abs()
            }
        })
        .collect();
    let sup = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(*x));
    Ok(InteriorMonitor {
        curvature_sup: sup(&curvature_profile),
        log_gradient_sup: sup(&log_gradient_profile),
        r,
        distance,
        curvature_profile,
        log_gradient_profile,
    })
}

/// Proper distance `∫_r^R phi` to the outer sphere. Next to a horizon the
/// frozen-mass part `sqrt(r / (r - 2m0))` is integrated in closed form and
/// only the smooth remainder by quadrature.
fn distance_to_end(sol: &RadialStaticSolution) -> Vec<f64> {
    let grid = sol.metric.grid();
    let phi = sol.metric.phi();
    let r = sol.radii();
    let m0 = sol.mass_fn[0];
    if sol.inner != InnerEnd::Horizon || !(m0 > 0.0 && 2.0 * m0 < r[0]) {
        return integral_to_end(grid, phi);
    }
    let singular = |x: f64| (x / (x - 2.0 * m0)).sqrt();
    let primitive = |x: f64| {
        let d = x - 2.0 * m0;
        (x * d).sqrt() + 2.0 * m0 * (x.sqrt() + d.sqrt()).ln()
    };
    let remainder: Vec<f64> = (0..r.len()).map(|i| phi[i] - singular(r[i])).collect();
    let smooth = integral_to_end(grid, &remainder);
    let end = primitive(grid.end());
    (0..r.len()).map(|i| smooth[i] + end - primitive(r[i])).collect()
}
