use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat_ball::FlatAffineSolution;
use crate::numerics::quadrature::{gauss_legendre, radial_integral};
use crate::sphere::SphereQuadrature;

use super::metric::{InnerEnd, RadialStaticSolution, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionKind {
    /// `-∫_M u R dV`.
    #[serde(rename = "L")]
    L,
    /// Einstein-Hilbert action of `u^2 dτ^2 + g` (τ-period 2π) with the
    /// boundary term `-2∫ H^N + 2∫ H` over `S^1 × ∂M`.
    #[serde(rename = "L_tilde")]
    LTilde,
    /// `L - ∫_{∂M} H dv_γ`.
    #[serde(rename = "F")]
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionValue {
    pub kind: ActionKind,
    pub value: f64,
}

/// Period of the fiber coordinate τ.
const FIBER_PERIOD: f64 = 2.0 * PI;

pub fn compute_action<'a>(sol: impl Into<Solution<'a>>, kind: ActionKind) -> Result<ActionValue> {
    let value = match sol.into() {
        Solution::Radial(s) => radial_action(s, kind)?,
        Solution::Flat(s) => flat_action(s, kind, &SphereQuadrature::default())?,
    };
    Ok(ActionValue { kind, value })
}

/// Boundary spheres of a radial domain as `(index, outward sign)`.
fn boundary_spheres(sol: &RadialStaticSolution) -> Vec<(usize, f64)> {
    let mut out = vec![(sol.u.len() - 1, 1.0)];
    if sol.inner == InnerEnd::Boundary {
        out.push((0, -1.0));
    }
    out
}

fn radial_action(sol: &RadialStaticSolution, kind: ActionKind) -> Result<f64> {
    let grid = sol.metric.grid();
    let r = sol.radii();
    let phi = sol.metric.phi();
    let f = sol.fields();
    let area = |i: usize| 4.0 * PI * r[i] * r[i];
    let volume = |integrand: &dyn Fn(usize) -> f64| {
        let v: Vec<f64> = (0..r.len())
            .map(|i| integrand(i) * phi[i] * r[i] * r[i])
            .collect();
        4.0 * PI * radial_integral(grid, &v)
    };
    let bulk_l = -volume(&|i| sol.u[i] * f.scalar[i]);
    match kind {
        ActionKind::L => Ok(bulk_l),
        ActionKind::F => {
            let boundary: f64 = boundary_spheres(sol)
                .into_iter()
                .map(|(i, sign)| sign * 2.0 / (r[i] * phi[i]) * area(i))
                .sum();
            Ok(bulk_l - boundary)
        }
        ActionKind::LTilde => {
            let last = sol.u.len() - 1;
            if !(sol.u[last] > 0.0) {
                return Err(Error::Domain(format!(
                    "u = {} at the outer boundary; the fiber degenerates",
                    sol.u[last]
                )));
            }
            // R^N u = u R - 2 Δu for the warped product u^2 dτ^2 + g.
            let bulk = -FIBER_PERIOD * volume(&|i| sol.u[i] * f.scalar[i] - 2.0 * f.laplacian[i]);
            // H^N - H = N(log u), and dv_{γ_N} = u dτ dv_γ.
            let boundary: f64 = boundary_spheres(sol)
                .into_iter()
                .map(|(i, sign)| sign * f.normal_u[i] * area(i))
                .sum();
            Ok(bulk - 2.0 * FIBER_PERIOD * boundary)
        }
    }
}

fn flat_action(sol: &FlatAffineSolution, kind: ActionKind, quad: &SphereQuadrature) -> Result<f64> {
    // Euclidean ball: R = 0, Δu = 0 for affine u; the bulk integrals are
    // still evaluated so that the quadrature path is the same as for data
    // with curvature.
    let (xs, ws) = gauss_legendre(16);
    let ball = |integrand: &dyn Fn([f64; 3]) -> f64| -> f64 {
        xs.iter()
            .zip(&ws)
            .map(|(&x, &w)| {
                let rho = 0.5 * (x + 1.0);
                0.5 * w
                    * rho
                    * rho
                    * quad.integrate(|p| integrand([rho * p.unit[0], rho * p.unit[1], rho * p.unit[2]]))
            })
            .sum()
    };
    let hess = sol.hessian();
    let lap: f64 = (0..3).map(|i| hess[i][i]).sum();
    let scalar = 0.0;
    let bulk_l = -ball(&|x| sol.value(x) * scalar);
    match kind {
        ActionKind::L => Ok(bulk_l),
        ActionKind::F => Ok(bulk_l - quad.integrate(|_| 2.0)),
        ActionKind::LTilde => {
            let boundary_min = quad
                .points()
                .map(|p| sol.value(p.unit))
                .fold(f64::INFINITY, f64::min);
            if !(boundary_min > 0.0) {
                return Err(Error::Domain("u vanishes on the boundary sphere".into()));
            }
            let bulk = -FIBER_PERIOD * ball(&|x| sol.value(x) * scalar - 2.0 * lap);
            let g = sol.gradient();
            let flux = quad.integrate(|p| g[0] * p.unit[0] + g[1] * p.unit[1] + g[2] * p.unit[2]);
            Ok(bulk - 2.0 * FIBER_PERIOD * flux)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_ball_mean_curvature_action() {
        let sol = FlatAffineSolution::new(1.0, 0.0, [0.0, 0.0, 1.0]).unwrap();
        assert_eq!(compute_action(&sol, ActionKind::L).unwrap().value, 0.0);
        let f = compute_action(&sol, ActionKind::F).unwrap().value;
        assert!((f + 8.0 * PI).abs() < 1e-12);
        let tilted = FlatAffineSolution::new(1.0, 0.4, [0.6, 0.0, 0.8]).unwrap();
        assert!(compute_action(&tilted, ActionKind::LTilde).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn radial_flat_shell_f_counts_both_boundaries() {
        let sol = RadialStaticSolution::from_fns(
            0.5,
            1.0,
            64,
            |_| 1.0,
            |_| 1.0,
            |_| 0.0,
            InnerEnd::Boundary,
        )
        .unwrap();
        let f = compute_action(&sol, ActionKind::F).unwrap().value;
        // -(2 * 4π) + (2/0.5) * 4π (0.5)^2
        assert!((f - (-8.0 * PI + 4.0 * PI)).abs() < 1e-12, "{f}");
    }

    #[test]
    fn l_tilde_requires_positive_boundary_potential() {
        let sol = RadialStaticSolution::from_fns(
            0.5,
            1.0,
            64,
            |_| 1.0,
            |r| 1.0 - r,
            |_| -1.0,
            InnerEnd::Boundary,
        )
        .unwrap();
        assert!(matches!(
            compute_action(&sol, ActionKind::LTilde),
            Err(Error::Domain(_))
        ));
    }
}
