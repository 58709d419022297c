use serde::Serialize;

use crate::error::{Error, Result};
use crate::flat_ball::FlatAffineSolution;
use crate::sphere::SphereQuadrature;

use super::metric::{RadialStaticSolution, Solution};

/// Sup-norms of the interior static equations `u Ric = D^2 u` and `Δu = 0`.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct StaticResidual {
    /// `sup |u Ric - D^2 u|` (tensor norm in an orthonormal frame).
    pub tensor: f64,
    /// `sup |Δu|`.
    pub laplacian: f64,
}

impl StaticResidual {
    pub fn max(&self) -> f64 {
        self.tensor.max(self.laplacian)
    }
}

/// Gauss and Codazzi residuals on one sphere plus the interior residual.
#[derive(Debug, Clone, Serialize)]
pub struct ConstraintReport {
    pub radius: f64,
    /// `|A|^2 - H^2 + R_γ - 2 u^{-1} (Δ_γ u + H N(u))` per boundary point.
    /// Radial data is constant on the sphere and reports a single value.
    pub gauss_residual: Vec<f64>,
    /// `|δ(A - Hγ) + u^{-1}(dN(u) - A(du))|` per boundary point.
    pub codazzi_residual: Vec<f64>,
    pub static_residual: StaticResidual,
}

impl ConstraintReport {
    pub fn gauss_max(&self) -> f64 {
        self.gauss_residual.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn codazzi_max(&self) -> f64 {
        self.codazzi_residual.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest of all three residual classes.
    pub fn max(&self) -> f64 {
        self.gauss_max()
            .max(self.codazzi_max())
            .max(self.static_residual.max())
    }
}

pub fn constraint_residuals<'a>(sol: impl Into<Solution<'a>>, at_radius: f64) -> Result<ConstraintReport> {
    constraint_residuals_with(sol, at_radius, 0.0)
}

/// As [`constraint_residuals`], with the mean curvature entering the Gauss
/// equation shifted by `mean_curvature_offset` (the second fundamental form
/// itself is left unchanged). Used to probe the detector's sensitivity.
pub fn constraint_residuals_with<'a>(
    sol: impl Into<Solution<'a>>,
    at_radius: f64,
    mean_curvature_offset: f64,
) -> Result<ConstraintReport> {
    match sol.into() {
        Solution::Radial(s) => radial_constraints(s, at_radius, mean_curvature_offset),
        Solution::Flat(s) => flat_constraints(s, at_radius, mean_curvature_offset),
    }
}

fn radial_constraints(sol: &RadialStaticSolution, r: f64, dh: f64) -> Result<ConstraintReport> {
    let grid = sol.metric.grid();
    if !(r > grid.start && r <= grid.end() * (1.0 + 1e-14)) {
        return Err(Error::Input(format!(
            "evaluation radius {r} outside ({}, {}]",
            grid.start,
            grid.end()
        )));
    }
    let r = r.min(grid.end());
    // Off the nodes, interpolate the mass function, r u² and the flux
    // r² N(u): they stay smooth where phi and u' blow up at a horizon.
    let n = sol.u.len();
    let phi_nodes = sol.metric.phi();
    let ru2: Vec<f64> = (0..n).map(|i| grid.point(i) * sol.u[i] * sol.u[i]).collect();
    let flux: Vec<f64> = (0..n)
        .map(|i| grid.point(i).powi(2) * sol.u_prime[i] / phi_nodes[i])
        .collect();
    let u_sign = grid.interpolate(&sol.u, r);
    let u = (grid.interpolate(&ru2, r) / r).max(0.0).sqrt();
    if !(u_sign > 0.0 && u > 0.0) {
        return Err(Error::Domain(format!("u = {u_sign} on the sphere r = {r}")));
    }
    let lapse2 = 1.0 - 2.0 * grid.interpolate(&sol.mass_fn, r) / r;
    if !(lapse2 > 0.0) {
        return Err(Error::Domain(format!("sphere r = {r} is not outside the horizon")));
    }
    // Umbilic sphere: A = (1 / (r phi)) γ.
    let k = lapse2.sqrt() / r;
    let a_norm2 = 2.0 * k * k;
    let h = 2.0 * k + dh;
    let r_gamma = 2.0 / (r * r);
    let normal_u = grid.interpolate(&flux, r) / (r * r);
    // u is constant on the sphere: Δ_γ u = 0, du|_γ = 0, dN(u) = 0.
    let gauss = a_norm2 - h * h + r_gamma - 2.0 * (h * normal_u) / u;
    Ok(ConstraintReport {
        radius: r,
        gauss_residual: vec![gauss],
        codazzi_residual: vec![0.0],
        static_residual: static_residual(sol)?,
    })
}

fn flat_constraints(sol: &FlatAffineSolution, rho: f64, dh: f64) -> Result<ConstraintReport> {
    if !(rho > 0.0 && rho <= 1.0 + 1e-14) {
        return Err(Error::Input(format!(
            "evaluation radius {rho} outside the unit ball"
        )));
    }
    let quad = SphereQuadrature::default();
    let hess = sol.hessian();
    let grad = sol.gradient();
    let k = 1.0 / rho;
    let h = 2.0 * k + dh;
    let a_norm2 = 2.0 * k * k;
    let r_gamma = 2.0 / (rho * rho);
    let lap3: f64 = (0..3).map(|i| hess[i][i]).sum();
    let mut gauss = Vec::new();
    let mut codazzi = Vec::new();
    for p in quad.points() {
        let n = p.unit;
        let x = [rho * n[0], rho * n[1], rho * n[2]];
        let u = sol.value(x);
        if !(u > 0.0) {
            return Err(Error::Domain(format!("u = {u} on the sphere of radius {rho}")));
        }
        let normal_u = dot(grad, n);
        let hn = mat_vec(&hess, n);
        let hess_nn = dot(hn, n);
        // Δ_M u = Δ_γ u + D²u(N, N) + H N(u) for the unperturbed sphere.
        let lap_gamma = lap3 - hess_nn - 2.0 * k * normal_u;
        gauss.push(a_norm2 - h * h + r_gamma - 2.0 * (lap_gamma + h * normal_u) / u);
        // Round sphere in flat space: δ(A - Hγ) = 0 and
        // dN(u) - A(du) = tangential part of D²u(N, ·).
        let tangential: [f64; 3] = std::array::from_fn(|i| hn[i] - hess_nn * n[i]);
        codazzi.push(dot(tangential, tangential).sqrt() / u);
    }
    Ok(ConstraintReport {
        radius: rho,
        gauss_residual: gauss,
        codazzi_residual: codazzi,
        static_residual: flat_static(sol),
    })
}

/// Interior residual of the static equations.
pub fn static_residual<'a>(sol: impl Into<Solution<'a>>) -> Result<StaticResidual> {
    match sol.into() {
        Solution::Radial(s) => {
            let f = s.fields();
            let mut out = StaticResidual::default();
            for i in 0..s.u.len() {
                let u = s.u[i];
                let t_nn = 2.0 * u * f.k_radial[i] - f.hess_nn[i];
                let t_tt = u * (f.k_radial[i] + f.k_tangential[i]) - f.hess_tt[i];
                out.tensor = out.tensor.max((t_nn * t_nn + 2.0 * t_tt * t_tt).sqrt());
                out.laplacian = out.laplacian.max(f.laplacian[i].abs());
            }
            Ok(out)
        }
        Solution::Flat(s) => Ok(flat_static(s)),
    }
}

fn flat_static(sol: &FlatAffineSolution) -> StaticResidual {
    // Ric = 0 for the Euclidean metric, so the residual is the Hessian itself.
    let hess = sol.hessian();
    let tensor = hess.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let laplacian = (0..3).map(|i| hess[i][i]).sum::<f64>().abs();
    StaticResidual { tensor, laplacian }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn mat_vec(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    std::array::from_fn(|i| dot(m[i], v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::InnerEnd;

    fn schwarzschild(m: f64, c: f64) -> RadialStaticSolution {
        let f = move |r: f64| 1.0 - 2.0 * m / r;
        RadialStaticSolution::from_fns(
            2.0 * m + 1e-6,
            1.0,
            512,
            move |r| f(r).powf(-0.5),
            move |r| c * f(r).sqrt(),
            move |r| c * m / (r * r * f(r).sqrt()),
            InnerEnd::Horizon,
        )
        .unwrap()
    }

    #[test]
    fn flat_affine_satisfies_both_constraints() {
        let sol = FlatAffineSolution::new(1.0, 0.5, [0.0, 0.0, 1.0]).unwrap();
        let rep = constraint_residuals(&sol, 1.0).unwrap();
        assert!(rep.gauss_max() < 1e-13);
        assert!(rep.codazzi_max() < 1e-13);
        assert_eq!(rep.static_residual.max(), 0.0);
    }

    #[test]
    fn schwarzschild_boundary_constraints_vanish() {
        let sol = schwarzschild(0.2, 0.8);
        let rep = constraint_residuals(&sol, 1.0).unwrap();
        assert!(rep.gauss_max() <= 1e-9, "{}", rep.gauss_max());
        assert!(rep.codazzi_max() <= 1e-9);
        let mid = constraint_residuals(&sol, 0.7123).unwrap();
        assert!(mid.gauss_max() <= 1e-9, "{}", mid.gauss_max());
    }

    #[test]
    fn perturbed_mean_curvature_matches_first_order_expansion() {
        let (m, c, dh) = (0.2, 0.8, 0.01);
        let sol = schwarzschild(m, c);
        let rep = constraint_residuals_with(&sol, 1.0, dh).unwrap();
        // d/dH of (|A|^2 - H^2 + R_γ - 2 H N(u)/u) = -2H - 2 N(u)/u.
        let f = 1.0 - 2.0 * m;
        let h = 2.0 * f.sqrt();
        let normal_log_u = m / f.sqrt();
        let first_order = dh * (-2.0 * h - 2.0 * normal_log_u);
        let got = rep.gauss_residual[0];
        assert!((got - first_order).abs() <= 1.01 * dh * dh, "{got} vs {first_order}");
        assert!(got.abs() > 1e-3);
    }

    #[test]
    fn non_positive_potential_is_a_domain_error() {
        let sol = RadialStaticSolution::from_fns(
            0.5,
            1.0,
            32,
            |_| 1.0,
            |r| r - 0.8,
            |_| 1.0,
            InnerEnd::Boundary,
        )
        .unwrap();
        assert!(matches!(
            constraint_residuals(&sol, 0.7),
            Err(Error::Domain(_))
        ));
        assert!(constraint_residuals(&sol, 0.9).is_ok());
        assert!(matches!(constraint_residuals(&sol, 1.5), Err(Error::Input(_))));
    }

    #[test]
    fn static_residual_of_quadratic_potential() {
        let sol = RadialStaticSolution::from_fns(
            0.1,
            1.0,
            256,
            |_| 1.0,
            |r| 1.0 + 0.1 * r * r,
            |r| 0.2 * r,
            InnerEnd::Boundary,
        )
        .unwrap();
        let res = static_residual(&sol).unwrap();
        assert!((res.tensor - 0.2 * 3f64.sqrt()).abs() < 1e-10, "{}", res.tensor);
        assert!((res.laplacian - 0.6).abs() < 1e-10);
    }

    #[test]
    fn schwarzschild_static_residual_vanishes() {
        for m in [0.05, 0.2, 0.3, 0.45] {
            let res = static_residual(&schwarzschild(m, 4.0 * m)).unwrap();
            assert!(res.max() <= 1e-9, "m = {m}: {res:?}");
        }
    }
}
