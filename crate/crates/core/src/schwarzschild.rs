//! Closed-form Schwarzschild solutions on `[2m + ε, R]` and their boundary
//! data, with the fold of the boundary potential at `m = 1/3`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::{Quadrature, Tolerances};
use crate::error::{Error, Result};
use crate::geometry::{InnerEnd, RadialStaticSolution};
use crate::numerics::roots::{bisect, newton_polish};

/// Default gap between the horizon and the first grid radius, relative to `R`.
pub const HORIZON_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchwarzschildParams {
    pub m: f64,
    /// Fiber scale: `u = c sqrt(1 - 2m/r)`.
    pub c: f64,
    /// Outer radius.
    #[serde(rename = "R")]
    pub r_out: f64,
}

impl SchwarzschildParams {
    /// `R = 1`, `c = 4m`.
    pub fn new(m: f64) -> Result<Self> {
        Self::with(m, 4.0 * m, 1.0)
    }

    pub fn with(m: f64, c: f64, r_out: f64) -> Result<Self> {
        if !(m.is_finite() && c.is_finite() && r_out.is_finite()) {
            return Err(Error::Parameter("parameters must be finite".into()));
        }
        if !(m > 0.0) {
            return Err(Error::Parameter(format!("mass {m} must be positive")));
        }
        if !(2.0 * m < r_out) {
            return Err(Error::Parameter(format!(
                "2m = {} must be below the outer radius {r_out}",
                2.0 * m
            )));
        }
        if !(c > 0.0) {
            return Err(Error::Parameter(format!("fiber scale {c} must be positive")));
        }
        Ok(Self { m, c, r_out })
    }

    pub fn lapse_squared(&self, r: f64) -> f64 {
        1.0 - 2.0 * self.m / r
    }

    pub fn phi(&self, r: f64) -> f64 {
        self.lapse_squared(r).sqrt().recip()
    }

    pub fn u(&self, r: f64) -> f64 {
        self.c * self.lapse_squared(r).sqrt()
    }

    pub fn u_prime(&self, r: f64) -> f64 {
        self.c * self.m / (r * r * self.lapse_squared(r).sqrt())
    }
}

/// Boundary data of a round boundary sphere with constant `H` and `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BartnikBoundaryData {
    /// Radius of the round boundary metric.
    pub gamma_radius: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub u_boundary: f64,
    pub mu: f64,
}

impl BartnikBoundaryData {
    /// Data of a round sphere of radius `rho` in a metric with
    /// `1 - 2 m(rho)/rho = lapse2`; `ν` is constant, so `|dν| = 0`.
    pub fn round(rho: f64, lapse2: f64, u: f64) -> Self {
        Self {
            gamma_radius: rho,
            h: 2.0 * lapse2.sqrt() / rho,
            u_boundary: u,
            mu: 4.0 * PI * rho * rho * u.ln().powi(2),
        }
    }
}

/// Samples the solution on `[2m + HORIZON_GAP R, R]`.
pub fn sch_solution(p: &SchwarzschildParams, n: usize) -> Result<RadialStaticSolution> {
    sch_solution_on(p, 2.0 * p.m + HORIZON_GAP * p.r_out, n)
}

/// Samples the solution on `[r_in, R]`; the inner end is a horizon only
/// when `r_in` is within `HORIZON_GAP` of `2m`.
pub fn sch_solution_on(p: &SchwarzschildParams, r_in: f64, n: usize) -> Result<RadialStaticSolution> {
    if !(r_in > 2.0 * p.m && r_in < p.r_out) {
        return Err(Error::Parameter(format!(
            "inner radius {r_in} must lie in (2m, R) = ({}, {})",
            2.0 * p.m,
            p.r_out
        )));
    }
    let inner = if r_in - 2.0 * p.m <= HORIZON_GAP * p.r_out * (1.0 + 1e-9) {
        InnerEnd::Horizon
    } else {
        InnerEnd::Boundary
    };
    RadialStaticSolution::from_fns(
        r_in,
        p.r_out,
        n,
        |r| p.phi(r),
        |r| p.u(r),
        |r| p.u_prime(r),
        inner,
    )
}

pub fn sch_solution_default(m: f64) -> Result<RadialStaticSolution> {
    sch_solution(&SchwarzschildParams::new(m)?, Quadrature::default().radial_samples)
}

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m < 0.5 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("mass {m} outside (0, 1/2)")))
    }
}

/// `H(m) = 2 sqrt(1 - 2m)` at `R = 1`.
pub fn mean_curvature_of_mass(m: f64) -> f64 {
    2.0 * (1.0 - 2.0 * m).sqrt()
}

/// `u(m) = 4m sqrt(1 - 2m)` at `R = 1`, `c = 4m`.
pub fn boundary_potential(m: f64) -> f64 {
    4.0 * m * (1.0 - 2.0 * m).sqrt()
}

/// `du/dm = (4 - 12m) / sqrt(1 - 2m)`.
pub fn boundary_potential_derivative(m: f64) -> f64 {
    (4.0 - 12.0 * m) / (1.0 - 2.0 * m).sqrt()
}

pub fn sch_boundary_map(m: f64) -> Result<BartnikBoundaryData> {
    check_mass(m)?;
    Ok(BartnikBoundaryData::round(1.0, 1.0 - 2.0 * m, boundary_potential(m)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fold {
    pub m_star: f64,
    pub u_max: f64,
}

/// Maximizer of `u(m)` on `(0, 1/2)` from the sign change of `du/dm`.
pub fn find_fold() -> Fold {
    let tol = Tolerances::default().root;
    let m = bisect(boundary_potential_derivative, 1e-3, 0.49, tol)
        .expect("du/dm changes sign on (0, 1/2)");
    // d²u/dm² at the fold.
    let second = |m: f64| {
        let s = 1.0 - 2.0 * m;
        -12.0 / s.sqrt() + (4.0 - 12.0 * m) / (s * s.sqrt())
    };
    let m_star = newton_polish(boundary_potential_derivative, second, m, 1e-3, 0.49);
    Fold {
        m_star,
        u_max: boundary_potential(m_star),
    }
}

/// Masses with boundary potential equal to a target, in increasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchSet {
    pub branches: Vec<f64>,
}

impl BranchSet {
    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// Small black-hole branch (`m < 1/3`) when two roots exist.
    pub fn m_minus(&self) -> Option<f64> {
        (self.branches.len() == 2).then(|| self.branches[0])
    }

    /// Large black-hole branch (`m > 1/3`) when two roots exist.
    pub fn m_plus(&self) -> Option<f64> {
        (self.branches.len() == 2).then(|| self.branches[1])
    }
}

pub fn invert_branch(target_u: f64) -> Result<BranchSet> {
    invert_branch_with(target_u, &Tolerances::default())
}

/// Solves `16 m² (1 - 2m) = target²`. Inside `fold_window` of the maximum
/// the fold itself is returned; within `fold_taylor_band` the roots are
/// seeded from the quadratic model `u ≈ u_max - 6√3 (m - 1/3)²` and
/// Newton-polished.
pub fn invert_branch_with(target_u: f64, tol: &Tolerances) -> Result<BranchSet> {
    if !(target_u.is_finite() && target_u > 0.0) {
        return Err(Error::Input(format!("target potential {target_u} must be positive")));
    }
    let m_star = 1.0 / 3.0;
    let u_max = 4.0 / (3.0 * 3f64.sqrt());
    let gap = u_max - target_u;
    if gap.abs() <= tol.fold_window {
        return Ok(BranchSet { branches: vec![m_star] });
    }
    if gap < 0.0 {
        return Ok(BranchSet { branches: vec![] });
    }
    let f = |m: f64| boundary_potential(m) - target_u;
    let polish = |mut m: f64, lo: f64, hi: f64, steps: usize| {
        for _ in 0..steps {
            m = newton_polish(f, boundary_potential_derivative, m, lo, hi);
        }
        m
    };
    let (m_minus, m_plus) = if gap <= tol.fold_taylor_band {
        let delta = (gap / (6.0 * 3f64.sqrt())).sqrt();
        (
            polish(m_star - delta, 0.0, m_star, 4),
            polish(m_star + delta, m_star, 0.5, 4),
        )
    } else {
        let lo = bisect(f, 0.0, m_star, tol.root)?;
        let hi = bisect(f, m_star, 0.5, tol.root)?;
        (polish(lo, 0.0, m_star, 1), polish(hi, m_star, 0.5, 1))
    };
    Ok(BranchSet {
        branches: vec![m_minus, m_plus],
    })
}

pub fn preimage_count(target_u: f64) -> Result<usize> {
    Ok(invert_branch(target_u)?.len())
}

/// `N(u)` continued to `r = 2m`: `c / (4m)`.
pub fn surface_gravity(p: &SchwarzschildParams) -> f64 {
    p.c / (4.0 * p.m)
}

/// `∫H₀ - ∫H` over the unit boundary sphere with `H₀ = 2`, written without
/// cancellation for small `m`.
pub fn shi_tam_check(m: f64) -> Result<f64> {
    check_mass(m)?;
    Ok(16.0 * PI * m / (1.0 + (1.0 - 2.0 * m).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parameter_validation() {
        assert!(matches!(SchwarzschildParams::new(0.5), Err(Error::Parameter(_))));
        assert!(matches!(SchwarzschildParams::with(0.2, -1.0, 1.0), Err(Error::Parameter(_))));
        assert!(matches!(sch_boundary_map(0.0), Err(Error::Parameter(_))));
        assert!(matches!(shi_tam_check(0.6), Err(Error::Parameter(_))));
    }

    #[test]
    fn closed_form_values() {
        let p = SchwarzschildParams::new(0.3).unwrap();
        assert_relative_eq!(p.u(1.0), 1.2 * 0.4f64.sqrt(), max_relative = 1e-15);
        let d = sch_boundary_map(1.0 / 3.0).unwrap();
        assert_relative_eq!(d.h, 2.0 / 3f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(d.u_boundary, 4.0 / (3.0 * 3f64.sqrt()), max_relative = 1e-14);
        assert_relative_eq!(sch_boundary_map(0.375).unwrap().h, 1.0, max_relative = 1e-14);
        assert_relative_eq!(shi_tam_check(0.1).unwrap(), 8.0 * PI * (1.0 - 0.8f64.sqrt()), max_relative = 1e-14);
    }

    #[test]
    fn fold_location() {
        let f = find_fold();
        assert!((f.m_star - 1.0 / 3.0).abs() <= 1e-10);
        assert!((f.u_max - 4.0 / (3.0 * 3f64.sqrt())).abs() <= 1e-10);
        assert!(boundary_potential_derivative(f.m_star).abs() <= 1e-8);
    }

    #[test]
    fn branch_inversion() {
        let b = invert_branch(0.5).unwrap();
        let (lo, hi) = (b.m_minus().unwrap(), b.m_plus().unwrap());
        // Roots of 32m³ - 16m² + 1/4 from an independent polynomial solver.
        assert!((lo - 0.149_242_07).abs() < 1e-8 && (hi - 0.463_659_42).abs() < 1e-8);
        assert!((boundary_potential(lo) - 0.5).abs() <= 1e-10);
        assert!((boundary_potential(hi) - 0.5).abs() <= 1e-10);
        assert_eq!(invert_branch(4.0 / (3.0 * 3f64.sqrt())).unwrap().branches, vec![1.0 / 3.0]);
        assert!(invert_branch(0.8).unwrap().is_empty());
        assert!(matches!(invert_branch(-0.1), Err(Error::Input(_))));
    }

    #[test]
    fn taylor_band_roots() {
        let u_max = 4.0 / (3.0 * 3f64.sqrt());
        for gap in [2e-8, 1e-7, 9e-7] {
            let b = invert_branch(u_max - gap).unwrap();
            for &m in &b.branches {
                assert!((boundary_potential(m) - (u_max - gap)).abs() <= 1e-13, "gap {gap}");
            }
            assert!(b.m_minus().unwrap() < 1.0 / 3.0 && b.m_plus().unwrap() > 1.0 / 3.0);
        }
    }

    #[test]
    fn surface_gravity_values() {
        assert_eq!(surface_gravity(&SchwarzschildParams::new(0.2).unwrap()), 1.0);
        assert_eq!(surface_gravity(&SchwarzschildParams::with(0.25, 1.0, 1.0).unwrap()), 1.0);
        assert_relative_eq!(surface_gravity(&SchwarzschildParams::with(0.1, 0.8, 1.0).unwrap()), 2.0);
    }

    #[test]
    fn solution_sampling() {
        let p = SchwarzschildParams::new(0.2).unwrap();
        let s = sch_solution(&p, 256).unwrap();
        assert_eq!(s.inner, InnerEnd::Horizon);
        assert!(s.mass_fn.iter().all(|m| (m - 0.2).abs() < 1e-12));
        let shell = sch_solution_on(&p, 0.5, 64).unwrap();
        assert_eq!(shell.inner, InnerEnd::Boundary);
        assert!(matches!(sch_solution_on(&p, 0.3, 64), Err(Error::Parameter(_))));
    }
}
