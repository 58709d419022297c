//! Pointwise geometry of `a(r)^2 dr^2 + b(r)^2 g_{S^2}` with a radial
//! potential.
//!
//! Derivatives are taken only of the areal mass
//! `M = b (1 - (b_r / a)^2) / 2` and of the flux `Q = b^2 N(u)`; both are
//! constant on Schwarzschild, so the exact family is reproduced to rounding
//! even next to the horizon where `a` itself is singular.

use crate::numerics::{fd, UniformGrid};

use super::metric::RadialStaticSolution;

#[derive(Debug, Clone)]
pub(crate) struct WarpedProfile<'a> {
    pub grid: UniformGrid,
    pub a: &'a [f64],
    pub b: &'a [f64],
    /// `db/dr`, supplied exactly.
    pub b_r: &'a [f64],
    pub u_r: &'a [f64],
}

#[derive(Debug, Clone)]
pub(crate) struct WarpedFields {
    /// Sectional curvature of planes containing the normal.
    pub k_radial: Vec<f64>,
    /// Sectional curvature of planes tangent to the spheres.
    pub k_tangential: Vec<f64>,
    pub scalar: Vec<f64>,
    /// Normal derivative `N(u) = u_r / a`.
    pub normal_u: Vec<f64>,
    /// Hessian of `u` on the normal and on a unit tangent vector.
    pub hess_nn: Vec<f64>,
    pub hess_tt: Vec<f64>,
    pub laplacian: Vec<f64>,
}

impl WarpedProfile<'_> {
    pub fn fields(&self) -> WarpedFields {
        let n = self.grid.len;
        let h = self.grid.step;
        let b_r = self.b_r;
        let mass: Vec<f64> = (0..n)
            .map(|i| {
                let s = b_r[i] / self.a[i];
                0.5 * self.b[i] * (1.0 - s) * (1.0 + s)
            })
            .collect();
        let mass_r = fd::derivative(&mass, h);
        let normal_u: Vec<f64> = (0..n).map(|i| self.u_r[i] / self.a[i]).collect();
        let flux: Vec<f64> = (0..n).map(|i| self.b[i] * self.b[i] * normal_u[i]).collect();
        let flux_r = fd::derivative(&flux, h);

        let mut f = WarpedFields {
            k_radial: vec![0.0; n],
            k_tangential: vec![0.0; n],
            scalar: vec![0.0; n],
            normal_u,
            hess_nn: vec![0.0; n],
            hess_tt: vec![0.0; n],
            laplacian: vec![0.0; n],
        };
        for i in 0..n {
            let (a, b, br) = (self.a[i], self.b[i], b_r[i]);
            let b2 = b * b;
            let b3 = b2 * b;
            f.k_tangential[i] = 2.0 * mass[i] / b3;
            f.k_radial[i] = -mass[i] / b3 + mass_r[i] / (br * b2);
            f.scalar[i] = 4.0 * mass_r[i] / (br * b2);
            let q = flux[i];
            f.hess_nn[i] = (flux_r[i] / b2 - 2.0 * q * br / b3) / a;
            f.hess_tt[i] = br / (a * b) * f.normal_u[i];
            f.laplacian[i] = flux_r[i] / (a * b2);
        }
        f
    }
}

impl RadialStaticSolution {
    pub(crate) fn profile(&self) -> (Vec<f64>, Vec<f64>) {
        (self.radii(), vec![1.0; self.metric.len()])
    }

    pub(crate) fn fields(&self) -> WarpedFields {
        let (b, b_r) = self.profile();
        WarpedProfile {
            grid: *self.metric.grid(),
            a: self.metric.phi(),
            b: &b,
            b_r: &b_r,
            u_r: &self.u_prime,
        }
        .fields()
    }
}
