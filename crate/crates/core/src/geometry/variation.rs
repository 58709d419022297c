//! First variation of `L(g, u) = -∫ u R dV` along radial deformations.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{fd, quadrature::radial_integral};

use super::metric::RadialStaticSolution;
use super::profile::WarpedProfile;

/// The deformation `(h, u') = (f(r) g, w(r))`, sampled on the base grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDeformation {
    pub f: Vec<f64>,
    pub w: Vec<f64>,
}

impl RadialDeformation {
    pub fn from_fns<F, W>(base: &RadialStaticSolution, f: F, w: W) -> Self
    where
        F: Fn(f64) -> f64,
        W: Fn(f64) -> f64,
    {
        let r = base.radii();
        Self {
            f: r.iter().map(|&x| f(x)).collect(),
            w: r.iter().map(|&x| w(x)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VariationReport {
    /// Centered difference `(L(t) - L(-t)) / 2t`.
    pub d_action: f64,
    /// `∫_M <S*u + uRg/2, h> + R u'`.
    pub bulk: f64,
    /// `∫_{∂M} <uA - N(u)γ, h^T> + 2u H'_h`, outward normal.
    pub boundary: f64,
    /// `|d_action + bulk - boundary|`.
    pub deficit: f64,
    pub step: f64,
}

fn action_along(
    base: &RadialStaticSolution,
    dir: &RadialDeformation,
    f_r: &[f64],
    w_r: &[f64],
    t: f64,
) -> Result<f64> {
    let grid = *base.metric.grid();
    let r = base.radii();
    let n = r.len();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    // Exact derivative of r sqrt(1 + t f); differencing b would put rounding
    // noise of size eps/h into the curvature.
    let mut b_r = Vec::with_capacity(n);
    for i in 0..n {
        let s = 1.0 + t * dir.f[i];
        if !(s > 0.0) {
            return Err(Error::Numerical(format!(
                "deformed metric degenerates at r = {} for t = {t}",
                r[i]
            )));
        }
        let root = s.sqrt();
        a.push(base.metric.phi()[i] * root);
        b.push(r[i] * root);
        b_r.push((s + 0.5 * r[i] * t * f_r[i]) / root);
    }
    let u: Vec<f64> = (0..n).map(|i| base.u[i] + t * dir.w[i]).collect();
    let u_r: Vec<f64> = (0..n).map(|i| base.u_prime[i] + t * w_r[i]).collect();
    let fields = WarpedProfile {
        grid,
        a: &a,
        b: &b,
        b_r: &b_r,
        u_r: &u_r,
    }
    .fields();
    let integrand: Vec<f64> = (0..n)
        .map(|i| u[i] * fields.scalar[i] * a[i] * b[i] * b[i])
        .collect();
    Ok(-4.0 * PI * radial_integral(&grid, &integrand))
}

/// Compares a centered difference of `L` along the deformation with the
/// bulk-plus-boundary gradient formula. Both ends of the radial interval are
/// treated as boundary components.
pub fn verify_first_variation(
    base: &RadialStaticSolution,
    dir: &RadialDeformation,
    step: f64,
) -> Result<VariationReport> {
    let n = base.u.len();
    if dir.f.len() != n || dir.w.len() != n {
        return Err(Error::Input("deformation is not sampled on the base grid".into()));
    }
    if !(step.is_finite() && step > 1e-12) {
        return Err(Error::Numerical(format!(
            "difference step {step:e} underflows the action's precision"
        )));
    }
    let grid = *base.metric.grid();
    let w_r = fd::derivative(&dir.w, grid.step);
    let f_r = fd::derivative(&dir.f, grid.step);

    let plus = action_along(base, dir, &f_r, &w_r, step)?;
    let minus = action_along(base, dir, &f_r, &w_r, -step)?;
    let d_action = (plus - minus) / (2.0 * step);

    let r = base.radii();
    let phi = base.metric.phi();
    let fields = base.fields();
    let integrand: Vec<f64> = (0..n)
        .map(|i| {
            let u = base.u[i];
            let scalar = fields.scalar[i];
            // tr(S*u) = -2Δu - uR, so <S*u + uRg/2, f g> = f (uR/2 - 2Δu).
            let density = dir.f[i] * (0.5 * u * scalar - 2.0 * fields.laplacian[i]) + scalar * dir.w[i];
            density * phi[i] * r[i] * r[i]
        })
        .collect();
    let bulk = 4.0 * PI * radial_integral(&grid, &integrand);

    let mut boundary = 0.0;
    for (i, sign) in [(n - 1, 1.0), (0, -1.0)] {
        let u = base.u[i];
        let h = sign * 2.0 / (r[i] * phi[i]);
        let normal_u = sign * base.u_prime[i] / phi[i];
        let normal_f = sign * f_r[i] / phi[i];
        let f = dir.f[i];
        // h^T = f γ; conformal variation gives H'_h = N(f) - f H / 2.
        let a_term = f * (u * h - 2.0 * normal_u);
        let h_prime = normal_f - 0.5 * f * h;
        boundary += (a_term + 2.0 * u * h_prime) * 4.0 * PI * r[i] * r[i];
    }

    Ok(VariationReport {
        d_action,
        bulk,
        boundary,
        deficit: (d_action + bulk - boundary).abs(),
        step,
    })
}
