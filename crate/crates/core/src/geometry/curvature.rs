use serde::Serialize;

use crate::error::Result;

use super::metric::RadialMetric;
use super::profile::WarpedProfile;

/// Curvature of a radial metric at every grid point, in an orthonormal frame
/// `(N, e_1, e_2)` with `N` the unit radial normal.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureRecord {
    pub r: Vec<f64>,
    /// `Ric(N, N)`.
    pub ric_radial: Vec<f64>,
    /// `Ric(e, e)` for a unit tangent `e` of the spheres.
    pub ric_tangential: Vec<f64>,
    pub scalar: Vec<f64>,
    /// `sqrt(R_ijkl R^ijkl)`.
    pub rm_norm: Vec<f64>,
}

impl CurvatureRecord {
    pub fn ricci_trace(&self, i: usize) -> f64 {
        self.ric_radial[i] + 2.0 * self.ric_tangential[i]
    }
}

pub fn curvature_radial(metric: &RadialMetric) -> Result<CurvatureRecord> {
    let r = metric.radii();
    let ones = vec![1.0; metric.len()];
    let zeros = vec![0.0; metric.len()];
    let f = WarpedProfile {
        grid: *metric.grid(),
        a: metric.phi(),
        b: &r,
        b_r: &ones,
        u_r: &zeros,
    }
    .fields();
    Ok(record(r, &f.k_radial, &f.k_tangential, &f.scalar))
}

pub(crate) fn record(r: Vec<f64>, kr: &[f64], kt: &[f64], scalar: &[f64]) -> CurvatureRecord {
    let ric_radial = kr.iter().map(|k| 2.0 * k).collect();
    let ric_tangential = kr.iter().zip(kt).map(|(a, b)| a + b).collect();
    // Two radial planes and one tangential plane.
    let rm_norm = kr
        .iter()
        .zip(kt)
        .map(|(a, b)| 2.0 * (2.0 * a * a + b * b).sqrt())
        .collect();
    CurvatureRecord {
        r,
        ric_radial,
        ric_tangential,
        scalar: scalar.to_vec(),
        rm_norm,
    }
}
