//! Product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times
//! the uniform trapezoid rule in azimuth.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::quadrature::gauss_legendre;

/// Lowest Gauss-Legendre order accepted for sphere integrals.
pub const MIN_ORDER: usize = 8;

#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    /// cos(theta) nodes, increasing.
    pub cos_theta: Vec<f64>,
    pub lat_weights: Vec<f64>,
    pub azimuth_points: usize,
}

/// A quadrature node on the unit sphere.
#[derive(Debug, Clone, Copy)]
pub struct SpherePoint {
    pub unit: [f64; 3],
    pub cos_theta: f64,
    pub azimuth: f64,
    pub weight: f64,
}

impl SphereQuadrature {
    pub fn new(order: usize, azimuth_points: usize) -> Result<Self> {
        if order < MIN_ORDER {
            return Err(Error::Resolution {
                what: "sphere quadrature order",
                got: order,
                min: MIN_ORDER,
            });
        }
        if azimuth_points < 2 * MIN_ORDER {
            return Err(Error::Resolution {
                what: "azimuthal points",
                got: azimuth_points,
                min: 2 * MIN_ORDER,
            });
        }
        let (cos_theta, lat_weights) = gauss_legendre(order);
        Ok(Self {
            cos_theta,
            lat_weights,
            azimuth_points,
        })
    }

    pub fn order(&self) -> usize {
        self.cos_theta.len()
    }

    pub fn azimuth(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.azimuth_points as f64
    }

    pub fn points(&self) -> impl Iterator<Item = SpherePoint> + '_ {
        let dphi = 2.0 * PI / self.azimuth_points as f64;
        self.cos_theta
            .iter()
            .zip(&self.lat_weights)
            .flat_map(move |(&x, &w)| {
                let s = (1.0 - x * x).max(0.0).sqrt();
                (0..self.azimuth_points).map(move |j| {
                    let phi = self.azimuth(j);
                    SpherePoint {
                        unit: [s * phi.cos(), s * phi.sin(), x],
                        cos_theta: x,
                        azimuth: phi,
                        weight: w * dphi,
                    }
                })
            })
    }

    /// Integral of `f` over the unit sphere.
    pub fn integrate<F: FnMut(&SpherePoint) -> f64>(&self, mut f: F) -> f64 {
        self.points().map(|p| p.weight * f(&p)).sum()
    }

    /// Integral of a zonal function `f(cos theta)`; the azimuthal factor is
    /// exactly 2 pi.
    pub fn integrate_zonal<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        2.0 * PI
            * self
                .cos_theta
                .iter()
                .zip(&self.lat_weights)
                .map(|(&x, &w)| w * f(x))
                .sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        self.integrate(|_| 1.0)
    }
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        let q = crate::config::Quadrature::default();
        Self::new(q.sphere_order, q.azimuth_points).expect("default orders are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_low_degree_monomials() {
        let q = SphereQuadrature::new(16, 32).unwrap();
        assert!((q.area() - 4.0 * PI).abs() < 1e-12);
        let z2 = q.integrate(|p| p.unit[2] * p.unit[2]);
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-12);
        let x2y2 = q.integrate(|p| (p.unit[0] * p.unit[1]).powi(2));
        assert!((x2y2 - 4.0 * PI / 15.0).abs() < 1e-12);
        assert!((q.integrate_zonal(|x| x * x) - z2).abs() < 1e-12);
    }

    #[test]
    fn rejects_low_order() {
        assert!(matches!(
            SphereQuadrature::new(4, 64),
            Err(Error::Resolution { .. })
        ));
    }
}
