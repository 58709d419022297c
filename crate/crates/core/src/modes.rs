//! Real spherical harmonics on the unit sphere, the Dirichlet-to-Neumann map
//! of the unit ball, and the kernel of the linearized boundary condition
//! `Δu' + 2 N(u') = 0` for flat affine solutions.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::config::{Quadrature, Tolerances};
use crate::error::{Error, Result};
use crate::flat_ball::mu_second_variation;
use crate::sphere::{SphereQuadrature, SpherePoint};

/// Position of `Y_{l,k}` in a coefficient vector.
pub fn coeff_index(l: usize, k: i64) -> usize {
    ((l * l + l) as i64 + k) as usize
}

fn packed(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

/// Orthonormal associated Legendre functions `Q_l^m(x)`, `0 <= m <= l <=
/// lmax`, packed by `l (l + 1) / 2 + m`. `Y_{l,0} = Q_l^0`, and for `k > 0`
/// `Y_{l,±k} = √2 Q_l^k (cos kφ | sin kφ)`.
fn legendre_table(lmax: usize, x: f64) -> Vec<f64> {
    let mut q = vec![0.0; packed(lmax, lmax) + 1];
    let s = (1.0 - x * x).max(0.0).sqrt();
    q[0] = 1.0 / (4.0 * PI).sqrt();
    for m in 0..=lmax {
        if m > 0 {
            let mf = m as f64;
            q[packed(m, m)] = ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s * q[packed(m - 1, m - 1)];
        }
        if m < lmax {
            q[packed(m + 1, m)] = (2.0 * m as f64 + 3.0).sqrt() * x * q[packed(m, m)];
        }
        for l in (m + 2)..=lmax {
            let (lf, mf) = (l as f64, m as f64);
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
            q[packed(l, m)] = a * (x * q[packed(l - 1, m)] - b * q[packed(l - 2, m)]);
        }
    }
    q
}

fn azimuthal(k: i64, phi: f64) -> f64 {
    match k {
        0 => 1.0,
        k if k > 0 => 2f64.sqrt() * (k as f64 * phi).cos(),
        k => 2f64.sqrt() * (-k as f64 * phi).sin(),
    }
}

/// Real orthonormal spherical harmonic `Y_{l,k}` at `(cos θ, φ)`.
pub fn real_harmonic(l: usize, k: i64, cos_theta: f64, azimuth: f64) -> f64 {
    assert!(k.unsigned_abs() as usize <= l, "|k| must not exceed l");
    legendre_table(l, cos_theta)[packed(l, k.unsigned_abs() as usize)] * azimuthal(k, azimuth)
}

/// Precomputed analysis and synthesis tables for a band limit and grid.
#[derive(Debug)]
pub struct SphereTransform {
    lmax: usize,
    quad: SphereQuadrature,
    /// `legendre[i]` is the packed table at latitude node `i`.
    legendre: Vec<Vec<f64>>,
    /// `(cos, sin)` of `2πk / azimuth_points`. Indexing by `m j mod n` keeps
    /// the azimuthal sums exactly periodic, so aliased orders cancel to
    /// rounding instead of to the error of `cos(m φ_j)`.
    trig: Vec<(f64, f64)>,
}

impl SphereTransform {
    /// The grid must integrate products of band-limited fields exactly:
    /// `order > lmax` and `azimuth_points > 2 lmax`.
    pub fn new(lmax: usize, order: usize, azimuth_points: usize) -> Result<Arc<Self>> {
        let quad = SphereQuadrature::new(order, azimuth_points)?;
        if order <= lmax {
            return Err(Error::Resolution {
                what: "sphere quadrature order",
                got: order,
                min: lmax + 1,
            });
        }
        if azimuth_points <= 2 * lmax {
            return Err(Error::Resolution {
                what: "azimuthal points",
                got: azimuth_points,
                min: 2 * lmax + 1,
            });
        }
        let legendre = quad.cos_theta.iter().map(|&x| legendre_table(lmax, x)).collect();
        let trig = (0..azimuth_points)
            .map(|k| {
                let phi = quad.azimuth(k);
                (phi.cos(), phi.sin())
            })
            .collect();
        Ok(Arc::new(Self {
            lmax,
            quad,
            legendre,
            trig,
        }))
    }

    pub fn with_defaults() -> Arc<Self> {
        let q = Quadrature::default();
        Self::new(q.lmax, q.sphere_order, q.azimuth_points).expect("default resolution is consistent")
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn quadrature(&self) -> &SphereQuadrature {
        &self.quad
    }

    pub fn coeff_len(&self) -> usize {
        (self.lmax + 1) * (self.lmax + 1)
    }

    fn sample_len(&self) -> usize {
        self.quad.order() * self.quad.azimuth_points
    }

    pub fn analysis(&self, samples: &[f64]) -> Vec<f64> {
        let na = self.quad.azimuth_points;
        let dphi = 2.0 * PI / na as f64;
        let mut coeffs = vec![0.0; self.coeff_len()];
        for (i, row) in samples.chunks_exact(na).enumerate() {
            let w = self.quad.lat_weights[i] * dphi;
            let table = &self.legendre[i];
            for m in 0..=self.lmax {
                let (mut cs, mut sn) = (0.0, 0.0);
                for (j, &f) in row.iter().enumerate() {
                    let (c, s) = self.trig[m * j % na];
                    cs += f * c;
                    sn += f * s;
                }
                let norm = if m == 0 { 1.0 } else { 2f64.sqrt() };
                for l in m..=self.lmax {
                    let q = w * norm * table[packed(l, m)];
                    coeffs[coeff_index(l, m as i64)] += q * cs;
                    if m > 0 {
                        coeffs[coeff_index(l, -(m as i64))] += q * sn;
                    }
                }
            }
        }
        coeffs
    }

    pub fn synthesis(&self, coeffs: &[f64]) -> Vec<f64> {
        let na = self.quad.azimuth_points;
        let mut samples = Vec::with_capacity(self.sample_len());
        for table in &self.legendre {
            // Per-order latitude sums, then the azimuthal series.
            let mut cs = vec![0.0; self.lmax + 1];
            let mut sn = vec![0.0; self.lmax + 1];
            for m in 0..=self.lmax {
                let norm = if m == 0 { 1.0 } else { 2f64.sqrt() };
                for l in m..=self.lmax {
                    let q = norm * table[packed(l, m)];
                    cs[m] += q * coeffs[coeff_index(l, m as i64)];
                    if m > 0 {
                        sn[m] += q * coeffs[coeff_index(l, -(m as i64))];
                    }
                }
            }
            for j in 0..na {
                let v: f64 = (0..=self.lmax)
                    .map(|m| {
                        let (c, s) = self.trig[m * j % na];
                        cs[m] * c + sn[m] * s
                    })
                    .sum();
                samples.push(v);
            }
        }
        samples
    }
}

/// A scalar field on the unit sphere held both as grid samples and as
/// spherical-harmonic coefficients up to the transform's band limit.
#[derive(Debug, Clone)]
pub struct SphereField {
    transform: Arc<SphereTransform>,
    samples: Vec<f64>,
    coeffs: Vec<f64>,
}

impl SphereField {
    pub fn from_fn<F: FnMut(&SpherePoint) -> f64>(transform: &Arc<SphereTransform>, f: F) -> Self {
        let mut f = f;
        let samples: Vec<f64> = transform.quad.points().map(|p| f(&p)).collect();
        Self::from_samples(transform, samples).expect("grid-sized samples")
    }

    pub fn from_samples(transform: &Arc<SphereTransform>, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != transform.sample_len() {
            return Err(Error::Input(format!(
                "expected {} samples, got {}",
                transform.sample_len(),
                samples.len()
            )));
        }
        let coeffs = transform.analysis(&samples);
        Ok(Self {
            transform: Arc::clone(transform),
            samples,
            coeffs,
        })
    }

    pub fn from_coeffs(transform: &Arc<SphereTransform>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != transform.coeff_len() {
            return Err(Error::Input(format!(
                "expected {} coefficients, got {}",
                transform.coeff_len(),
                coeffs.len()
            )));
        }
        let samples = transform.synthesis(&coeffs);
        Ok(Self {
            transform: Arc::clone(transform),
            samples,
            coeffs,
        })
    }

    pub fn lmax(&self) -> usize {
        self.transform.lmax
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize, k: i64) -> f64 {
        self.coeffs[coeff_index(l, k)]
    }

    pub fn transform(&self) -> &Arc<SphereTransform> {
        &self.transform
    }

    /// `∫ f g` over the unit sphere by quadrature.
    pub fn inner_product(&self, other: &SphereField) -> f64 {
        let quad = &self.transform.quad;
        quad.points()
            .zip(self.samples.iter().zip(&other.samples))
            .map(|(p, (a, b))| p.weight * a * b)
            .sum()
    }

    /// The harmonic extension `Σ c_{l,k} |x|^l Y_{l,k}(x / |x|)` into the ball.
    pub fn harmonic_extension(&self, x: [f64; 3]) -> f64 {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if r == 0.0 {
            return self.coeff(0, 0) / (4.0 * PI).sqrt();
        }
        let cos_theta = (x[2] / r).clamp(-1.0, 1.0);
        let phi = x[1].atan2(x[0]);
        let table = legendre_table(self.lmax(), cos_theta);
        let mut total = 0.0;
        for l in 0..=self.lmax() {
            let rl = r.powi(l as i32);
            for k in -(l as i64)..=(l as i64) {
                total += self.coeff(l, k) * rl * table[packed(l, k.unsigned_abs() as usize)] * azimuthal(k, phi);
            }
        }
        total
    }
}

/// Outward normal derivative of the harmonic extension: `c_{l,k} -> l c_{l,k}`.
pub fn apply_dtn(f: &SphereField) -> SphereField {
    let mut coeffs = f.coeffs.clone();
    for l in 0..=f.lmax() {
        for k in -(l as i64)..=(l as i64) {
            coeffs[coeff_index(l, k)] *= l as f64;
        }
    }
    SphereField::from_coeffs(&f.transform, coeffs).expect("same band limit")
}

fn check_degree(l: i64) -> Result<u64> {
    u64::try_from(l).map_err(|_| Error::Input(format!("degree {l} must be non-negative")))
}

/// `λ_l = l (l + 1)`.
pub fn laplace_eigenvalue(l: i64) -> Result<i64> {
    let l = check_degree(l)? as i64;
    Ok(l * (l + 1))
}

/// `-l (l + 1) + 2 l`: the boundary condition `Δu' + 2 N(u') = 0` with
/// `N` replaced by the Dirichlet-to-Neumann eigenvalue.
pub fn linearized_boundary_symbol(l: i64) -> Result<i64> {
    let l = check_degree(l)? as i64;
    Ok(-l * (l + 1) + 2 * l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeRole {
    /// `l = 0`: constant rescaling of `u`.
    Rescale,
    /// `l = 1`: the three linear functions.
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KernelMode {
    pub l: usize,
    pub multiplicity: usize,
    pub role: ModeRole,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub lmax: usize,
    pub dimension: usize,
    pub modes: Vec<KernelMode>,
    /// Dimension with the rescale mode removed.
    pub rescale_reduced: usize,
}

impl KernelReport {
    pub fn degrees(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.l).collect()
    }
}

pub fn kernel_dimension(lmax: usize) -> Result<KernelReport> {
    if lmax < 2 {
        return Err(Error::Input(format!("band limit {lmax} must be at least 2")));
    }
    let mut modes = Vec::new();
    for l in 0..=lmax {
        if linearized_boundary_symbol(l as i64)? == 0 {
            let role = if l == 0 {
                ModeRole::Rescale
            } else if l == 1 {
                ModeRole::Translation
            } else {
                return Err(Error::Numerical(format!("unexpected kernel mode l = {l}")));
            };
            modes.push(KernelMode {
                l,
                multiplicity: 2 * l + 1,
                role,
            });
        }
    }
    let dimension = modes.iter().map(|m| m.multiplicity).sum();
    let rescale_reduced = modes
        .iter()
        .filter(|m| m.role != ModeRole::Rescale)
        .map(|m| m.multiplicity)
        .sum();
    Ok(KernelReport {
        lmax,
        dimension,
        modes,
        rescale_reduced,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasePoint {
    /// Flat unit ball with `u ≡ 1`.
    FlatBall,
    /// Flat unit ball with an affine potential at level `μ > 0`.
    SigmaMu { mu: f64 },
    /// Schwarzschild with `R = 1`, `c = 4m`.
    Schwarzschild { m: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NullityStatus {
    /// Counted from the boundary symbol.
    Computed,
    /// Not computed; stated as a conjecture.
    Conjectural,
    /// A critical point (the fold).
    Critical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullityLedger {
    pub base: BasePoint,
    pub status: NullityStatus,
    pub kernel_dimension: Option<usize>,
    pub modes: Vec<KernelMode>,
    /// `D²μ` along the rescale direction `u' = 1` when it is removed.
    pub removed_direction_d2mu: Option<f64>,
    pub note: &'static str,
}

pub fn nullity_ledger(point: BasePoint) -> Result<NullityLedger> {
    let lmax = Quadrature::default().lmax;
    match point {
        BasePoint::FlatBall => {
            let k = kernel_dimension(lmax)?;
            Ok(NullityLedger {
                base: point,
                status: NullityStatus::Computed,
                kernel_dimension: Some(k.dimension),
                modes: k.modes,
                removed_direction_d2mu: None,
                note: "affine boundary traces a' + b' z'; infinitesimal rigidity of the round sphere is assumed",
            })
        }
        BasePoint::SigmaMu { mu } => {
            if !(mu.is_finite() && mu > 0.0) {
                return Err(Error::Input(format!("level {mu} must be positive")));
            }
            let k = kernel_dimension(lmax)?;
            let d2 = mu_second_variation(1.0, 0.0, [0.0, 0.0, 1.0])?;
            if !(d2 > 0.0) {
                return Err(Error::Numerical(format!("rescale direction has D²μ = {d2}")));
            }
            Ok(NullityLedger {
                base: point,
                status: NullityStatus::Computed,
                kernel_dimension: Some(k.rescale_reduced),
                modes: k.modes.into_iter().filter(|m| m.role != ModeRole::Rescale).collect(),
                removed_direction_d2mu: Some(d2),
                note: "rescale mode removed: μ is not stationary along u' = 1",
            })
        }
        BasePoint::Schwarzschild { m } => {
            if !(m > 0.0 && m < 0.5) {
                return Err(Error::Input(format!("mass {m} outside (0, 1/2)")));
            }
            let at_fold = (m - 1.0 / 3.0).abs() <= Tolerances::default().fold_window;
            Ok(NullityLedger {
                base: point,
                status: if at_fold {
                    NullityStatus::Critical
                } else {
                    NullityStatus::Conjectural
                },
                kernel_dimension: if at_fold { None } else { Some(0) },
                modes: vec![],
                removed_direction_d2mu: None,
                note: if at_fold {
                    "photon-sphere fold: critical point of the boundary map"
                } else {
                    "regular point conjectured; nullity 0 is not computed"
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_matches_closed_forms() {
        let x = 0.3f64;
        let t = legendre_table(2, x);
        let c = 1.0 / (4.0 * PI).sqrt();
        assert!((t[packed(0, 0)] - c).abs() < 1e-15);
        assert!((t[packed(1, 0)] - c * 3f64.sqrt() * x).abs() < 1e-15);
        let p2 = 0.5 * (3.0 * x * x - 1.0);
        assert!((t[packed(2, 0)] - c * 5f64.sqrt() * p2).abs() < 1e-15);
    }

    #[test]
    fn harmonics_are_orthonormal() {
        let tr = SphereTransform::new(6, 16, 32).unwrap();
        for (l, k) in [(0usize, 0i64), (1, -1), (3, 2), (6, -6), (5, 0)] {
            let f = SphereField::from_fn(&tr, |p| real_harmonic(l, k, p.cos_theta, p.azimuth));
            for l2 in 0..=6 {
                for k2 in -(l2 as i64)..=(l2 as i64) {
                    let expect = if (l2, k2) == (l, k) { 1.0 } else { 0.0 };
                    assert!((f.coeff(l2, k2) - expect).abs() < 1e-13, "({l},{k}) vs ({l2},{k2})");
                }
            }
        }
    }

    #[test]
    fn resolution_is_checked() {
        assert!(matches!(SphereTransform::new(32, 32, 128), Err(Error::Resolution { .. })));
        assert!(matches!(SphereTransform::new(32, 64, 64), Err(Error::Resolution { .. })));
    }

    #[test]
    fn symbols() {
        assert_eq!(laplace_eigenvalue(5).unwrap(), 30);
        assert!(matches!(laplace_eigenvalue(-1), Err(Error::Input(_))));
        assert_eq!(linearized_boundary_symbol(2).unwrap(), -2);
        assert_eq!(linearized_boundary_symbol(0).unwrap(), 0);
        assert!(matches!(kernel_dimension(1), Err(Error::Input(_))));
        let k = kernel_dimension(2).unwrap();
        assert_eq!((k.dimension, k.rescale_reduced, k.degrees()), (4, 3, vec![0, 1]));
    }

    #[test]
    fn ledger_entries() {
        assert_eq!(nullity_ledger(BasePoint::FlatBall).unwrap().kernel_dimension, Some(4));
        let s = nullity_ledger(BasePoint::SigmaMu { mu: 0.5 }).unwrap();
        assert_eq!(s.kernel_dimension, Some(3));
        assert!(s.removed_direction_d2mu.unwrap() > 0.0);
        assert_eq!(
            nullity_ledger(BasePoint::Schwarzschild { m: 1.0 / 3.0 }).unwrap().status,
            NullityStatus::Critical
        );
        assert_eq!(
            nullity_ledger(BasePoint::Schwarzschild { m: 0.2 }).unwrap().status,
            NullityStatus::Conjectural
        );
        assert!(matches!(nullity_ledger(BasePoint::SigmaMu { mu: 0.0 }), Err(Error::Input(_))));
    }
}
