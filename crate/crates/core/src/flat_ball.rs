//! Flat metric on the unit ball with affine potentials `u = a + b z`.
//!
//! All boundary integrals reduce to one-dimensional Gauss-Legendre sums in
//! `x = cos(theta)` after rotating the axis of `z` to the pole, where
//! `ν = log(a + b x)` and `|dν| = |b| sin(theta) / (a + b x)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::{Quadrature, Tolerances};
use crate::error::{Error, Result};
use crate::numerics::quadrature::gauss_legendre;
use crate::sphere::MIN_ORDER;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatAffineSolution {
    pub a: f64,
    pub b: f64,
    /// Unit vector defining the linear function `z`.
    pub axis: [f64; 3],
}

impl FlatAffineSolution {
    /// Requires `a > |b|` so that `u` is positive on the closed ball.
    pub fn new(a: f64, b: f64, axis: [f64; 3]) -> Result<Self> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Input("axis must be a nonzero vector".into()));
        }
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::Input("affine coefficients must be finite".into()));
        }
        if a <= b.abs() {
            return Err(Error::Domain(format!(
                "u = {a} + {b} z vanishes on the closed unit ball (need a > |b|)"
            )));
        }
        Ok(Self {
            a,
            b,
            axis: [axis[0] / norm, axis[1] / norm, axis[2] / norm],
        })
    }

    pub fn value(&self, x: [f64; 3]) -> f64 {
        self.a + self.b * (self.axis[0] * x[0] + self.axis[1] * x[1] + self.axis[2] * x[2])
    }

    pub fn gradient(&self) -> [f64; 3] {
        self.axis.map(|c| self.b * c)
    }

    pub fn hessian(&self) -> [[f64; 3]; 3] {
        [[0.0; 3]; 3]
    }

    /// Round boundary metric radius and constant mean curvature of the unit
    /// ball, independent of the potential.
    pub fn boundary_data(&self) -> (f64, f64) {
        (1.0, 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuValue {
    pub mu: f64,
    /// `∫ |dν|^4`.
    pub gradient_term: f64,
    /// `∫ ν^2`.
    pub potential_term: f64,
}

/// One-dimensional rule in `cos(theta)` for zonal boundary integrals.
#[derive(Debug, Clone)]
pub(crate) struct ZonalRule {
    x: Vec<f64>,
    w: Vec<f64>,
}

impl ZonalRule {
    pub(crate) fn new(order: usize) -> Result<Self> {
        if order < MIN_ORDER {
            return Err(Error::Resolution {
                what: "sphere quadrature order",
                got: order,
                min: MIN_ORDER,
            });
        }
        let (x, w) = gauss_legendre(order);
        Ok(Self { x, w })
    }

    fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        2.0 * PI * self.x.iter().zip(&self.w).map(|(&x, &w)| w * f(x)).sum::<f64>()
    }

    fn parts(&self, a: f64, b: f64) -> MuValue {
        let gradient_term = self.integrate(|x| {
            let u = a + b * x;
            let g2 = b * b * (1.0 - x * x) / (u * u);
            g2 * g2
        });
        let potential_term = self.integrate(|x| (a + b * x).ln().powi(2));
        MuValue {
            mu: gradient_term + potential_term,
            gradient_term,
            potential_term,
        }
    }

    /// `(∂μ/∂a, ∂μ/∂b)`.
    fn gradient(&self, a: f64, b: f64) -> [f64; 2] {
        let da = self.integrate(|x| {
            let u = a + b * x;
            let s = 1.0 - x * x;
            let nu = u.ln();
            -4.0 * b.powi(4) * s * s / u.powi(5) + 2.0 * nu / u
        });
        let db = self.integrate(|x| {
            let u = a + b * x;
            let s = 1.0 - x * x;
            let nu = u.ln();
            4.0 * b.powi(3) * s * s / u.powi(4) - 4.0 * b.powi(4) * s * s * x / u.powi(5)
                + 2.0 * nu * x / u
        });
        [da, db]
    }
}

/// `μ = ∫_{S^2} (|dν|^4 + ν^2)`, `ν = log u`, with `order` Gauss-Legendre
/// nodes in `cos(theta)`.
pub fn mu_functional(sol: &FlatAffineSolution, order: usize) -> Result<MuValue> {
    Ok(ZonalRule::new(order)?.parts(sol.a, sol.b))
}

/// `μ` of the potential `e^d u` as a function of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RescaleFold {
    /// `∫_{∂M} 1` (area of the unit sphere).
    pub quad_coeff: f64,
    /// `2 ∫_{∂M} ν`.
    pub lin_coeff: f64,
    /// Minimizer of `μ(d)`; equals minus the mean of `ν`.
    pub d0: f64,
    pub mu_min: f64,
    /// `μ(0)`.
    pub mu: f64,
}

impl RescaleFold {
    pub fn mu_at(&self, d: f64) -> f64 {
        self.mu + self.lin_coeff * d + self.quad_coeff * d * d
    }
}

pub fn rescale_fold(sol: &FlatAffineSolution) -> Result<RescaleFold> {
    rescale_fold_with(sol, Quadrature::default().sphere_order)
}

pub fn rescale_fold_with(sol: &FlatAffineSolution, order: usize) -> Result<RescaleFold> {
    let rule = ZonalRule::new(order)?;
    let base = rule.parts(sol.a, sol.b);
    let quad_coeff = rule.integrate(|_| 1.0);
    let lin_coeff = 2.0 * rule.integrate(|x| (sol.a + sol.b * x).ln());
    let d0 = -lin_coeff / (2.0 * quad_coeff);
    // |dν| is unchanged by u -> e^{d0} u; ν shifts by d0.
    let scale = d0.exp();
    let gradient_term = rule.parts(scale * sol.a, scale * sol.b).gradient_term;
    let potential_term = rule.integrate(|x| ((sol.a + sol.b * x).ln() + d0).powi(2));
    Ok(RescaleFold {
        quad_coeff,
        lin_coeff,
        d0,
        mu_min: gradient_term + potential_term,
        mu: base.mu,
    })
}

/// Second derivative of `μ` at `u = 1` along the affine variation
/// `u_t = 1 + t (a' + b' z')`, by a Richardson-extrapolated centered
/// difference.
pub fn mu_second_variation(a_prime: f64, b_prime: f64, axis: [f64; 3]) -> Result<f64> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if !(a_prime.is_finite() && b_prime.is_finite()) {
        return Err(Error::Input("direction must be finite".into()));
    }
    if a_prime == 0.0 && b_prime == 0.0 {
        return Err(Error::Input("direction is zero".into()));
    }
    if b_prime != 0.0 && !(norm > 0.0) {
        return Err(Error::Input("axis must be a nonzero vector".into()));
    }
    let rule = ZonalRule::new(Quadrature::default().sphere_order)?;
    let mu_t = |t: f64| {
        rule.integrate(|x| {
            let v = t * (a_prime + b_prime * x);
            let u = 1.0 + v;
            let g2 = (t * b_prime).powi(2) * (1.0 - x * x) / (u * u);
            g2 * g2 + v.ln_1p().powi(2)
        })
    };
    let second = |t: f64| (mu_t(t) + mu_t(-t) - 2.0 * mu_t(0.0)) / (t * t);
    let t = 1e-3 / (a_prime.abs() + b_prime.abs());
    Ok((4.0 * second(0.5 * t) - second(t)) / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelSetTopology {
    /// `μ0 < 0`.
    Empty,
    /// `μ0 = 0`: only `u ≡ 1`.
    Point,
    /// A closed loop in the `(a, b)` plane winding once around `(1, 0)`;
    /// with the axis sphere this is `S^2 × S^1`.
    SphereTimesCircle,
    /// The trace failed to close within tolerance.
    Open,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelSet {
    pub mu0: f64,
    /// Polyline in the `(a, b)` plane; for a closed loop the last point is
    /// the corrector's return to the first.
    pub points: Vec<[f64; 2]>,
    /// Distance between the last and the first point.
    pub gap: f64,
    /// Winding number around `(1, 0)`.
    pub winding: i32,
    pub topology: LevelSetTopology,
}

impl LevelSet {
    pub fn is_closed(&self) -> bool {
        self.topology == LevelSetTopology::SphereTimesCircle
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LevelSetOptions {
    pub step: f64,
    pub order: usize,
    pub newton_tol: f64,
    pub closure_tol: f64,
    pub positivity_margin: f64,
    pub max_points: usize,
}

impl Default for LevelSetOptions {
    fn default() -> Self {
        let q = Quadrature::default();
        let t = Tolerances::default();
        Self::from_config(&q, &t)
    }
}

impl LevelSetOptions {
    pub fn from_config(q: &Quadrature, t: &Tolerances) -> Self {
        Self {
            step: q.levelset_step,
            order: q.sphere_order,
            newton_tol: t.levelset_newton,
            closure_tol: t.levelset_closure,
            positivity_margin: t.positivity_margin,
            max_points: 1_000_000,
        }
    }
}

/// Traces `{(a, b) : μ(a, b) = μ0}` by pseudo-arclength continuation,
/// starting on the positive `a` axis and moving towards `b > 0`. Points with
/// `b < 0` stand for `(a, |b|)` with the opposite axis.
pub fn sigma_mu_levelset(mu0: f64, opts: &LevelSetOptions) -> Result<LevelSet> {
    if !mu0.is_finite() {
        return Err(Error::Input(format!("level {mu0} is not finite")));
    }
    if mu0 < 0.0 {
        return Ok(LevelSet {
            mu0,
            points: vec![],
            gap: 0.0,
            winding: 0,
            topology: LevelSetTopology::Empty,
        });
    }
    if mu0 == 0.0 {
        return Ok(LevelSet {
            mu0,
            points: vec![[1.0, 0.0]],
            gap: 0.0,
            winding: 0,
            topology: LevelSetTopology::Point,
        });
    }
    if !(opts.step > 0.0) {
        return Err(Error::Input("continuation step must be positive".into()));
    }
    let rule = ZonalRule::new(opts.order)?;
    let mu = |p: [f64; 2]| rule.parts(p[0], p[1]).mu;
    let admissible = |p: [f64; 2]| p[0] - p[1].abs() >= opts.positivity_margin;
    let tangent = |p: [f64; 2]| {
        let g = rule.gradient(p[0], p[1]);
        let n = g[0].hypot(g[1]);
        [-g[1] / n, g[0] / n]
    };
    // Newton on (μ(q) - μ0, t·(q - anchor) - s).
    let correct = |mut q: [f64; 2], t: [f64; 2], anchor: [f64; 2], s: f64| -> Result<[f64; 2]> {
        for _ in 0..50 {
            if !admissible(q) {
                return Err(Error::Numerical(format!(
                    "level set leaves the admissible region a > |b| near {q:?}"
                )));
            }
            let r0 = mu(q) - mu0;
            let r1 = t[0] * (q[0] - anchor[0]) + t[1] * (q[1] - anchor[1]) - s;
            let g = rule.gradient(q[0], q[1]);
            let det = g[0] * t[1] - g[1] * t[0];
            let dq = [(r0 * t[1] - g[1] * r1) / det, (g[0] * r1 - t[0] * r0) / det];
            q = [q[0] - dq[0], q[1] - dq[1]];
            if dq[0].hypot(dq[1]) <= opts.newton_tol && (mu(q) - mu0).abs() <= opts.newton_tol * mu0.max(1.0) {
                return Ok(q);
            }
        }
        Err(Error::Numerical(format!(
            "level-set corrector did not converge near {q:?}"
        )))
    };

    let a_start = (mu0 / (4.0 * PI)).sqrt().exp();
    let start = correct([a_start, 0.0], [0.0, 1.0], [a_start, 0.0], 0.0)?;
    // Keep several steps per loop even for tiny levels.
    let semi_axis = (mu0 / (4.0 * PI)).sqrt();
    let s = opts.step.min(semi_axis / 8.0);

    let mut points = vec![start];
    let mut travelled = 0.0;
    let mut p = start;
    let mut gap = f64::INFINITY;
    while points.len() < opts.max_points {
        let t = tangent(p);
        let guess = [p[0] + s * t[0], p[1] + s * t[1]];
        let q = correct(guess, t, p, s)?;
        travelled += s;
        let to_start = (q[0] - start[0]).hypot(q[1] - start[1]);
        if travelled > 4.0 * s && to_start < 1.5 * s {
            // Land on the start's normal line; the unique nearby solution is
            // the start itself.
            let ts = tangent(start);
            let end = correct(q, ts, start, 0.0)?;
            gap = (end[0] - start[0]).hypot(end[1] - start[1]);
            points.push(end);
            break;
        }
        points.push(q);
        p = q;
    }
    let winding = winding_number(&points, [1.0, 0.0]);
    let topology = if gap <= opts.closure_tol && winding.abs() == 1 {
        LevelSetTopology::SphereTimesCircle
    } else {
        LevelSetTopology::Open
    };
    Ok(LevelSet {
        mu0,
        points,
        gap,
        winding,
        topology,
    })
}

fn winding_number(points: &[[f64; 2]], centre: [f64; 2]) -> i32 {
    let angle = |p: &[f64; 2]| (p[1] - centre[1]).atan2(p[0] - centre[0]);
    let mut total = 0.0;
    for w in points.windows(2) {
        let mut d = angle(&w[1]) - angle(&w[0]);
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        total += d;
    }
    (total / (2.0 * PI)).round() as i32
}

/// `μ(a, b)` with the default quadrature order.
pub fn mu_of(a: f64, b: f64) -> Result<f64> {
    let sol = FlatAffineSolution::new(a, b, [0.0, 0.0, 1.0])?;
    Ok(mu_functional(&sol, Quadrature::default().sphere_order)?.mu)
}
