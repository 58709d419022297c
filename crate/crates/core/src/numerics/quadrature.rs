//! Gauss-Legendre rules and high-order integration of sampled radial profiles.

use super::grid::{lagrange, UniformGrid};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1], nodes
/// in increasing order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, Newton on P_n, then a last correction and
        // the weight from a double-double recurrence. Plain recurrences leave
        // relative weight errors near n eps, which the harmonic transforms
        // amplify by the degree.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (p, d) = legendre_dd(n, x);
        x -= p / d;
        let (_, d) = legendre_dd(n, x);
        let w = 2.0 / ((1.0 - x) * (1.0 + x) * d * d);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    // (1 - x)(1 + x) rather than 1 - x², which cancels near the endpoints.
    let dp = n as f64 * (p0 - x * p1) / ((1.0 - x) * (1.0 + x));
    (p1, dp)
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn add(self, o: Dd) -> Dd {
        let s = self.0 + o.0;
        let bb = s - self.0;
        let e = (self.0 - (s - bb)) + (o.0 - bb) + self.1 + o.1;
        let hi = s + e;
        Dd(hi, e - (hi - s))
    }

    fn scale(self, c: f64) -> Dd {
        let p = self.0 * c;
        let e = self.0.mul_add(c, -p) + self.1 * c;
        let hi = p + e;
        Dd(hi, e - (hi - p))
    }

    fn div(self, c: f64) -> Dd {
        let q = self.0 / c;
        let r = Dd(self.0, self.1).add(Dd(q, 0.0).scale(-c));
        let hi = q + r.0 / c;
        Dd(hi, (q - hi) + r.0 / c)
    }
}

/// `P_n(x)` and `P_n'(x)` with the recurrence carried in double-double.
fn legendre_dd(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p0 = Dd(1.0, 0.0);
    let mut p1 = Dd(x, 0.0);
    for k in 2..=n {
        let a = p1.scale(x).scale((2 * k - 1) as f64);
        let b = p0.scale(-((k - 1) as f64));
        let p2 = a.add(b).div(k as f64);
        p0 = p1;
        p1 = p2;
    }
    let num = p0.add(p1.scale(-x)).scale(n as f64);
    let one_minus = Dd(1.0, 0.0).add(Dd(-x, 0.0)).scale(1.0 + x);
    (p1.0 + p1.1, (num.0 + num.1) / (one_minus.0 + one_minus.1))
}

/// Integral over each grid panel of the local six-point interpolant,
/// evaluated with three-point Gauss-Legendre (exact for the quintic).
pub fn panel_integrals(grid: &UniformGrid, values: &[f64]) -> Vec<f64> {
    assert_eq!(values.len(), grid.len);
    let (gx, gw) = gauss_legendre(3);
    let n = grid.len;
    let stencil: Vec<f64> = (0..6).map(|j| j as f64).collect();
    (0..n - 1)
        .map(|i| {
            let base = (i as isize - 2).clamp(0, n as isize - 6) as usize;
            let local = &values[base..base + 6];
            let offset = (i - base) as f64;
            let sum: f64 = gx
                .iter()
                .zip(&gw)
                .map(|(&x, &w)| w * lagrange(&stencil, local, offset + 0.5 * (x + 1.0)))
                .sum();
            0.5 * grid.step * sum
        })
        .collect()
}

/// Integral of sampled values over the whole grid.
pub fn radial_integral(grid: &UniformGrid, values: &[f64]) -> f64 {
    panel_integrals(grid, values).iter().sum()
}

/// Integral from each node to the last node.
pub fn integral_to_end(grid: &UniformGrid, values: &[f64]) -> Vec<f64> {
    let panels = panel_integrals(grid, values);
    let mut out = vec![0.0; grid.len];
    for i in (0..grid.len - 1).rev() {
        out[i] = out[i + 1] + panels[i];
    }
    out
}
