//! Dormand-Prince 5(4) with adaptive step control.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Difference between the fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Default)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            max_steps: 200_000,
        }
    }

    /// Integrates `y' = rhs(x, y)` from `(x0, y0)` and returns the state at
    /// every abscissa of `outputs` (increasing, all `> x0`). The right-hand
    /// side may refuse a state by returning `Err(reason)`; integration then
    /// stops with [`Error::Integration`].
    pub fn solve<const N: usize, F>(
        &self,
        mut rhs: F,
        x0: f64,
        y0: [f64; N],
        outputs: &[f64],
    ) -> Result<(Vec<[f64; N]>, OdeStats)>
    where
        F: FnMut(f64, &[f64; N]) -> std::result::Result<[f64; N], String>,
    {
        let mut stats = OdeStats::default();
        let mut out = Vec::with_capacity(outputs.len());
        let mut x = x0;
        let mut y = y0;
        let wrap = |x: f64, reason: String| Error::Integration { r: x, reason };
        let mut k0 = rhs(x, &y).map_err(|e| wrap(x, e))?;
        let span = outputs.last().copied().unwrap_or(x0) - x0;
        let mut h = (1e-3 * span).max(1e-14);

        for &target in outputs {
            if target < x {
                return Err(Error::Input(format!(
                    "output abscissae must increase from {x0}, got {target}"
                )));
            }
            while x < target {
                if stats.accepted + stats.rejected >= self.max_steps {
                    return Err(wrap(x, "step budget exhausted".into()));
                }
                let last = x + h >= target;
                let step = if last { target - x } else { h };
                let mut k = [[0.0; N]; 7];
                k[0] = k0;
                let mut failed = None;
                for s in 1..7 {
                    let mut ys = y;
                    for (j, kj) in k.iter().enumerate().take(s) {
                        let a = A[s][j];
                        if a != 0.0 {
                            for i in 0..N {
                                ys[i] += step * a * kj[i];
                            }
                        }
                    }
                    match rhs(x + C[s] * step, &ys) {
                        Ok(v) => k[s] = v,
                        Err(e) => {
                            failed = Some(e);
                            break;
                        }
                    }
                }
                if let Some(reason) = failed {
                    // A stage left the admissible region; retry smaller
                    // before giving up.
                    stats.rejected += 1;
                    h = 0.25 * step;
                    if h < 1e-14 * x.abs().max(1.0) {
                        return Err(wrap(x, reason));
                    }
                    continue;
                }
                let mut y_new = y;
                for i in 0..N {
                    let mut acc = 0.0;
                    for s in 0..6 {
                        acc += A[6][s] * k[s][i];
                    }
                    y_new[i] += step * acc;
                }
                let mut err = 0.0;
                for i in 0..N {
                    let mut e = 0.0;
                    for s in 0..7 {
                        e += E[s] * k[s][i];
                    }
                    let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                    err += (step * e / scale).powi(2);
                }
                let err = (err / N as f64).sqrt();
                if err <= 1.0 {
                    stats.accepted += 1;
                    x = if last { target } else { x + step };
                    y = y_new;
                    k0 = k[6];
                    let grow = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    if !last {
                        h = step * grow;
                    } else {
                        h = h.max(step * grow.min(1.0));
                    }
                } else {
                    stats.rejected += 1;
                    h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                }
            }
            out.push(y);
        }
        Ok((out, stats))
    }
}
