//! Fourth-order finite differences on a uniform grid.

/// First derivative of sampled values; central stencils in the interior and
/// one-sided fourth-order stencils at the two nodes nearest each end.
pub fn derivative(values: &[f64], step: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 5, "fourth-order stencils need at least five samples");
    let f = values;
    let c = 1.0 / (12.0 * step);
    let mut d = vec![0.0; n];
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for i in 2..n - 2 {
        d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    }
    let m = n - 1;
    d[m - 1] = c * (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]);
    d[m] = c * (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quartics() {
        let h = 0.05;
        let x: Vec<f64> = (0..30).map(|i| 0.3 + i as f64 * h).collect();
        let f: Vec<f64> = x.iter().map(|&x| 2.0 - x + 3.0 * x.powi(4)).collect();
        let d = derivative(&f, h);
        for (xi, di) in x.iter().zip(&d) {
            assert!((di - (-1.0 + 12.0 * xi.powi(3))).abs() < 1e-10);
        }
    }

    #[test]
    fn converges_at_fourth_order() {
        let err = |n: usize| {
            let h = 1.0 / (n - 1) as f64;
            let f: Vec<f64> = (0..n).map(|i| (3.0 * i as f64 * h).sin()).collect();
            derivative(&f, h)
                .iter()
                .enumerate()
                .map(|(i, d)| (d - 3.0 * (3.0 * i as f64 * h).cos()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(65) / err(129);
        assert!(ratio > 14.0, "ratio {ratio}");
    }
}
