use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use staticvac_core::modes::{
    apply_dtn, coeff_index, kernel_dimension, linearized_boundary_symbol, real_harmonic, SphereField,
    SphereTransform,
};

fn random_field(tr: &std::sync::Arc<SphereTransform>, band: usize, seed: u64) -> SphereField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![0.0; tr.coeff_len()];
    for l in 0..=band {
        for k in -(l as i64)..=(l as i64) {
            c[coeff_index(l, k)] = rng.gen_range(-1.0..1.0);
        }
    }
    SphereField::from_coeffs(tr, c).unwrap()
}

#[test]
fn round_trip_at_default_band_limit() {
    let tr = SphereTransform::with_defaults();
    let f = random_field(&tr, 32, 1);
    let back = SphereField::from_samples(&tr, f.samples().to_vec()).unwrap();
    let err = f.coeffs().iter().zip(back.coeffs()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(err <= 1e-10, "{err:e}");
    let again = SphereField::from_coeffs(&tr, back.coeffs().to_vec()).unwrap();
    let err = f.samples().iter().zip(again.samples()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(err <= 1e-10, "{err:e}");
}

#[test]
fn dtn_on_constants_and_linear_functions() {
    let tr = SphereTransform::with_defaults();
    let one = SphereField::from_fn(&tr, |_| 1.0);
    let worst = apply_dtn(&one).samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(worst < 1e-12, "{worst:e}");
    let z = SphereField::from_fn(&tr, |p| p.unit[2]);
    let dz = apply_dtn(&z);
    assert!(z.samples().iter().zip(dz.samples()).all(|(a, b)| (a - b).abs() < 1e-12));
}

#[test]
fn dtn_matches_normal_derivative_of_extension() {
    let tr = SphereTransform::new(8, 16, 32).unwrap();
    let f = random_field(&tr, 8, 2);
    let d = apply_dtn(&f);
    let h = 1e-4;
    for (idx, p) in tr.quadrature().points().enumerate().step_by(37) {
        let at = |s: f64| f.harmonic_extension(p.unit.map(|x| s * x));
        let fd = (-at(1.0 + 2.0 * h) + 8.0 * at(1.0 + h) - 8.0 * at(1.0 - h) + at(1.0 - 2.0 * h)) / (12.0 * h);
        assert!((fd - d.samples()[idx]).abs() <= 1e-8, "{fd} vs {}", d.samples()[idx]);
    }
}

#[test]
fn dtn_is_positive_semidefinite() {
    let tr = SphereTransform::new(12, 16, 32).unwrap();
    for seed in 0..50 {
        let f = random_field(&tr, 12, 100 + seed);
        assert!(f.inner_product(&apply_dtn(&f)) >= 0.0);
    }
}

#[test]
fn dtn_eigenvalues() {
    let tr = SphereTransform::with_defaults();
    for l in 0..=16usize {
        for k in [-(l as i64), 0, l as i64] {
            let y = SphereField::from_fn(&tr, |p| real_harmonic(l, k, p.cos_theta, p.azimuth));
            let d = apply_dtn(&y);
            let err = y
                .samples()
                .iter()
                .zip(d.samples())
                .map(|(a, b)| (b - l as f64 * a).abs())
                .fold(0.0, f64::max);
            assert!(err <= 1e-10, "l = {l}, k = {k}: {err:e}");
        }
    }
}

#[test]
fn kernel_of_boundary_symbol() {
    let zeros: Vec<i64> = (0..=64).filter(|&l| linearized_boundary_symbol(l).unwrap() == 0).collect();
    assert_eq!(zeros, vec![0, 1]);
    for lmax in [2, 10, 64] {
        let k = kernel_dimension(lmax).unwrap();
        assert_eq!((k.dimension, k.rescale_reduced), (4, 3));
    }
}
