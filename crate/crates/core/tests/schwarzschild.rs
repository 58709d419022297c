use std::f64::consts::PI;

use staticvac_core::flat_ball::{mu_functional, FlatAffineSolution};
use staticvac_core::schwarzschild::{
    boundary_potential, find_fold, invert_branch, mean_curvature_of_mass, preimage_count, sch_boundary_map,
    sch_solution, shi_tam_check, surface_gravity, SchwarzschildParams,
};

fn sweep(n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |i| 0.5 * i as f64 / (n + 1) as f64)
}

#[test]
fn boundary_map_closed_forms() {
    for m in sweep(1000) {
        let d = sch_boundary_map(m).unwrap();
        assert!((d.h - 2.0 * (1.0 - 2.0 * m).sqrt()).abs() <= 1e-12);
        assert!((d.u_boundary - 4.0 * m * (1.0 - 2.0 * m).sqrt()).abs() <= 1e-12);
        assert_eq!(d.gamma_radius, 1.0);
        assert!((d.mu - 4.0 * PI * d.u_boundary.ln().powi(2)).abs() <= 1e-12 * d.mu.max(1.0));
    }
}

#[test]
fn mu_agrees_with_flat_quadrature() {
    for m in [0.1, 0.3, 0.45] {
        let d = sch_boundary_map(m).unwrap();
        let constant = FlatAffineSolution::new(d.u_boundary, 0.0, [0.0, 0.0, 1.0]).unwrap();
        assert!((mu_functional(&constant, 64).unwrap().mu - d.mu).abs() <= 1e-12 * d.mu);
    }
}

#[test]
fn monotonicity() {
    let m_star = find_fold().m_star;
    let ms: Vec<f64> = sweep(1000).collect();
    for w in ms.windows(2) {
        let (u0, u1) = (boundary_potential(w[0]), boundary_potential(w[1]));
        if w[1] < m_star {
            assert!(u1 > u0);
        } else if w[0] > m_star {
            assert!(u1 < u0);
        }
        assert!(mean_curvature_of_mass(w[1]) < mean_curvature_of_mass(w[0]));
    }
}

#[test]
fn inversion_is_identity_on_each_branch() {
    for m in sweep(200) {
        if (m - 1.0 / 3.0).abs() < 1e-3 {
            continue;
        }
        let b = invert_branch(boundary_potential(m)).unwrap();
        let root = if m < 1.0 / 3.0 { b.m_minus() } else { b.m_plus() };
        assert!((root.unwrap() - m).abs() <= 1e-10, "m = {m}");
    }
}

#[test]
fn preimages() {
    assert_eq!(preimage_count(0.5).unwrap(), 2);
    assert_eq!(preimage_count(find_fold().u_max).unwrap(), 1);
    assert_eq!(preimage_count(0.8).unwrap(), 0);
}

#[test]
fn shi_tam_and_surface_gravity() {
    for m in sweep(100) {
        assert!(shi_tam_check(m).unwrap() > 0.0);
        assert_eq!(surface_gravity(&SchwarzschildParams::new(m).unwrap()), 1.0);
    }
    assert!((shi_tam_check(0.1).unwrap() - 2.654).abs() < 1e-3);
    assert!(shi_tam_check(1e-12).unwrap() < 1e-10);
}

#[test]
fn flat_limit() {
    let small = sch_solution(&SchwarzschildParams::with(1e-9, 1.0, 1.0).unwrap(), 64).unwrap();
    let r = small.radii();
    for (i, phi) in small.metric.phi().iter().enumerate() {
        if r[i] > 0.1 {
            assert!((phi - 1.0).abs() < 1e-7);
        }
    }
}
