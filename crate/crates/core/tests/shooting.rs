use staticvac_core::geometry::static_residual;
use staticvac_core::schwarzschild::{invert_branch, SchwarzschildParams};
use staticvac_core::shooting::{
    boundary_map_of_shot, horizon_launch, integrate, integrate_with, launch_offset, shoot, ShootOptions,
};

fn masses(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.05 + 0.4 * (i as f64 + 0.5) / n as f64).collect()
}

#[test]
fn launch_error_is_high_order() {
    let p = SchwarzschildParams::new(0.2).unwrap();
    let err = |eps: f64| {
        let s = horizon_launch(0.2, eps).unwrap().state;
        (s.u - p.u(s.r)).abs() / p.u(s.r)
    };
    let (e1, e2) = (err(1e-4), err(5e-5));
    assert!(e1 <= 1e-10 && e2 <= 1e-10);
    assert!(e1 / e2 >= 4.0, "halving ratio {}", e1 / e2);
}

#[test]
fn horizon_is_totally_geodesic_in_the_limit() {
    // The principal curvature sqrt(V)/r vanishes like sqrt(ε).
    let k = |eps: f64| horizon_launch(0.2, eps).unwrap().state.principal_curvature();
    let (k1, k2) = (k(1e-4), k(1e-6));
    assert!(k1 < 1e-1 && k2 < 1e-2);
    assert!((k1 / k2 - 10.0).abs() < 1e-2);
    let s = horizon_launch(0.2, 1e-6).unwrap().state;
    assert!((s.normal_derivative() - 1.0).abs() < 1e-5);
}

#[test]
fn shots_match_schwarzschild() {
    for m in [0.2, 0.45] {
        let rep = shoot(m, 1.0).unwrap();
        assert!(rep.deviation <= 1e-8, "m = {m}: {}", rep.deviation);
        assert!(rep.mass_drift <= 1e-8 && rep.theta_residual <= 1e-8);
        assert!((rep.matched.c - 4.0 * m).abs() <= 1e-9);
    }
    let b = boundary_map_of_shot(&shoot(0.45, 1.0).unwrap());
    assert!((b.u_boundary - 1.8 * 0.1f64.sqrt()).abs() <= 1e-8);
}

#[test]
fn perturbed_launch_rescales_the_fiber() {
    let l = horizon_launch(0.2, 1e-4).unwrap().state.rescale_potential(1.01);
    let rep = integrate(l, 1.0).unwrap();
    assert!((rep.matched.c - 0.808).abs() <= 1e-9);
    assert!(rep.mass_drift <= 1e-8);
    assert!(rep.trajectory.iter().all(|s| (s.mass_fn - 0.2).abs() <= 1e-8));
    assert!(rep.deviation <= 1e-8);
}

#[test]
fn boundary_data_of_shots() {
    let third = boundary_map_of_shot(&shoot(1.0 / 3.0, 1.0).unwrap());
    assert!((third.h - 2.0 / 3f64.sqrt()).abs() <= 1e-8);
    let light = boundary_map_of_shot(&shoot(1e-4, 1.0).unwrap());
    assert!((light.h - 2.0).abs() < 1e-3);
    for m in masses(20) {
        let b = boundary_map_of_shot(&shoot(m, 1.0).unwrap());
        let roots = invert_branch(b.u_boundary).unwrap().branches;
        let nearest = roots.iter().map(|r| (r - m).abs()).fold(f64::INFINITY, f64::min);
        assert!(nearest <= 1e-8, "m = {m}: {roots:?}");
    }
}

#[test]
fn potential_over_lapse_is_constant() {
    for m in masses(5) {
        let rep = shoot(m, 1.0).unwrap();
        let c0 = rep.matched.c;
        for s in &rep.trajectory {
            assert!((s.u / s.lapse_squared().sqrt() - c0).abs() <= 1e-8);
        }
    }
}

#[test]
fn deviation_tracks_the_tolerance() {
    let l = horizon_launch(0.3, launch_offset(0.3, 1e-10)).unwrap().state;
    let dev = |rtol: f64| {
        let opts = ShootOptions { rtol, atol: rtol * 1e-2, ..ShootOptions::default() };
        integrate_with(l, 1.0, &opts).unwrap().deviation
    };
    let (loose, tight) = (dev(1e-6), dev(1e-8));
    assert!(tight < loose / 10.0);
    assert!(loose <= 1e-4);
}

#[test]
fn shot_solution_satisfies_the_equations() {
    let sol = shoot(0.2, 1.0).unwrap().to_solution().unwrap();
    let r = static_residual(&sol).unwrap();
    assert!(r.max() <= 1e-6);
}
