//! Subcommands. Each one calls pure library routines, collects the invariant
//! checks it can state, and returns a report; files are written last.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Result};
use clap::{Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use staticvac_core::flat_ball::{mu_of, rescale_fold_with};
use staticvac_core::geometry::{constraint_residuals, VariationReport};
use staticvac_core::modes::real_harmonic;
use staticvac_core::sphere::SpherePoint;
use staticvac_core::schwarzschild::{
    boundary_potential, boundary_potential_derivative, invert_branch_with, mean_curvature_of_mass, sch_solution_on,
};
use staticvac_core::shooting::{horizon_launch_with, integrate_with, launch_offset, ShootOptions};
use staticvac_core::{
    apply_dtn, find_fold, kernel_dimension, laplace_eigenvalue, linearized_boundary_symbol, mu_functional,
    nullity_ledger, sch_boundary_map, sch_solution, shi_tam_check, sigma_mu_levelset, static_residual,
    verify_first_variation, BasePoint, FlatAffineSolution, InnerEnd, LevelSetOptions, LevelSetTopology,
    RadialDeformation, RadialStaticSolution, SchwarzschildParams, SphereField, SphereTransform,
};

use crate::config::RunConfig;
use crate::report::{Check, Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Exterior Schwarzschild from the horizon to r = 1, c = 4m.
    Schwarzschild,
    /// Schwarzschild obtained by shooting out from the horizon.
    Shot,
    /// Flat unit ball with u = a + b <axis, x>.
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariationBase {
    /// Off-shell pair: flat metric, u = 1 + r^2/10.
    Quadratic,
    /// Schwarzschild restricted to [r-in, 1].
    Schwarzschild,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Interior static residual and boundary Gauss/Codazzi residuals of one
    /// solution.
    Verify {
        #[arg(long, value_enum, default_value_t = Family::Schwarzschild)]
        family: Family,
        /// Mass (schwarzschild and shot families).
        #[arg(long, default_value_t = 0.2)]
        m: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 0.0, 1.0])]
        axis: Vec<f64>,
    },
    /// Boundary map m -> (H, u, mu) of the Schwarzschild family at R = 1.
    ///
    /// CSV columns: m, H, u, mu, shi_tam_margin.
    SchwarzschildSweep {
        #[arg(long, default_value_t = 0.005)]
        m_min: f64,
        #[arg(long, default_value_t = 0.495)]
        m_max: f64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Maximum of the boundary potential u(m) (the photon-sphere fold).
    Fold,
    /// Masses whose boundary potential equals a target.
    Branch {
        /// Target boundary potential.
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
    },
    /// mu functional of a flat affine solution and its rescaling parabola.
    ///
    /// CSV columns: d, mu (mu of e^d u over [d0 - 1, d0 + 1]).
    FlatMu {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 0.0, 1.0])]
        axis: Vec<f64>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Level set mu = mu0 among flat affine solutions, traced in the (a, b)
    /// plane.
    ///
    /// CSV columns: a, b (a closed loop repeats its first row at the end).
    Levelset {
        #[arg(long, allow_negative_numbers = true)]
        mu0: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Kernel of the linearized boundary map at the flat ball and the
    /// Dirichlet-to-Neumann spectrum.
    ///
    /// CSV columns: l, laplace_eigenvalue, boundary_symbol, multiplicity.
    Modes {
        /// Band limit; `quadrature.lmax` from the config by default.
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Launch at a regular horizon and integrate the static equations out.
    ///
    /// CSV columns: r, mass_fn, u, du_dr, lapse_squared.
    Shoot {
        #[arg(long)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        r_out: f64,
        /// Horizon offset; the largest one within the series budget by
        /// default.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Shi-Tam margin (integral of H0 minus integral of H) along the
    /// Schwarzschild family.
    ///
    /// CSV columns: m, shi_tam_margin, margin_over_8pi_m.
    ShiTam {
        #[arg(long, default_value_t = 0.005)]
        m_min: f64,
        #[arg(long, default_value_t = 0.495)]
        m_max: f64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// First-variation identity of the action along the radial deformation
    /// h = f-amp r^2 g, u' = w-amp cos r.
    Variation {
        #[arg(long, value_enum, default_value_t = VariationBase::Quadratic)]
        base: VariationBase,
        #[arg(long, default_value_t = 0.2)]
        m: f64,
        #[arg(long, default_value_t = 0.5)]
        r_in: f64,
        #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
        f_amp: f64,
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        w_amp: f64,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        #[arg(long, default_value_t = 1e-6)]
        deficit_tol: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::SchwarzschildSweep { .. } => "schwarzschild-sweep",
            Command::Fold => "fold",
            Command::Branch { .. } => "branch",
            Command::FlatMu { .. } => "flat-mu",
            Command::Levelset { .. } => "levelset",
            Command::Modes { .. } => "modes",
            Command::Shoot { .. } => "shoot",
            Command::ShiTam { .. } => "shi-tam",
            Command::Variation { .. } => "variation",
        }
    }

    pub fn run(&self, cfg: &RunConfig) -> Result<Report> {
        let name = self.name();
        match self {
            Command::Verify { family, m, a, b, axis } => verify(cfg, *family, *m, *a, *b, axis),
            Command::SchwarzschildSweep { m_min, m_max, count, csv } => {
                sweep(name, *m_min, *m_max, *count, csv.as_ref(), cfg)
            }
            Command::Fold => fold(),
            Command::Branch { u } => branch(cfg, *u),
            Command::FlatMu { a, b, axis, samples, csv } => flat_mu(cfg, *a, *b, axis, *samples, csv.as_ref()),
            Command::Levelset { mu0, csv } => levelset(cfg, *mu0, csv.as_ref()),
            Command::Modes { lmax, csv } => modes(cfg, lmax.unwrap_or(cfg.quadrature.lmax), csv.as_ref()),
            Command::Shoot { m, r_out, eps, csv } => shoot(cfg, *m, *r_out, *eps, csv.as_ref()),
            Command::ShiTam { m_min, m_max, count, csv } => shi_tam(name, *m_min, *m_max, *count, csv.as_ref()),
            Command::Variation { base, m, r_in, f_amp, w_amp, step, deficit_tol } => {
                variation(cfg, *base, *m, *r_in, *f_amp, *w_amp, *step, *deficit_tol)
            }
        }
    }
}

fn axis3(v: &[f64]) -> Result<[f64; 3]> {
    match v {
        &[x, y, z] => Ok([x, y, z]),
        _ => bail!(staticvac_core::Error::Input(format!("axis needs 3 components, got {}", v.len()))),
    }
}

fn sup<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `count` equispaced masses in `[lo, hi]`.
fn mass_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 || !(lo <= hi) || (count > 1 && lo == hi) {
        bail!(staticvac_core::Error::Input(format!(
            "empty mass range [{lo}, {hi}] with {count} points"
        )));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect())
}

#[derive(Serialize)]
struct Residuals {
    radius: f64,
    gauss: f64,
    codazzi: f64,
}

fn verify(cfg: &RunConfig, family: Family, m: f64, a: f64, b: f64, axis: &[f64]) -> Result<Report> {
    let tol = &cfg.tolerances;
    let n = cfg.quadrature.radial_samples;
    let mut checks = Vec::new();
    let mut boundary = Vec::new();
    let (interior, threshold) = match family {
        Family::Schwarzschild | Family::Shot => {
            let p = SchwarzschildParams::new(m)?;
            let (sol, threshold) = if family == Family::Shot {
                let launch = horizon_launch_with(m, launch_offset(m, tol.launch_series), tol.launch_series)?;
                let opts = ShootOptions::from_config(tol, &cfg.quadrature);
                let shot = integrate_with(launch.state, p.r_out, &opts)?;
                checks.push(Check::at_most("deviation_from_closed_form", shot.deviation, tol.shot_residual));
                (shot.to_solution()?, tol.shot_residual)
            } else {
                (sch_solution(&p, n)?, tol.exact_residual)
            };
            for r in [0.5 * (2.0 * m + 1.0), 1.0] {
                let rep = constraint_residuals(&sol, r)?;
                boundary.push(Residuals {
                    radius: r,
                    gauss: rep.gauss_max(),
                    codazzi: rep.codazzi_max(),
                });
            }
            (static_residual(&sol)?, threshold)
        }
        Family::Flat => {
            let s = FlatAffineSolution::new(a, b, axis3(axis)?)?;
            for r in [0.5, 1.0] {
                let rep = constraint_residuals(&s, r)?;
                boundary.push(Residuals {
                    radius: r,
                    gauss: rep.gauss_max(),
                    codazzi: rep.codazzi_max(),
                });
            }
            (static_residual(&s)?, tol.exact_residual)
        }
    };
    checks.push(Check::at_most("static_residual", interior.max(), threshold));
    checks.push(Check::at_most("gauss_residual", sup(boundary.iter().map(|r| r.gauss)), threshold));
    checks.push(Check::at_most("codazzi_residual", sup(boundary.iter().map(|r| r.codazzi)), threshold));
    let result = json!({
        "family": family,
        "static_residual": interior,
        "boundary": boundary,
    });
    Report::new("verify", result, checks)
}

fn sweep(name: &str, lo: f64, hi: f64, count: usize, csv: Option<&PathBuf>, cfg: &RunConfig) -> Result<Report> {
    let masses = mass_grid(lo, hi, count)?;
    let rows = masses
        .par_iter()
        .map(|&m| {
            let d = sch_boundary_map(m)?;
            Ok(vec![m, d.h, d.u_boundary, d.mu, shi_tam_check(m)?])
        })
        .collect::<staticvac_core::Result<Vec<_>>>()?;
    let h_err = sup(rows.iter().map(|r| r[1] - mean_curvature_of_mass(r[0])));
    let u_err = sup(rows.iter().map(|r| r[2] - 4.0 * r[0] * (1.0 - 2.0 * r[0]).sqrt()));
    let u_max = 4.0 / (3.0 * 3f64.sqrt());
    let over = rows.iter().map(|r| r[2] - u_max).fold(f64::NEG_INFINITY, f64::max);
    let min_margin = rows.iter().map(|r| r[4]).fold(f64::INFINITY, f64::min);
    let checks = vec![
        Check::at_most("mean_curvature_error", h_err, 1e-12),
        Check::at_most("potential_error", u_err, 1e-12),
        Check::at_most("potential_above_fold", over, cfg.tolerances.fold_window),
        Check::above("min_shi_tam_margin", min_margin, 0.0),
    ];
    let table = Table {
        columns: vec!["m", "H", "u", "mu", "shi_tam_margin"],
        rows,
    };
    let result = match csv {
        Some(path) => {
            table.write(path)?;
            json!({ "count": table.rows.len(), "csv": path })
        }
        None => json!({ "count": table.rows.len(), "columns": table.columns, "rows": table.rows }),
    };
    Report::new(name, result, checks)
}

fn fold() -> Result<Report> {
    let f = find_fold();
    let slope = boundary_potential_derivative(f.m_star);
    let h = 1e-4;
    let is_max = boundary_potential(f.m_star - h) < f.u_max && boundary_potential(f.m_star + h) < f.u_max;
    let checks = vec![
        Check::at_most("du_dm_at_fold", slope.abs(), 1e-9),
        Check::holds("local_maximum", is_max),
    ];
    Report::new("fold", f, checks)
}

fn branch(cfg: &RunConfig, target: f64) -> Result<Report> {
    let set = invert_branch_with(target, &cfg.tolerances)?;
    let residual = sup(set.branches.iter().map(|&m| boundary_potential(m) - target));
    let threshold = if set.len() == 1 { cfg.tolerances.fold_window } else { 1e-10 };
    let mut checks = vec![Check::at_most("potential_residual", residual, threshold)];
    if let (Some(lo), Some(hi)) = (set.m_minus(), set.m_plus()) {
        checks.push(Check::holds("branches_straddle_fold", lo < 1.0 / 3.0 && 1.0 / 3.0 < hi));
    }
    Report::new("branch", set, checks)
}

fn flat_mu(cfg: &RunConfig, a: f64, b: f64, axis: &[f64], samples: usize, csv: Option<&PathBuf>) -> Result<Report> {
    let order = cfg.quadrature.sphere_order;
    let sol = FlatAffineSolution::new(a, b, axis3(axis)?)?;
    let value = mu_functional(&sol, order)?;
    let fold = rescale_fold_with(&sol, order)?;
    let mut checks = vec![Check::above("mu_nonnegative", value.mu, -f64::EPSILON)];
    if b == 0.0 {
        checks.push(Check::at_most("constant_rescales_to_zero", fold.mu_min.abs(), 1e-12));
    } else {
        checks.push(Check::above("mu_at_d0_positive", fold.mu_min, 0.0));
    }
    let result = json!({ "a": a, "b": b, "axis": axis, "mu": value, "rescale": fold });
    if let Some(path) = csv {
        if samples < 2 {
            bail!(staticvac_core::Error::Input("rescale curve needs at least 2 samples".into()));
        }
        let rows = (0..samples)
            .map(|i| {
                let d = fold.d0 - 1.0 + 2.0 * i as f64 / (samples - 1) as f64;
                vec![d, fold.mu_at(d)]
            })
            .collect();
        Table { columns: vec!["d", "mu"], rows }.write(path)?;
    }
    Report::new("flat-mu", result, checks)
}

fn levelset(cfg: &RunConfig, mu0: f64, csv: Option<&PathBuf>) -> Result<Report> {
    let opts = LevelSetOptions::from_config(&cfg.quadrature, &cfg.tolerances);
    let set = sigma_mu_levelset(mu0, &opts)?;
    let mut checks = Vec::new();
    if mu0 > 0.0 {
        checks.push(Check::holds("closed", set.is_closed()));
        checks.push(Check::at_most("closure_gap", set.gap, cfg.tolerances.levelset_closure));
        checks.push(Check::holds("winds_once", set.winding.abs() == 1));
        let off = set
            .points
            .iter()
            .map(|p| mu_of(p[0], p[1]).map(|v| v - mu0))
            .collect::<staticvac_core::Result<Vec<_>>>()?;
        checks.push(Check::at_most("level_residual", sup(off), 1e-8));
    } else if mu0 == 0.0 {
        checks.push(Check::holds("degenerates_to_point", set.topology == LevelSetTopology::Point));
    } else {
        checks.push(Check::holds("empty", set.topology == LevelSetTopology::Empty));
    }
    let table = Table {
        columns: vec!["a", "b"],
        rows: set.points.iter().map(|p| p.to_vec()).collect(),
    };
    let mut result = json!({
        "mu0": set.mu0,
        "topology": set.topology,
        "winding": set.winding,
        "gap": set.gap,
        "points": set.points.len(),
    });
    match csv {
        Some(path) => table.write(path)?,
        None => result["polyline"] = json!(set.points),
    }
    Report::new("levelset", result, checks)
}

/// Largest `|DtN(Y_lk) - l Y_lk|` coefficient error for `l <= lmax`.
fn dtn_error(transform: &Arc<SphereTransform>, lmax: usize) -> f64 {
    let mut worst = 0.0f64;
    for l in 0..=lmax {
        for k in -(l as i64)..=(l as i64) {
            let f = SphereField::from_fn(transform, |p: &SpherePoint| real_harmonic(l, k, p.cos_theta, p.azimuth));
            let g = apply_dtn(&f);
            let err = g
                .coeffs()
                .iter()
                .zip(f.coeffs())
                .map(|(gc, fc)| (gc - l as f64 * fc).abs())
                .fold(0.0, f64::max);
            worst = worst.max(err);
        }
    }
    worst
}

fn modes(cfg: &RunConfig, lmax: usize, csv: Option<&PathBuf>) -> Result<Report> {
    let kernel = kernel_dimension(lmax)?;
    let q = &cfg.quadrature;
    // The transform must resolve every degree it is asked about.
    let dtn_lmax = lmax.min(16).min(q.sphere_order - 1).min((q.azimuth_points - 1) / 2);
    let transform = SphereTransform::new(dtn_lmax, q.sphere_order, q.azimuth_points)?;
    let dtn = dtn_error(&transform, dtn_lmax);
    let checks = vec![
        Check::holds("kernel_degrees_0_1", kernel.degrees() == [0, 1]),
        Check::holds("kernel_dimension_4", kernel.dimension == 4),
        Check::holds("rescale_reduced_3", kernel.rescale_reduced == 3),
        Check::at_most("dtn_eigenvalue_error", dtn, 1e-10),
    ];
    if let Some(path) = csv {
        let rows = (0..=lmax as i64)
            .map(|l| {
                Ok(vec![
                    l as f64,
                    laplace_eigenvalue(l)? as f64,
                    linearized_boundary_symbol(l)? as f64,
                    (2 * l + 1) as f64,
                ])
            })
            .collect::<staticvac_core::Result<Vec<_>>>()?;
        Table {
            columns: vec!["l", "laplace_eigenvalue", "boundary_symbol", "multiplicity"],
            rows,
        }
        .write(path)?;
    }
    let result = json!({
        "kernel": kernel,
        "dtn_checked_up_to": dtn_lmax,
        "dtn_max_error": dtn,
        "ledger": nullity_ledger(BasePoint::FlatBall)?,
    });
    Report::new("modes", result, checks)
}

fn shoot(cfg: &RunConfig, m: f64, r_out: f64, eps: Option<f64>, csv: Option<&PathBuf>) -> Result<Report> {
    let tol = &cfg.tolerances;
    let eps = eps.unwrap_or_else(|| launch_offset(m, tol.launch_series));
    let launch = horizon_launch_with(m, eps, tol.launch_series)?;
    let opts = ShootOptions::from_config(tol, &cfg.quadrature);
    let shot = integrate_with(launch.state, r_out, &opts)?;
    let interior = static_residual(&shot.to_solution()?)?;
    let checks = vec![
        Check::at_most("deviation_from_closed_form", shot.deviation, tol.shot_residual),
        Check::at_most("mass_drift", shot.mass_drift, tol.shot_residual),
        Check::at_most("theta_theta_residual", shot.theta_residual, tol.shot_residual),
        Check::at_most("static_residual", interior.max(), tol.shot_residual),
    ];
    if let Some(path) = csv {
        let rows = shot
            .trajectory
            .iter()
            .map(|s| vec![s.r, s.mass_fn, s.u, s.w, s.lapse_squared()])
            .collect();
        Table {
            columns: vec!["r", "mass_fn", "u", "du_dr", "lapse_squared"],
            rows,
        }
        .write(path)?;
    }
    let result = json!({
        "m": m,
        "launch_offset": eps,
        "series_error": launch.series_error,
        "matched": shot.matched,
        "boundary": shot.boundary,
        "deviation": shot.deviation,
        "mass_drift": shot.mass_drift,
        "theta_residual": shot.theta_residual,
        "static_residual": interior,
        "steps_accepted": shot.steps_accepted,
        "steps_rejected": shot.steps_rejected,
    });
    Report::new("shoot", result, checks)
}

fn shi_tam(name: &str, lo: f64, hi: f64, count: usize, csv: Option<&PathBuf>) -> Result<Report> {
    let masses = mass_grid(lo, hi, count)?;
    let rows = masses
        .par_iter()
        .map(|&m| {
            let margin = shi_tam_check(m)?;
            Ok(vec![m, margin, margin / (8.0 * PI * m)])
        })
        .collect::<staticvac_core::Result<Vec<_>>>()?;
    // Direct form 4π (H0 - H) away from the cancellation at small m.
    let direct = sup(rows
        .iter()
        .filter(|r| r[0] > 1e-2)
        .map(|r| (4.0 * PI * (2.0 - mean_curvature_of_mass(r[0])) - r[1]) / r[1]));
    let min_margin = rows.iter().map(|r| r[1]).fold(f64::INFINITY, f64::min);
    let increasing = rows.windows(2).all(|w| w[1][1] > w[0][1]);
    // margin / (8πm) = 2 / (1 + sqrt(1 - 2m)) -> 1, so the margin vanishes
    // linearly in m.
    let flat_limit = (rows[0][2] - 1.0).abs();
    let checks = vec![
        Check::above("min_margin", min_margin, 0.0),
        Check::holds("increasing_in_m", increasing),
        Check::at_most("direct_form_relative_error", direct, 1e-12),
        Check::at_most("flat_limit_slope_error", flat_limit, 2.0 * rows[0][0]),
    ];
    let table = Table {
        columns: vec!["m", "shi_tam_margin", "margin_over_8pi_m"],
        rows,
    };
    let result = match csv {
        Some(path) => {
            table.write(path)?;
            json!({ "count": table.rows.len(), "csv": path })
        }
        None => json!({ "count": table.rows.len(), "columns": table.columns, "rows": table.rows }),
    };
    Report::new(name, result, checks)
}

#[allow(clippy::too_many_arguments)]
fn variation(
    cfg: &RunConfig,
    base: VariationBase,
    m: f64,
    r_in: f64,
    f_amp: f64,
    w_amp: f64,
    step: f64,
    deficit_tol: f64,
) -> Result<Report> {
    let n = cfg.quadrature.radial_samples;
    let sol = match base {
        VariationBase::Quadratic => RadialStaticSolution::from_fns(
            r_in,
            1.0,
            n,
            |_| 1.0,
            |r| 1.0 + 0.1 * r * r,
            |r| 0.2 * r,
            InnerEnd::Boundary,
        )?,
        VariationBase::Schwarzschild => sch_solution_on(&SchwarzschildParams::new(m)?, r_in, n)?,
    };
    let dir = RadialDeformation::from_fns(&sol, |r| f_amp * r * r, |r| w_amp * r.cos());
    let rep = verify_first_variation(&sol, &dir, step)?;
    let ladder: Vec<VariationReport> = [100.0 * step, 10.0 * step, step]
        .iter()
        .map(|&t| verify_first_variation(&sol, &dir, t))
        .collect::<staticvac_core::Result<_>>()?;
    let d: Vec<f64> = ladder.iter().map(|r| r.d_action).collect();
    let observed_order = ((d[0] - d[1]) / (d[1] - d[2])).abs().log10();
    let checks = vec![Check::at_most("deficit", rep.deficit, deficit_tol)];
    let result = json!({
        "base": base,
        "report": rep,
        "step_ladder": ladder,
        "observed_order": if observed_order.is_finite() { json!(observed_order) } else { json!(null) },
    });
    Report::new("variation", result, checks)
}
