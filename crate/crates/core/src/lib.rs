//! Static vacuum solutions on bounded domains: exact Schwarzschild and flat
//! families, shot radial solutions, their boundary data, and the checks that
//! tie them together.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod flat_ball;
pub mod geometry;
pub mod modes;
pub mod numerics;
pub mod schwarzschild;
pub mod shooting;
pub mod sphere;

pub use config::{Quadrature, Tolerances};
pub use error::{Error, Result};
pub use flat_ball::{
    mu_functional, mu_second_variation, rescale_fold, sigma_mu_levelset, FlatAffineSolution,
    LevelSet, LevelSetOptions, LevelSetTopology, MuValue, RescaleFold,
};
pub use geometry::{
    compute_action, constraint_residuals, curvature_radial, interior_estimate_monitor,
    static_residual, verify_first_variation, ActionKind, ActionValue, ConstraintReport,
    CurvatureRecord, InnerEnd, RadialDeformation, RadialMetric, RadialStaticSolution,
    StaticResidual,
};
pub use modes::{
    apply_dtn, kernel_dimension, laplace_eigenvalue, linearized_boundary_symbol, nullity_ledger,
    BasePoint, NullityLedger, SphereField, SphereTransform,
};
pub use schwarzschild::{
    find_fold, invert_branch, preimage_count, sch_boundary_map, sch_solution, shi_tam_check,
    surface_gravity, BartnikBoundaryData, BranchSet, SchwarzschildParams,
};
pub use shooting::{
    boundary_map_of_shot, horizon_launch, integrate, ShootingState, ShotReport,
};
pub use sphere::SphereQuadrature;
