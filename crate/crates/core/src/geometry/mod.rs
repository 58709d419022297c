//! Curvature, constraint and action computations for spherically symmetric
//! static data and for flat data on the unit ball.

mod action;
mod constraints;
mod curvature;
mod metric;
mod monitor;
mod profile;
mod variation;

pub use action::{compute_action, ActionKind, ActionValue};
pub use constraints::{
    constraint_residuals, constraint_residuals_with, static_residual, ConstraintReport,
    StaticResidual,
};
pub use curvature::{curvature_radial, CurvatureRecord};
pub use metric::{InnerEnd, RadialMetric, RadialStaticSolution, Solution};
pub use monitor::{interior_estimate_monitor, InteriorMonitor};
pub use variation::{verify_first_variation, RadialDeformation, VariationReport};
