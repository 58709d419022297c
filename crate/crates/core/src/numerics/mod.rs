//! Numerical building blocks: uniform grids, finite differences, quadrature,
//! interpolation, root bracketing and an embedded Runge-Kutta integrator.

pub mod fd;
pub mod grid;
pub mod ode;
pub mod quadrature;
pub mod roots;

pub use grid::UniformGrid;
