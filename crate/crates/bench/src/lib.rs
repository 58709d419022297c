//! Fixtures shared by the benchmarks.

use staticvac_core::{sch_solution, RadialStaticSolution, Result, SchwarzschildParams};

/// Schwarzschild `m = 0.2`, `c = 4m`, on `n` radii.
pub fn schwarzschild_fixture(n: usize) -> Result<RadialStaticSolution> {
    sch_solution(&SchwarzschildParams::new(0.2)?, n)
}
