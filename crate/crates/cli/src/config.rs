//! Run configuration: `[tolerances]` and `[quadrature]` tables from TOML,
//! with command-line flags applied on top.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use staticvac_core::{Quadrature, Tolerances};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub quadrature: Quadrature,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let cfg = match path {
            None => Self::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        let named = [
            ("exact_residual", t.exact_residual),
            ("shot_residual", t.shot_residual),
            ("ode_rtol", t.ode_rtol),
            ("ode_atol", t.ode_atol),
            ("root", t.root),
            ("fold_window", t.fold_window),
            ("fold_taylor_band", t.fold_taylor_band),
            ("launch_series", t.launch_series),
            ("levelset_newton", t.levelset_newton),
            ("levelset_closure", t.levelset_closure),
            ("positivity_margin", t.positivity_margin),
            ("levelset_step", self.quadrature.levelset_step),
        ];
        for (name, v) in named {
            if !(v.is_finite() && v > 0.0) {
                bail!("{name} must be positive, got {v}");
            }
        }
        if t.fold_taylor_band < t.fold_window {
            bail!("fold_taylor_band must not be below fold_window");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_tables_keep_defaults() {
        let cfg: RunConfig = toml::from_str("[quadrature]\nlmax = 16\n").unwrap();
        assert_eq!(cfg.quadrature.lmax, 16);
        assert_eq!(cfg.tolerances, Tolerances::default());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(toml::from_str::<RunConfig>("[tolerances]\nbogus = 1.0\n").is_err());
        let mut cfg = RunConfig::default();
        cfg.tolerances.ode_rtol = 0.0;
        assert!(cfg.validate().is_err());
    }
}
