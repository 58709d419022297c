//! `staticvac`: checks and sweeps for static vacuum solutions.
//!
//! Exit status: 0 when every invariant check passes, 1 when one fails (the
//! JSON report is still written), 2 for usage, configuration and
//! out-of-range input errors.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use crate::commands::Command;
use crate::config::RunConfig;
use crate::report::{write_file, Check, Report};

#[derive(Parser, Debug)]
#[command(name = "staticvac", version, about = "Static vacuum solutions: checks, sweeps and boundary maps")]
struct Cli {
    /// TOML file with [tolerances] and [quadrature] tables.
    #[arg(long, global = true, env = "STATICVAC_CONFIG")]
    config: Option<PathBuf>,

    /// Write the JSON summary here instead of standard output.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

/// Flag values that take precedence over the config file.
#[derive(clap::Args, Debug, Default)]
struct Overrides {
    #[arg(long, global = true)]
    ode_rtol: Option<f64>,
    #[arg(long, global = true)]
    ode_atol: Option<f64>,
    #[arg(long, global = true)]
    sphere_order: Option<usize>,
    #[arg(long, global = true)]
    radial_samples: Option<usize>,
    #[arg(long, global = true)]
    dense_output: Option<usize>,
    #[arg(long, global = true)]
    levelset_step: Option<f64>,
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig) {
        let t = &mut cfg.tolerances;
        let q = &mut cfg.quadrature;
        if let Some(v) = self.ode_rtol {
            t.ode_rtol = v;
        }
        if let Some(v) = self.ode_atol {
            t.ode_atol = v;
        }
        if let Some(v) = self.sphere_order {
            q.sphere_order = v;
        }
        if let Some(v) = self.radial_samples {
            q.radial_samples = v;
        }
        if let Some(v) = self.dense_output {
            q.dense_output = v;
        }
        if let Some(v) = self.levelset_step {
            q.levelset_step = v;
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    cli.overrides.apply(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}

/// Core errors caused by the request itself are usage errors; anything else
/// is a failed computation and gets a report.
fn is_usage_error(err: &anyhow::Error) -> bool {
    use staticvac_core::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::Input(_) | E::Parameter(_) | E::Resolution { .. } | E::Domain(_) | E::Launch { .. }) => true,
        Some(E::Numerical(_) | E::Integration { .. }) => false,
        // Configuration and I/O problems.
        _ => true,
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = report.to_json()?;
    match &cli.json {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> ExitCode {
    let outcome = load_config(cli).and_then(|cfg| cli.command.run(&cfg));
    let report = match outcome {
        Ok(r) => r,
        Err(e) if is_usage_error(&e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
        Err(e) => {
            let msg = format!("{e:#}");
            let failed = Report::new(cli.command.name(), serde_json::json!({ "error": msg }), vec![Check::holds("computation", false)]);
            match failed.and_then(|r| emit(cli, &r)) {
                Ok(()) => eprintln!("error: {msg}"),
                Err(io) => eprintln!("error: {msg}; report not written: {io:#}"),
            }
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(cli, &report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} = {:e} (threshold {:e})", c.name, c.value, c.threshold);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    run(&Cli::parse())
}
