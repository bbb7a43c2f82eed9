// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for numerical failures (including a failed
//! `check`), 2 for usage and parameter errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::dynamics::{BathParams, DriftConvention};
use crate::entanglement::{negativity_trace, uniform_grid};
use crate::error::Error;
use crate::states::SqueezedThermalSpec;
use crate::survival::{survival_scan, survival_time_symmetric, ScanOptions, SurvivalResult};
use crate::sweep::{run_sweep_with, write_csv, write_csv_to, write_metadata, Execution, Preset, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "twomode", version, about = "Entanglement of two bosonic modes in a thermal bath")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a figure preset or a JSON-configured grid and write CSV.
    Sweep {
        #[arg(long, required_unless_present = "config", conflicts_with = "config")]
        preset: Option<Preset>,
        /// JSON sweep configuration; flags below override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path, `-` for standard output.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        convention: Option<DriftConvention>,
        /// Also write the resolved configuration as JSON.
        #[arg(long)]
        meta: Option<PathBuf>,
        /// Evaluate cells on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// Survival time of entanglement for a squeezed thermal state, as JSON.
    Survival {
        #[arg(long)]
        n1: f64,
        #[arg(long)]
        n2: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        cth: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        /// Always use the numeric crossing finder.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = DriftConvention::OmegaSquared)]
        convention: DriftConvention,
    },
    /// Logarithmic negativity along a trajectory, as CSV.
    Trace {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        n: f64,
        #[arg(long)]
        cth: f64,
        #[arg(long)]
        tmax: f64,
        #[arg(long)]
        dt: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = DriftConvention::OmegaSquared)]
        convention: DriftConvention,
        /// Add a column with the unnormalized invariant expression.
        #[arg(long)]
        paper_literal: bool,
    },
    /// Run the built-in oracle comparisons.
    Check,
}

#[derive(Debug, Serialize)]
struct SurvivalOutput {
    result: SurvivalResult,
    method: &'static str,
    convention: DriftConvention,
    n1: f64,
    n2: f64,
    r: f64,
    c_th: f64,
    omega: f64,
    lambda: f64,
    m: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    revivals: Vec<f64>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. }
        | Error::NonPhysical { .. }
        | Error::NotPositiveDefinite
        | Error::InvalidTimeGrid { .. }
        | Error::Config(_)
        | Error::Json(_)
        | Error::Io { .. } => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io { path: PathBuf::from("<stdout>"), source: e }
}

fn run(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Sweep { preset, config, out: path, steps, convention, meta, serial } => {
            let mut cfg = match (preset, config) {
                (_, Some(file)) => {
                    let text = std::fs::read_to_string(&file).map_err(|source| Error::Io { path: file, source })?;
                    SweepConfig::from_json(&text)?
                }
                (Some(p), None) => SweepConfig::preset(p, crate::sweep::DEFAULT_STEPS)?,
                (None, None) => return Err(Error::Config("either --preset or --config is required".into())),
            };
            if let Some(s) = steps {
                cfg = cfg.with_steps(s);
            }
            if let Some(c) = convention {
                cfg.drift_convention = c;
            }
            if let Some(p) = path {
                cfg.output_path = Some(p);
            }
            let target = cfg
                .output_path
                .clone()
                .ok_or_else(|| Error::Config("no output path (use --out PATH or --out -)".into()))?;
            let exec = if serial { Execution::Serial } else { Execution::Parallel };
            let grid = run_sweep_with(&cfg, exec)?;
            if target == "-" {
                write_csv_to(&grid, &mut *out).map_err(io)?;
            } else {
                write_csv(&grid, std::path::Path::new(&target))?;
            }
            if let Some(m) = meta {
                write_metadata(&grid, &m)?;
            }
            Ok(0)
        }
        Command::Survival { n1, n2, r, cth, omega, lambda, m, numeric, convention } => {
            let spec = SqueezedThermalSpec::new(n1, n2, r)?;
            let params = BathParams::symmetric(lambda, m, omega, cth)?;
            let closed_form_applies = n1 == n2 && omega == 1.0 && lambda == 1.0 && m == 1.0;
            let (result, method, revivals) = if closed_form_applies && !numeric {
                (survival_time_symmetric(n1, r, cth)?, "closed_form", Vec::new())
            } else {
                let report = survival_scan(&spec.covariance(), &params, convention, ScanOptions::for_params(&params))?;
                (report.result, "numeric", report.revivals)
            };
            let output = SurvivalOutput {
                result,
                method,
                convention,
                n1,
                n2,
                r,
                c_th: cth,
                omega,
                lambda,
                m,
                revivals,
            };
            serde_json::to_writer_pretty(&mut *out, &output)?;
            writeln!(out).map_err(io)?;
            Ok(0)
        }
        Command::Trace { r, n, cth, tmax, dt, omega, lambda, m, convention, paper_literal } => {
            let spec = SqueezedThermalSpec::symmetric(n, r)?;
            let params = BathParams::symmetric(lambda, m, omega, cth)?;
            let grid = uniform_grid(tmax, dt)?;
            let trace = negativity_trace(spec, &params, convention, &grid)?;
            let literal = if paper_literal { Some(trace.paper_literal_values()?) } else { None };
            let header = if literal.is_some() { "t,log_negativity,paper_literal" } else { "t,log_negativity" };
            writeln!(out, "{header}").map_err(io)?;
            for (i, (t, v)) in trace.times.iter().zip(&trace.values).enumerate() {
                match &literal {
                    Some(l) => writeln!(out, "{t:.16e},{v:.16e},{:.16e}", l[i]),
                    None => writeln!(out, "{t:.16e},{v:.16e}"),
                }
                .map_err(io)?;
            }
            Ok(0)
        }
        Command::Check => {
            let mut failed = false;
            for c in crate::check::run_checks()? {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                failed |= !c.passed();
                writeln!(out, "{status} {} (deviation {:.3e}, tolerance {:.0e})", c.name, c.deviation, c.tolerance)
                    .map_err(io)?;
            }
            Ok(if failed { 1 } else { 0 })
        }
    }
}
