//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{presets, Format, Mode, ScenarioConfig};
use crate::error::CliError;
use crate::run::{execute, Command};

const DEFAULT_OUT_DIR: &str = "ehvac-out";

#[derive(Debug, Parser)]
#[command(name = "ehvac", version, about = "Euler-Heisenberg vacuum corrections to a standing-wave laser beam")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Correction fields ΔE_x, ΔB_y on the configured (ρ, z) grid.
    Field(ConfigArgs),
    /// Radiation-pressure correction: closed form and cross-section assembly.
    Pressure(ConfigArgs),
    /// The oscillatory integrals I± on the configured grid.
    Integrals(ConfigArgs),
    /// Asymptotic-versus-numeric sweep over kρ.
    Validate(ConfigArgs),
    /// Runs a built-in scenario (currently: ligo).
    Preset {
        name: String,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Scenario configuration (JSON).
    #[arg(long)]
    pub config: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Evaluation method for the oscillatory integrals.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Relative tolerance of the numeric quadrature.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Table format; the summary is always report.json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Overrides {
    /// Applies the overrides and resolves the output directory and format.
    pub fn apply(&self, cfg: &mut ScenarioConfig) -> (PathBuf, Format) {
        if let Some(mode) = self.mode {
            cfg.mode = mode;
        }
        if let Some(tol) = self.tol {
            cfg.tolerance = tol;
        }
        let dir = self
            .out
            .clone()
            .or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
        let format = self.format.or(cfg.output.format).unwrap_or_default();
        (dir, format)
    }
}

fn resolve(cmd: Cmd) -> Result<(Command, ScenarioConfig, Overrides), CliError> {
    Ok(match cmd {
        Cmd::Field(a) => (Command::Field, ScenarioConfig::load(&a.config)?, a.overrides),
        Cmd::Pressure(a) => (Command::Pressure, ScenarioConfig::load(&a.config)?, a.overrides),
        Cmd::Integrals(a) => (Command::Integrals, ScenarioConfig::load(&a.config)?, a.overrides),
        Cmd::Validate(a) => (Command::Validate, ScenarioConfig::load(&a.config)?, a.overrides),
        Cmd::Preset { name, overrides } => {
            let cfg = presets::by_name(&name).ok_or_else(|| {
                CliError::invalid("preset", format!("unknown preset {name:?}; known: {}", presets::NAMES.join(", ")))
            })?;
            (Command::Preset(name), cfg, overrides)
        }
    })
}

fn run_parsed(cli: Cli) -> Result<i32, CliError> {
    let (command, mut cfg, overrides) = resolve(cli.command)?;
    let (dir, format) = overrides.apply(&mut cfg);
    let mut outcome = execute(&command, cfg, format)?;
    let written = outcome.write(&dir, format)?;
    for w in &outcome.report.warnings {
        eprintln!("warning: {w}");
    }
    for path in &written {
        println!("{}", path.display());
    }
    if outcome.is_partial() {
        let first = &outcome.report.failures[0];
        let err = CliError::NotConverged {
            count: outcome.report.failures.len(),
            first: format!("rho = {} m, z = {} m: {}", first.rho_m, first.z_m, first.message),
        };
        eprintln!("error: {err} (partial report written)");
        return Ok(err.exit_code());
    }
    Ok(0)
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_parsed(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
