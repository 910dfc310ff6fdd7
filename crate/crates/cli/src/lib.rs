//! Scenario runner for the vacuum-correction library: JSON configuration,
//! report and table output, and the `ehvac` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod numfmt;
pub mod run;
pub mod table;

pub use config::{Format, Mode, ScenarioConfig};
pub use error::CliError;
pub use run::{execute, Command, Outcome};
