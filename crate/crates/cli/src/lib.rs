//! Scenario runner for the `qdiscord` toolkit: configuration parsing, model
//! execution and the series/summary artifacts.

pub mod config;
mod error;
pub mod run;

pub use config::{preset_names, RawConfig, ScenarioConfig, ScenarioModel};
pub use error::{CliError, CliResult};
pub use run::{run, series_csv, simulate, RunOutcome, Summary};
