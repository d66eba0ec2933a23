//! Scenario runner, file formats and reports for the `workbench` binary.

pub mod config;
pub mod dump;
pub mod pres;
pub mod report;
pub mod runner;

pub use config::{ConfigError, Scenario, ScenarioConfig, Suite};
pub use report::Report;
pub use runner::run;
