//! Scenario files, method dispatch, sweeps and CSV output on top of
//! `outage-core`.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{MethodChoice, ScenarioFile};
pub use error::CliError;
pub use run::{max_supported_interferers, run_scenario, sweep, MaxInterferers, Record, SweepVariable};
