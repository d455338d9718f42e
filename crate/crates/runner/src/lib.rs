//! Scenario catalog, configuration, output writers and self-checks behind
//! the `qwalk` command-line tool.

pub mod angle;
pub mod error;
pub mod output;
pub mod run;
pub mod scenario;
pub mod verify;

pub use error::ConfigError;
pub use run::{run_scenario, simulate, RunArtifacts, Simulation};
pub use scenario::{Scenario, ScenarioConfig, SweepConfig};
