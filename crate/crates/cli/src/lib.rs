//! Scenario loading, subcommand dispatch and result serialization for the
//! `irs-squint` command-line tool.

pub mod output;
pub mod run;
pub mod scenario;

pub use output::{Artifact, AxisValues, OutputAxis, Values};
pub use run::{evaluate, run, Command, RunError, RunOptions, EXIT_INCOMPATIBLE, EXIT_IO, EXIT_OK};
pub use scenario::{load_scenario, Format, Regime, Scenario, ScenarioError};
