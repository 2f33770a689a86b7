//! Scenario parsing, sweeps, figure presets and consistency reports for the
//! `tunnelbp` command-line tool.

mod error;
pub mod numfmt;
pub mod preset;
pub mod scenario;
pub mod sweep;
pub mod validate;

pub use error::{CliError, Result};
pub use preset::{preset, run_preset, Preset};
pub use scenario::{parse_scenario, Axis, ObstacleSpec, RisSpec, Scenario, ScenarioBuilder, Sweep};
pub use sweep::{run_sweep, SweepRow};
pub use validate::{validate, validate_with, Report};
