//! Declarative scenarios: build a state from a source and a pipeline of
//! linear-optical steps, then evaluate the criteria analytically, by
//! sampling, or over a parameter grid.

mod config;
mod run;
mod sweep;

pub use config::{Analysis, Outputs, Sampling, Scenario, Source, Step, SCENARIO_SCHEMA};
pub use run::{banners, run_scenario, run_scenario_file, Banner, RunReport, REPORT_SCHEMA};
pub use sweep::{parse_grid, sweep, SweepRow, SweepTable};
