//! Command-line front end for the cavity tunneling simulator: sweep
//! configuration, parallel evaluation, figure data and CSV/JSON output.

pub mod config;
pub mod error;
pub mod figure;
pub mod output;
pub mod report;
pub mod sweep;

pub use error::CliError;
pub use sweep::{run_sweep, run_sweep_with_threads, Mode, PacketSettings, SRange, SweepRecord, SweepSpec};
