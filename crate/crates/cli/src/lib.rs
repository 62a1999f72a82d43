//! Command-line front end for `superfock`: the invariant suite and the
//! data tables, configured from JSON.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;

pub use checks::{run_checks, Check, CheckReport};
pub use commands::{cmd_check, cmd_entangle, cmd_evolve, cmd_susino, cmd_thermal, cmd_wz, write_files, OutputFile};
pub use config::{Format, RunConfig};
pub use error::{CliError, Result, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
