// SPDX-License-Identifier: Apache-2.0

//! Configuration-driven runner behind the `qthermo` binary.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{read_config, Experiment, Overrides, Scan};
pub use error::{CliError, CliResult};
pub use run::{run_nm_scan, run_reproduce, run_simulate, Figure};
