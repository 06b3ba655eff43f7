//! Command-line front end for `dehnkit-core`: presentation files, report
//! envelopes, CSV tables and the subcommand drivers.

pub mod cli;
pub mod commands;
pub mod error;
pub mod report;
pub mod schema;

pub use dehnkit_core as core;
