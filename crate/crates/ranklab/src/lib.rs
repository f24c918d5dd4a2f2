//! Command line, data files and report rendering for `ranklab-core`.
//!
//! - [`data`]: exception tables and known rank facts as JSON files, with
//!   `RANKLAB_DATA_DIR` lookup and embedded defaults.
//! - [`model`]: the schema-versioned JSON output model.
//! - [`render`]: text and CSV renderings of that model.
//! - [`commands`], [`report`], [`cli`]: command bodies and dispatch.

pub mod cli;
pub mod commands;
pub mod data;
mod error;
pub mod model;
pub mod points;
pub mod render;
pub mod report;

pub use error::{CliError, Result};
