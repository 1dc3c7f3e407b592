//! Measurement ingestion, material presets and the `dimerq` command line.
//!
//! The physics lives in [`dimerq_core`]; this crate adds files and processes.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dataio;
mod error;

pub use error::{DataError, Result};
