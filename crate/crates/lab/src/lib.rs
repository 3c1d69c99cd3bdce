//! Experiment harness for `hormander-core`: file formats, configuration,
//! the experiment suites, reports with a regression store, and the
//! `hormander` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod csvio;
pub mod error;
pub mod report;
pub mod specs;
pub mod suites;

pub use config::ExperimentConfig;
pub use error::{LabError, LabResult};
pub use report::{ExperimentReport, RegressionStore};
