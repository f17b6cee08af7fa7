//! Host-side half of the pipeline: corpus manifests and CSV/JSON artifacts,
//! a rayon-backed runner for featurization and evaluation folds, and the
//! `mmdd` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod manifest;
pub mod runner;
pub mod svg;
pub mod tables;

pub use error::{Error, Result};
