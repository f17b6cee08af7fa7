//! Multimodal deception-detection pipeline core.
//!
//! Pure algorithms over in-memory data: the recording data model and a
//! calibrated synthetic generator, time-series featurization, Boruta feature
//! selection on a CART forest, a dual coordinate-descent linear SVM with
//! Platt calibration, ten unimodal/fusion/ensemble strategies, and
//! speaker-disjoint evaluation with the accompanying statistics.
//!
//! The crate is `no_std` (with `alloc`); file formats, the CLI and parallel
//! execution live in the `mmdd` crate.

#![no_std]
// `!(x > 0.0)` style checks are meant to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod channels;
pub mod corpus;
pub mod eval;
pub mod featurize;
pub mod fusion;
pub mod linsvm;
pub mod math;
pub mod matrix;
pub mod rng;
pub mod select;

pub use corpus::{CorpusManifest, FrameStream, Label, Modality, SyntheticSpec, VideoRecord};
pub use featurize::{FeatureMatrix, FeatureName};
pub use matrix::Matrix;
