// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact solvers for the penalized least-squares segmentation problem.

mod msfpop;
mod pelt;
mod sampler;
mod segmentation;
mod series;

pub use msfpop::{msfpop_segment, MsFpop};
pub use pelt::pelt_segment;
pub use sampler::{sample_future, SamplerSpec, SamplingMode};
pub use segmentation::{backtrack, evaluate_criterion, Segmentation};
pub use series::Series;

pub(crate) use segmentation::segment_labels;
