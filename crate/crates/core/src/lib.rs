// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact changepoint detection in the mean of a Gaussian signal under a
//! multiscale penalty, where each segment pays a constant minus a multiple of
//! the log of its length.
//!
//! Two exact solvers are provided: [`msfpop_segment`] prunes candidates
//! functionally by tracking the set of segment means on which each one may
//! still be optimal, and [`pelt_segment`] prunes by a cost inequality. Both
//! also handle the classic BIC penalty. The [`oracle`] module holds slow
//! reference solvers used for validation, and [`simulate`] runs seeded
//! simulation studies.
//!
//! The numeric core is generic over `f32` and `f64` through [`Scalar`].
//!
//! ```
//! use msfpop::{msfpop_segment, PenaltyModel, SamplerSpec, Series};
//!
//! let series = Series::new(vec![0.0, 0.0, 10.0, 10.0])?;
//! let model = PenaltyModel::multiscale(series.len(), 2.25, 9.0)?;
//! let seg = msfpop_segment(&series, &model, SamplerSpec::default())?;
//! assert_eq!(seg.changepoints, vec![2]);
//! # Ok::<(), msfpop::Error>(())
//! ```

pub mod cost;
pub mod error;
pub mod oracle;
pub mod penalty;
pub mod scalar;
pub mod simulate;
pub mod solver;

pub use cost::{compare_interval, limit_interval, Candidate, Interval, IntervalSet, QuadraticPoly};
pub use error::{Error, Result};
pub use penalty::{PenaltyKind, PenaltyModel, PruningBound, PruningMode};
pub use scalar::Scalar;
pub use solver::{
    evaluate_criterion, msfpop_segment, pelt_segment, MsFpop, SamplerSpec, SamplingMode, Segmentation, Series,
};

pub type Series64 = Series<f64>;
pub type Series32 = Series<f32>;
pub type PenaltyModel64 = PenaltyModel<f64>;
pub type PenaltyModel32 = PenaltyModel<f32>;
pub type Segmentation64 = Segmentation<f64>;
pub type Segmentation32 = Segmentation<f32>;
pub type QuadraticPoly64 = QuadraticPoly<f64>;
pub type QuadraticPoly32 = QuadraticPoly<f32>;
pub type IntervalSet64 = IntervalSet<f64>;
pub type IntervalSet32 = IntervalSet<f32>;
pub type Candidate64 = Candidate<f64>;
