// SPDX-License-Identifier: MIT OR Apache-2.0

//! Piecewise-quadratic cost machinery for functional pruning.

mod candidate;
mod interval;
mod quadratic;

pub use candidate::{compare_interval, limit_interval, Candidate};
pub use interval::{restrict, Interval, IntervalSet, RestrictMode};
pub use quadratic::QuadraticPoly;
