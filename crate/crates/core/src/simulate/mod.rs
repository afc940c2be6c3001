// SPDX-License-Identifier: MIT OR Apache-2.0

//! Signal generators, variance estimation, evaluation metrics and the
//! replicate runners behind the calibration, speed and power studies.

mod metrics;
mod scenario;
mod study;
mod variance;

pub use metrics::{adjusted_rand_index, ae_pct, compute_metrics, delta_r2, Better, ReplicateMetrics};
pub use scenario::{generate, hat_tau1_grid, log_spaced_positions, step_tau1_grid, ScenarioKind, ScenarioSpec, Truth};
pub use study::{
    replicate_seed, run_bench, run_calibration, run_study, BenchPlan, BenchRow, CalibrationPlan, CalibrationRow,
    Method, MethodSummary, MetricsReport, PenaltyParams, SolverKind, Study,
};
pub use variance::{estimate_sigma_mad, SigmaEstimate, MAD_SCALE};
