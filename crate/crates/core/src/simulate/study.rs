// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::penalty::{PenaltyKind, PenaltyModel, PruningBound, PruningMode};
use crate::solver::{msfpop_segment, pelt_segment, SamplerSpec, SamplingMode, Segmentation, Series};

use super::metrics::{ae_pct, compute_metrics, delta_r2, Better, ReplicateMetrics};
use super::scenario::{generate, ScenarioKind, ScenarioSpec};

/// Seed for replicate `index` of stream `stream`. Each (stream, index, lane)
/// triple reads its own position of a ChaCha keystream, so the value does
/// not depend on the order in which replicates are run.
pub fn replicate_seed(master: u64, stream: u64, index: u64, lane: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng.set_word_pos(((index as u128) * 4 + (lane as u128 % 2) * 2) * 2);
    rng.next_u64()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Msfpop,
    Mspelt,
    Op,
}

/// Constants shared by every method of a study.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PenaltyParams {
    pub beta: f64,
    pub gamma: f64,
    /// BIC constant; `None` means `2 ln(n)`.
    pub alpha: Option<f64>,
}

impl Default for PenaltyParams {
    fn default() -> Self {
        Self {
            beta: 2.25,
            gamma: 9.0,
            alpha: None,
        }
    }
}

impl PenaltyParams {
    pub fn model(&self, kind: PenaltyKind, n: usize) -> Result<PenaltyModel<f64>> {
        match kind {
            PenaltyKind::Multiscale => PenaltyModel::multiscale(n, self.beta, self.gamma),
            PenaltyKind::Bic => PenaltyModel::bic(n, self.alpha),
        }
    }
}

/// A solver together with its penalty family, named by a short label such as
/// `msfpop`, `msfpop-all`, `fpop`, `mspelt`, `pelt` or `op`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Method {
    pub label: String,
    pub solver: SolverKind,
    pub penalty: PenaltyKind,
    pub sampling: SamplingMode,
    pub pruning: PruningMode,
}

impl Method {
    fn new(label: &str, solver: SolverKind, penalty: PenaltyKind) -> Self {
        let (sampling, pruning) = match (solver, penalty) {
            (SolverKind::Msfpop, PenaltyKind::Multiscale) => (SamplingMode::Rand(1), PruningMode::None),
            (SolverKind::Msfpop, PenaltyKind::Bic) => (SamplingMode::All, PruningMode::None),
            (SolverKind::Mspelt, PenaltyKind::Multiscale) => (SamplingMode::All, PruningMode::Adaptive),
            (SolverKind::Mspelt, PenaltyKind::Bic) => (SamplingMode::All, PruningMode::Constant),
            (SolverKind::Op, _) => (SamplingMode::All, PruningMode::None),
        };
        Self {
            label: label.to_string(),
            solver,
            penalty,
            sampling,
            pruning,
        }
    }

    /// Solves `series` and reports the wall-clock time in seconds.
    pub fn run(&self, series: &Series<f64>, params: &PenaltyParams, seed: u64) -> Result<(Segmentation<f64>, f64)> {
        let model = params.model(self.penalty, series.len())?;
        let start = Instant::now();
        let seg = match self.solver {
            SolverKind::Msfpop => {
                let sampler = SamplerSpec {
                    mode: self.sampling,
                    seed,
                };
                msfpop_segment(series, &model, sampler)?
            }
            SolverKind::Mspelt => {
                let bound = PruningBound {
                    mode: self.pruning,
                    general_constant: false,
                };
                pelt_segment(series, &model, bound)?
            }
            SolverKind::Op => pelt_segment(series, &model, PruningBound::none())?,
        };
        Ok((seg, start.elapsed().as_secs_f64()))
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(label: &str) -> Result<Self> {
        let label = label.trim();
        let lower = label.to_ascii_lowercase();
        let (base, variant) = match lower.split_once('-') {
            Some((b, v)) => (b, Some(v)),
            None => (lower.as_str(), None),
        };
        let unknown = || Error::Configuration(format!("unknown method '{label}'"));
        let mut m = match base {
            "msfpop" => Method::new(label, SolverKind::Msfpop, PenaltyKind::Multiscale),
            "fpop" => Method::new(label, SolverKind::Msfpop, PenaltyKind::Bic),
            "mspelt" => Method::new(label, SolverKind::Mspelt, PenaltyKind::Multiscale),
            "pelt" => Method::new(label, SolverKind::Mspelt, PenaltyKind::Bic),
            "op" => Method::new(label, SolverKind::Op, PenaltyKind::Multiscale),
            _ => return Err(unknown()),
        };
        match (m.solver, variant) {
            (_, None) => {}
            (SolverKind::Msfpop, Some(v)) => m.sampling = v.parse().map_err(|_| unknown())?,
            (SolverKind::Mspelt, Some(v)) => {
                m.pruning = match v {
                    "none" => PruningMode::None,
                    "constant" => PruningMode::Constant,
                    "adaptive" => PruningMode::Adaptive,
                    _ => return Err(unknown()),
                }
            }
            (SolverKind::Op, Some("bic")) => m.penalty = PenaltyKind::Bic,
            (SolverKind::Op, Some(_)) => return Err(unknown()),
        }
        Ok(m)
    }
}

impl TryFrom<String> for Method {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Method> for String {
    fn from(m: Method) -> Self {
        m.label
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Study {
    pub scenarios: Vec<ScenarioSpec>,
    pub methods: Vec<Method>,
    pub replicates: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub penalty: PenaltyParams,
}

/// Aggregated results of one method on one scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodSummary {
    pub label: String,
    pub n_changes: Vec<usize>,
    pub delta_d: Vec<usize>,
    pub mse: Vec<f64>,
    pub ari: Vec<f64>,
    pub runtimes: Vec<f64>,
    pub r_gt0: f64,
    pub r_2: f64,
    pub ae_delta_d: f64,
    pub ae_mse: f64,
    pub ae_ari: f64,
}

impl MethodSummary {
    /// Proportion of replicates with exactly `k` detected changes.
    pub fn r_eq(&self, k: usize) -> f64 {
        proportion(&self.n_changes, |d| d == k)
    }

    pub fn mean_runtime(&self) -> f64 {
        mean(&self.runtimes)
    }

    pub fn mean_delta_d(&self) -> f64 {
        mean(&self.delta_d.iter().map(|&d| d as f64).collect::<Vec<_>>())
    }

    pub fn mean_mse(&self) -> f64 {
        mean(&self.mse)
    }

    pub fn mean_ari(&self) -> f64 {
        mean(&self.ari)
    }
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        v.iter().sum::<f64>() / v.len() as f64
    }
}

fn proportion(v: &[usize], pred: impl Fn(usize) -> bool) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.iter().filter(|&&d| pred(d)).count() as f64 / v.len() as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub scenario: ScenarioSpec,
    pub replicates: usize,
    pub methods: Vec<MethodSummary>,
}

impl MetricsReport {
    pub fn method(&self, label: &str) -> Option<&MethodSummary> {
        self.methods.iter().find(|m| m.label == label)
    }

    /// `log2(R_2(a) / R_2(b))`; absent if a method is missing or has `R_2 = 0`.
    pub fn delta_r2(&self, a: &str, b: &str) -> Option<f64> {
        delta_r2(self.method(a)?.r_2, self.method(b)?.r_2)
    }

    /// Same report with timing columns zeroed, for reproducibility checks.
    pub fn without_runtimes(&self) -> Self {
        let mut out = self.clone();
        for m in &mut out.methods {
            m.runtimes.iter_mut().for_each(|r| *r = 0.0);
        }
        out
    }
}

fn check_plan(replicates: usize, methods: usize) -> Result<()> {
    if replicates < 1 {
        return Err(Error::Configuration("at least one replicate is required".into()));
    }
    if methods < 1 {
        return Err(Error::Configuration("at least one method is required".into()));
    }
    Ok(())
}

/// Runs every method on every replicate of every scenario. Replicates run in
/// parallel on the current rayon pool and are reduced in index order.
pub fn run_study(study: &Study) -> Result<Vec<MetricsReport>> {
    check_plan(study.replicates, study.methods.len())?;
    study
        .scenarios
        .iter()
        .enumerate()
        .map(|(idx, scenario)| run_scenario(study, idx as u64, scenario))
        .collect()
}

fn run_scenario(study: &Study, stream: u64, scenario: &ScenarioSpec) -> Result<MetricsReport> {
    scenario.truth()?;
    let per_rep: Vec<Vec<(ReplicateMetrics, f64)>> = (0..study.replicates)
        .into_par_iter()
        .map(|rep| {
            let data_seed = replicate_seed(study.master_seed, stream, rep as u64, 0);
            let solver_seed = replicate_seed(study.master_seed, stream, rep as u64, 1);
            let (series, truth) = generate(&scenario.clone().with_seed(data_seed))?;
            study
                .methods
                .iter()
                .map(|m| {
                    let (seg, secs) = m.run(&series, &study.penalty, solver_seed)?;
                    Ok((compute_metrics(&truth, &seg, &series)?, secs))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let column = |m: usize, f: &dyn Fn(&ReplicateMetrics) -> f64| -> Vec<f64> {
        per_rep.iter().map(|row| f(&row[m].0)).collect()
    };
    let n_methods = study.methods.len();
    let delta_scores: Vec<Vec<f64>> = (0..n_methods).map(|m| column(m, &|r| r.delta_d as f64)).collect();
    let mse_scores: Vec<Vec<f64>> = (0..n_methods).map(|m| column(m, &|r| r.mse)).collect();
    let ari_scores: Vec<Vec<f64>> = (0..n_methods).map(|m| column(m, &|r| r.ari)).collect();
    let ae_d = ae_pct(&delta_scores, Better::Lower)?;
    let ae_m = ae_pct(&mse_scores, Better::Lower)?;
    let ae_a = ae_pct(&ari_scores, Better::Higher)?;

    let methods = study
        .methods
        .iter()
        .enumerate()
        .map(|(m, method)| {
            let n_changes: Vec<usize> = per_rep.iter().map(|row| row[m].0.n_changes).collect();
            MethodSummary {
                label: method.label.clone(),
                r_gt0: proportion(&n_changes, |d| d > 0),
                r_2: proportion(&n_changes, |d| d == 2),
                delta_d: per_rep.iter().map(|row| row[m].0.delta_d).collect(),
                mse: mse_scores[m].clone(),
                ari: ari_scores[m].clone(),
                runtimes: per_rep.iter().map(|row| row[m].1).collect(),
                n_changes,
                ae_delta_d: ae_d[m],
                ae_mse: ae_m[m],
                ae_ari: ae_a[m],
            }
        })
        .collect();
    Ok(MetricsReport {
        scenario: scenario.clone(),
        replicates: study.replicates,
        methods,
    })
}

/// False-positive calibration grid on change-free Gaussian signals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationPlan {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub ns: Vec<usize>,
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_sampling")]
    pub sampling: SamplingMode,
}

fn default_sampling() -> SamplingMode {
    SamplingMode::Rand(1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CalibrationRow {
    pub gamma: f64,
    pub beta: f64,
    pub n: usize,
    pub replicates: usize,
    /// Proportion of replicates with at least one detected change.
    pub r_gt0: f64,
}

/// Every `(gamma, beta)` pair sees the same simulated signals for a given
/// `(n, replicate)`. Rows are ordered by `n`, then `beta`, then `gamma`.
pub fn run_calibration(plan: &CalibrationPlan) -> Result<Vec<CalibrationRow>> {
    check_plan(plan.replicates, 1)?;
    let pairs: Vec<(f64, f64)> = plan
        .betas
        .iter()
        .flat_map(|&b| plan.gammas.iter().map(move |&g| (b, g)))
        .collect();
    let mut rows = Vec::new();
    for (idx, &n) in plan.ns.iter().enumerate() {
        let models = pairs
            .iter()
            .map(|&(beta, gamma)| PenaltyModel::multiscale(n, beta, gamma))
            .collect::<Result<Vec<_>>>()?;
        let detections: Vec<Vec<bool>> = (0..plan.replicates)
            .into_par_iter()
            .map(|rep| {
                let spec = ScenarioSpec::new(ScenarioKind::Null, n)
                    .with_seed(replicate_seed(plan.seed, idx as u64, rep as u64, 0));
                let (series, _) = generate(&spec)?;
                let sampler = SamplerSpec {
                    mode: plan.sampling,
                    seed: replicate_seed(plan.seed, idx as u64, rep as u64, 1),
                };
                models
                    .iter()
                    .map(|model| Ok(msfpop_segment(&series, model, sampler)?.n_changes() > 0))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for (k, &(beta, gamma)) in pairs.iter().enumerate() {
            let hits = detections.iter().filter(|row| row[k]).count();
            rows.push(CalibrationRow {
                gamma,
                beta,
                n,
                replicates: plan.replicates,
                r_gt0: hits as f64 / plan.replicates as f64,
            });
        }
    }
    Ok(rows)
}

/// Timing grid over signal lengths and numbers of alternating-mean changes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchPlan {
    pub ns: Vec<usize>,
    pub ds: Vec<usize>,
    pub methods: Vec<Method>,
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub penalty: PenaltyParams,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub method: String,
    pub n: usize,
    pub d: usize,
    pub replicate: usize,
    pub seconds: f64,
    pub n_changes: usize,
}

/// Runs sequentially so that timings are not disturbed by sibling work.
pub fn run_bench(plan: &BenchPlan) -> Result<Vec<BenchRow>> {
    check_plan(plan.replicates, plan.methods.len())?;
    let mut rows = Vec::new();
    for (ni, &n) in plan.ns.iter().enumerate() {
        for (di, &d) in plan.ds.iter().enumerate() {
            let kind = if d == 0 {
                ScenarioKind::Null
            } else {
                ScenarioKind::Alternating { changes: d }
            };
            let stream = (ni * plan.ds.len() + di) as u64;
            for rep in 0..plan.replicates {
                let spec =
                    ScenarioSpec::new(kind.clone(), n).with_seed(replicate_seed(plan.seed, stream, rep as u64, 0));
                let (series, _) = generate(&spec)?;
                let solver_seed = replicate_seed(plan.seed, stream, rep as u64, 1);
                for m in &plan.methods {
                    let (seg, seconds) = m.run(&series, &plan.penalty, solver_seed)?;
                    rows.push(BenchRow {
                        method: m.label.clone(),
                        n,
                        d,
                        replicate: rep,
                        seconds,
                        n_changes: seg.n_changes(),
                    });
                }
            }
        }
    }
    Ok(rows)
}
