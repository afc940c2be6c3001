// SPDX-License-Identifier: MIT OR Apache-2.0

//! TOML study configurations for the `calibrate`, `bench` and `simulate`
//! commands.

use serde::de::DeserializeOwned;
use serde::Deserialize;

use msfpop::simulate::{
    hat_tau1_grid, step_tau1_grid, BenchPlan, CalibrationPlan, Method, PenaltyParams, ScenarioKind, ScenarioSpec, Study,
};
use msfpop::SamplingMode;

use crate::error::{usage, CliError, CliResult};

/// A list of values, or `count` evenly spaced values from `from` to `to`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Values(Vec<f64>),
    Range { from: f64, to: f64, count: usize },
}

impl Grid {
    pub fn values(&self) -> CliResult<Vec<f64>> {
        match *self {
            Grid::Values(ref v) => Ok(v.clone()),
            Grid::Range { from, to, count } => match count {
                0 => usage("grid count must be at least 1"),
                1 => Ok(vec![from]),
                _ => Ok((0..count)
                    .map(|k| from + (to - from) * k as f64 / (count - 1) as f64)
                    .collect()),
            },
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrateConfig {
    pub gammas: Grid,
    #[serde(default = "default_betas")]
    pub betas: Grid,
    pub ns: Vec<usize>,
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_sampling")]
    pub sampling: SamplingMode,
}

fn default_betas() -> Grid {
    Grid::Values(vec![PenaltyParams::default().beta])
}

fn default_sampling() -> SamplingMode {
    SamplingMode::Rand(1)
}

impl CalibrateConfig {
    pub fn plan(&self, seed: Option<u64>) -> CliResult<CalibrationPlan> {
        let plan = CalibrationPlan {
            gammas: self.gammas.values()?,
            betas: self.betas.values()?,
            ns: self.ns.clone(),
            replicates: self.replicates,
            seed: seed.unwrap_or(self.seed),
            sampling: self.sampling,
        };
        if plan.replicates < 1 {
            return usage("replicates must be at least 1");
        }
        if plan
            .gammas
            .iter()
            .chain(&plan.betas)
            .any(|&v| !(v.is_finite() && v > 0.0))
        {
            return usage("every gamma and beta must be positive");
        }
        if plan.ns.contains(&0) {
            return usage("every n must be positive");
        }
        Ok(plan)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    #[serde(default = "default_ds")]
    pub ds: Vec<usize>,
    pub methods: Vec<Method>,
    #[serde(default = "one")]
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub penalty: PenaltyParams,
}

fn default_ds() -> Vec<usize> {
    vec![0]
}

fn one() -> usize {
    1
}

impl BenchConfig {
    pub fn plan(&self, seed: Option<u64>) -> CliResult<BenchPlan> {
        if self.replicates < 1 {
            return usage("replicates must be at least 1");
        }
        if self.methods.is_empty() {
            return usage("at least one method is required");
        }
        if let Some((&n, &d)) = self
            .ns
            .iter()
            .flat_map(|n| self.ds.iter().map(move |d| (n, d)))
            .find(|&(&n, &d)| n == 0 || d >= n)
        {
            return usage(format!("cannot place {d} changes in a series of length {n}"));
        }
        Ok(BenchPlan {
            ns: self.ns.clone(),
            ds: self.ds.clone(),
            methods: self.methods.clone(),
            replicates: self.replicates,
            seed: seed.unwrap_or(self.seed),
            penalty: self.penalty,
        })
    }
}

/// Either explicit `[[scenarios]]` tables, or a scenario family swept over a
/// grid of first-change positions (`hat`, `step`) or change counts
/// (`alternating`).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    #[serde(default)]
    pub scenarios: Vec<ScenarioSpec>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub tau1: Option<Vec<usize>>,
    pub tau1_count: Option<usize>,
    #[serde(default)]
    pub mirrored: bool,
    pub changes: Option<Vec<usize>>,
    #[serde(default = "unit")]
    pub sigma2: f64,
    pub methods: Vec<Method>,
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub penalty: PenaltyParams,
}

fn unit() -> f64 {
    1.0
}

impl SimulateConfig {
    fn family_scenarios(&self, family: &str) -> CliResult<Vec<ScenarioSpec>> {
        let Some(n) = self.n else {
            return usage("a scenario family needs n");
        };
        let tau1 = || -> CliResult<Vec<usize>> {
            match (&self.tau1, self.tau1_count) {
                (Some(t), _) => Ok(t.clone()),
                (None, Some(count)) if family == "hat" => Ok(hat_tau1_grid(n, count, self.mirrored)),
                (None, Some(count)) => Ok(step_tau1_grid(n, count)),
                (None, None) => usage(format!("family '{family}' needs tau1 or tau1_count")),
            }
        };
        let kinds: Vec<ScenarioKind> = match family {
            "null" => vec![ScenarioKind::Null],
            "hat" => tau1()?.into_iter().map(|tau1| ScenarioKind::Hat { tau1 }).collect(),
            "step" => tau1()?.into_iter().map(|tau1| ScenarioKind::Step { tau1 }).collect(),
            "alternating" => match &self.changes {
                Some(c) => c.iter().map(|&changes| ScenarioKind::Alternating { changes }).collect(),
                None => return usage("family 'alternating' needs changes"),
            },
            other => return usage(format!("unknown scenario family '{other}'")),
        };
        Ok(kinds
            .into_iter()
            .map(|kind| ScenarioSpec {
                kind,
                n,
                sigma2: self.sigma2,
                seed: 0,
            })
            .collect())
    }

    pub fn study(&self, seed: Option<u64>) -> CliResult<Study> {
        let mut scenarios = self.scenarios.clone();
        if let Some(family) = &self.family {
            scenarios.extend(self.family_scenarios(&family.to_ascii_lowercase())?);
        }
        if scenarios.is_empty() {
            return usage("no scenarios: give [[scenarios]] tables or a family");
        }
        for s in &scenarios {
            s.truth()
                .map_err(|e| CliError::Usage(format!("invalid scenario {:?}: {e}", s.kind)))?;
            if !(s.sigma2.is_finite() && s.sigma2 > 0.0) {
                return usage(format!("sigma2 must be positive, got {}", s.sigma2));
            }
        }
        if self.replicates < 1 {
            return usage("replicates must be at least 1");
        }
        if self.methods.is_empty() {
            return usage("at least one method is required");
        }
        Ok(Study {
            scenarios,
            methods: self.methods.clone(),
            replicates: self.replicates,
            master_seed: seed.unwrap_or(self.seed),
            penalty: self.penalty,
        })
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid configuration: {e}")))
}
