// SPDX-License-Identifier: MIT OR Apache-2.0

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{segment_labels, Series};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScenarioKind {
    /// Constant zero mean.
    Null,
    /// `changes` equally spaced changes, means alternating 0, 1, 0, ...
    Alternating {
        changes: usize,
    },
    /// Changes at `tau1` and `floor(2n/3)`, means `(0, sqrt(100/n), 0)`.
    Hat {
        tau1: usize,
    },
    /// One change at `tau1`, means `(0, sqrt(70/n))`.
    Step {
        tau1: usize,
    },
    Custom {
        tau: Vec<usize>,
        means: Vec<f64>,
    },
}

fn default_sigma2() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    #[serde(flatten)]
    pub kind: ScenarioKind,
    pub n: usize,
    #[serde(default = "default_sigma2")]
    pub sigma2: f64,
    #[serde(default)]
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn new(kind: ScenarioKind, n: usize) -> Self {
        Self {
            kind,
            n,
            sigma2: 1.0,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Noiseless changepoints and segment means.
    pub fn truth(&self) -> Result<Truth> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Domain("scenario length must be positive".into()));
        }
        let nf = n as f64;
        let (changepoints, means) = match &self.kind {
            ScenarioKind::Null => (vec![], vec![0.0]),
            ScenarioKind::Alternating { changes } => {
                if *changes >= n {
                    return Err(Error::Domain(format!("{changes} changes do not fit in {n} points")));
                }
                let tau = (1..=*changes).map(|j| j * n / (changes + 1)).collect();
                let means = (0..=*changes).map(|j| (j % 2) as f64).collect();
                (tau, means)
            }
            ScenarioKind::Hat { tau1 } => {
                let tau2 = 2 * n / 3;
                if !(1 <= *tau1 && *tau1 < tau2) {
                    return Err(Error::Domain(format!(
                        "hat needs 1 <= tau1 < floor(2n/3) = {tau2}, got {tau1}"
                    )));
                }
                (vec![*tau1, tau2], vec![0.0, (100.0 / nf).sqrt(), 0.0])
            }
            ScenarioKind::Step { tau1 } => {
                if !(1 <= *tau1 && *tau1 < n) {
                    return Err(Error::Domain(format!("step needs 1 <= tau1 < n, got {tau1}")));
                }
                (vec![*tau1], vec![0.0, (70.0 / nf).sqrt()])
            }
            ScenarioKind::Custom { tau, means } => {
                let increasing = tau.windows(2).all(|w| w[0] < w[1]);
                let in_range = tau.iter().all(|&t| 1 <= t && t < n);
                if !increasing || !in_range {
                    return Err(Error::Domain(format!(
                        "custom changepoints must be strictly increasing in 1..{n}"
                    )));
                }
                if means.len() != tau.len() + 1 || means.iter().any(|m| !m.is_finite()) {
                    return Err(Error::Domain(
                        "custom scenario needs one finite mean per segment".into(),
                    ));
                }
                (tau.clone(), means.clone())
            }
        };
        Ok(Truth { changepoints, means, n })
    }
}

/// Noiseless piecewise-constant signal.
#[derive(Clone, Debug, PartialEq)]
pub struct Truth {
    pub changepoints: Vec<usize>,
    pub means: Vec<f64>,
    pub n: usize,
}

impl Truth {
    pub fn n_changes(&self) -> usize {
        self.changepoints.len()
    }

    pub fn labels(&self) -> Vec<usize> {
        segment_labels(&self.changepoints, self.n)
    }

    pub fn signal(&self) -> Vec<f64> {
        self.labels().into_iter().map(|k| self.means[k]).collect()
    }
}

/// Signal plus iid Gaussian noise of variance `sigma2`, reproducible from `seed`.
pub fn generate(spec: &ScenarioSpec) -> Result<(Series<f64>, Truth)> {
    if !(spec.sigma2.is_finite() && spec.sigma2 >= 0.0) {
        return Err(Error::Domain(format!("invalid noise variance {}", spec.sigma2)));
    }
    let truth = spec.truth()?;
    let sd = spec.sigma2.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let values = truth
        .signal()
        .into_iter()
        .map(|f| {
            let e: f64 = StandardNormal.sample(&mut rng);
            f + sd * e
        })
        .collect();
    Ok((Series::new(values)?, truth))
}

/// Up to `count` distinct integers in `[lo, hi]`, evenly spaced on the log scale.
pub fn log_spaced_positions(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if count == 0 || lo == 0 || hi < lo {
        return Vec::new();
    }
    if count == 1 || lo == hi {
        return vec![lo];
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|k| {
            let x = (a + (b - a) * k as f64 / (count - 1) as f64).exp().round() as usize;
            x.clamp(lo, hi)
        })
        .collect();
    out.dedup();
    out
}

/// First-change positions for the hat study: log-spaced on `[1, floor(n/3)]`,
/// optionally followed by their mirror images `floor(2n/3) - tau1`.
pub fn hat_tau1_grid(n: usize, count: usize, mirrored: bool) -> Vec<usize> {
    let third = n / 3;
    let base = log_spaced_positions(1, third.max(1), count);
    if !mirrored {
        return base;
    }
    let tau2 = 2 * n / 3;
    let mut all = base.clone();
    all.extend(base.iter().filter(|&&t| t < third).map(|&t| tau2 - t));
    all.sort_unstable();
    all.dedup();
    all
}

/// Change positions for the step study: log-spaced on `[1, floor(n/2)]`.
pub fn step_tau1_grid(n: usize, count: usize) -> Vec<usize> {
    log_spaced_positions(1, (n / 2).max(1), count)
}
