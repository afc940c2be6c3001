// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::solver::{Segmentation, Series};

use super::scenario::Truth;

fn pairs(k: usize) -> f64 {
    let k = k as f64;
    k * (k - 1.0) / 2.0
}

/// Adjusted Rand index of two labelings of the same positions. Two trivial
/// labelings (one cluster each, or all singletons on both sides) score 1.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "labelings differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    let mut rows: HashMap<usize, usize> = HashMap::new();
    let mut cols: HashMap<usize, usize> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let index: f64 = joint.values().map(|&c| pairs(c)).sum();
    let sum_a: f64 = rows.values().map(|&c| pairs(c)).sum();
    let sum_b: f64 = cols.values().map(|&c| pairs(c)).sum();
    let total = pairs(n);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sum_a * sum_b / total;
    let max = (sum_a + sum_b) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// Per-replicate accuracy of an estimated segmentation against the truth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplicateMetrics {
    pub n_changes: usize,
    pub delta_d: usize,
    pub mse: f64,
    pub ari: f64,
}

pub fn compute_metrics(truth: &Truth, est: &Segmentation<f64>, series: &Series<f64>) -> Result<ReplicateMetrics> {
    let n = series.len();
    if truth.n != n {
        return Err(Error::Domain(format!(
            "truth covers {} points but the series has {n}",
            truth.n
        )));
    }
    if est.changepoints.last().is_some_and(|&t| t >= n) || est.means.len() != est.changepoints.len() + 1 {
        return Err(Error::Domain("estimated segmentation does not fit the series".into()));
    }
    let fitted = est.fitted(n);
    let signal = truth.signal();
    let mse = fitted.iter().zip(&signal).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / n as f64;
    let ari = adjusted_rand_index(&truth.labels(), &est.labels(n))?;
    Ok(ReplicateMetrics {
        n_changes: est.n_changes(),
        delta_d: est.n_changes().abs_diff(truth.n_changes()),
        mse,
        ari,
    })
}

/// `log2(r2_a / r2_b)`, absent when either proportion is zero.
pub fn delta_r2(r2_a: f64, r2_b: f64) -> Option<f64> {
    (r2_a > 0.0 && r2_b > 0.0).then(|| (r2_a / r2_b).log2())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Better {
    Lower,
    Higher,
}

/// Percentage of replicates on which each method is at least as good as every
/// other method. `scores[m][r]` is method `m`'s score on replicate `r`.
pub fn ae_pct(scores: &[Vec<f64>], better: Better) -> Result<Vec<f64>> {
    let Some(first) = scores.first() else {
        return Ok(Vec::new());
    };
    let reps = first.len();
    if scores.iter().any(|s| s.len() != reps) {
        return Err(Error::Domain("methods have different replicate counts".into()));
    }
    if reps == 0 {
        return Ok(vec![0.0; scores.len()]);
    }
    let mut wins = vec![0usize; scores.len()];
    for r in 0..reps {
        let column = scores.iter().map(|s| s[r]);
        let best = match better {
            Better::Lower => column.fold(f64::INFINITY, f64::min),
            Better::Higher => column.fold(f64::NEG_INFINITY, f64::max),
        };
        for (m, s) in scores.iter().enumerate() {
            if s[r] == best {
                wins[m] += 1;
            }
        }
    }
    Ok(wins.into_iter().map(|w| 100.0 * w as f64 / reps as f64).collect())
}
