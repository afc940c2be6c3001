// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{domain, Result};
use crate::penalty::{PenaltyModel, PruningBound, PruningMode};
use crate::scalar::Scalar;

use super::segmentation::{backtrack, segment_means, Segmentation};
use super::series::{PrefixSums, Series};

/// Optimal partitioning with optional inequality-based pruning.
///
/// Candidate `s` is discarded at time `t` once
/// `F_s + SSE(s+1..t) - beta g(t-s) + K >= F_t`, where `K` comes from
/// `pruning`. With [`PruningMode::None`] this is the plain quadratic recursion.
pub fn pelt_segment<T: Scalar>(
    series: &Series<T>,
    model: &PenaltyModel<T>,
    pruning: PruningBound,
) -> Result<Segmentation<T>> {
    let n = series.len();
    if n == 0 {
        return domain("cannot segment an empty series");
    }
    if model.n() != n {
        return domain(format!("penalty bound to n = {} but series has {n} points", model.n()));
    }
    let alpha = model.alpha();
    let beta_g = model.weighted_length_table();
    let prefix = PrefixSums::new(series);
    // adaptive constants indexed by segment length; constant mode ignores length
    let k_table: Option<Vec<T>> = match pruning.mode {
        PruningMode::None => None,
        PruningMode::Constant => Some(vec![pruning.k(model, 1)?.unwrap_or_else(T::zero); n + 1]),
        PruningMode::Adaptive => {
            let mut table = vec![T::zero(); n + 1];
            for (len, slot) in table.iter_mut().enumerate().skip(1) {
                *slot = model.pelt_adaptive_k(len)?;
            }
            Some(table)
        }
    };

    let mut costs = Vec::with_capacity(n + 1);
    costs.push(-alpha);
    let mut cp = vec![0usize; n + 1];

    // structure-of-arrays candidate store, compacted after each pruning pass
    let mut cand_s: Vec<usize> = vec![0];
    let mut cand_f: Vec<T> = vec![-alpha];
    let mut cand_w: Vec<T> = vec![T::zero()];
    let mut cand_wy: Vec<T> = vec![T::zero()];
    let mut cand_wyy: Vec<T> = vec![T::zero()];
    let mut vals: Vec<T> = Vec::new();

    for t in 1..=n {
        let (wt, wyt, wyyt) = (prefix.w[t], prefix.wy[t], prefix.wyy[t]);
        vals.clear();
        vals.extend((0..cand_s.len()).map(|i| {
            let sw = wt - cand_w[i];
            let swy = wyt - cand_wy[i];
            let sse = (wyyt - cand_wyy[i]) - swy * swy / sw;
            cand_f[i] + sse - beta_g[t - cand_s[i]]
        }));

        let mut best = vals[0];
        let mut arg = 0;
        for (i, &v) in vals.iter().enumerate().skip(1) {
            if v < best {
                best = v;
                arg = i;
            }
        }
        let f_t = best + alpha;
        costs.push(f_t);
        cp[t] = cand_s[arg];

        if let Some(k) = &k_table {
            let mut keep = 0;
            for i in 0..cand_s.len() {
                if vals[i] + k[t - cand_s[i]] < f_t {
                    cand_s[keep] = cand_s[i];
                    cand_f[keep] = cand_f[i];
                    cand_w[keep] = cand_w[i];
                    cand_wy[keep] = cand_wy[i];
                    cand_wyy[keep] = cand_wyy[i];
                    keep += 1;
                }
            }
            cand_s.truncate(keep);
            cand_f.truncate(keep);
            cand_w.truncate(keep);
            cand_wy.truncate(keep);
            cand_wyy.truncate(keep);
        }
        cand_s.push(t);
        cand_f.push(f_t);
        cand_w.push(wt);
        cand_wy.push(wyt);
        cand_wyy.push(wyyt);
    }

    let changepoints = backtrack(&cp, n)?;
    let means = segment_means(series, &changepoints)?;
    Ok(Segmentation {
        changepoints,
        means,
        objective: costs[n] + alpha,
    })
}
