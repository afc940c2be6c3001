// SPDX-License-Identifier: MIT OR Apache-2.0

//! Functional pruning under a length-dependent penalty.
//!
//! Each living candidate `s` keeps its cost as a quadratic in the last
//! segment mean together with a living set of means on which it may still be
//! optimal. At every step the set is intersected with the regions where `s`
//! beats a few sampled newer candidates; a newborn candidate starts from the
//! full domain minus the regions where some older candidate beats it for all
//! future times. A candidate whose set has zero width is discarded for good.

use crate::cost::{Candidate, Interval, IntervalSet};
use crate::error::{domain, Error, Result};
use crate::penalty::PenaltyModel;
use crate::scalar::Scalar;

use super::sampler::SamplerSpec;
use super::segmentation::{backtrack, segment_means, Segmentation};
use super::series::Series;

/// Step-by-step functional pruning solver. Use [`msfpop_segment`] for a
/// one-shot solve; drive [`MsFpop::step`] directly to inspect living sets.
#[derive(Debug)]
pub struct MsFpop<'a, T> {
    series: &'a Series<T>,
    model: PenaltyModel<T>,
    sampler: SamplerSpec,
    beta_g: Vec<T>,
    domain: Interval<T>,
    t: usize,
    costs: Vec<T>,
    cp: Vec<usize>,
    active: Vec<Candidate<T>>,
    picks: Vec<usize>,
    visited: u64,
}

impl<'a, T: Scalar> MsFpop<'a, T> {
    pub fn new(series: &'a Series<T>, model: &PenaltyModel<T>, sampler: SamplerSpec) -> Result<Self> {
        if series.is_empty() {
            return domain("cannot segment an empty series");
        }
        if model.n() != series.len() {
            return domain(format!(
                "penalty bound to n = {} but series has {} points",
                model.n(),
                series.len()
            ));
        }
        let domain = series.domain();
        let f0 = -model.alpha();
        let first = Candidate::fresh(0, f0 + model.alpha(), IntervalSet::from_interval(domain));
        let n = series.len();
        let mut costs = Vec::with_capacity(n + 1);
        costs.push(f0);
        let mut cp = Vec::with_capacity(n + 1);
        cp.push(0);
        Ok(Self {
            series,
            model: *model,
            sampler,
            beta_g: model.weighted_length_table(),
            domain,
            t: 0,
            costs,
            cp,
            active: vec![first],
            picks: Vec::new(),
            visited: 0,
        })
    }

    /// Current time: number of observations absorbed so far.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn is_done(&self) -> bool {
        self.t == self.series.len()
    }

    /// Living candidates after the last step, ordered by birth index.
    pub fn active(&self) -> &[Candidate<T>] {
        &self.active
    }

    /// Optimal costs `F_0..F_t` (with `F_0 = -alpha`).
    pub fn costs(&self) -> &[T] {
        &self.costs
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    /// Total number of candidate updates performed so far.
    pub fn candidates_visited(&self) -> u64 {
        self.visited
    }

    /// Absorbs the next observation. Returns `false` once the series is exhausted.
    pub fn step(&mut self) -> Result<bool> {
        if self.is_done() {
            return Ok(false);
        }
        let t = self.t + 1;
        let y = self.series.values()[t - 1];
        let w = self.series.weights()[t - 1];
        let alpha = self.model.alpha();

        for c in &mut self.active {
            c.push(y, w, &self.beta_g);
        }
        self.visited += self.active.len() as u64;

        // ties go to the oldest candidate: the list is sorted by s
        let mut best: Option<(T, usize)> = None;
        for c in &self.active {
            if let Some((v, _)) = c.quad.min_on(&c.living)? {
                if best.is_none_or(|(b, _)| v < b) {
                    best = Some((v, c.s));
                }
            }
        }
        let (f_t, s_t) = best.ok_or_else(|| Error::CorruptedState(format!("no living candidate at t = {t}")))?;
        self.costs.push(f_t);
        self.cp.push(s_t);

        let mut newborn = Candidate::fresh(t, f_t + alpha, IntervalSet::from_interval(self.domain));
        for c in &self.active {
            // older candidate beats the newborn for every later time on this set
            let d = c.quad - newborn.quad + self.beta_g[c.len];
            if let Some(iv) = d.nonpositive_on(&self.domain)? {
                newborn.living.subtract_interval(&iv);
                if newborn.living.is_empty() {
                    break;
                }
            }
        }

        // futures are drawn among newer candidates that already hold at least
        // one point; against the newborn the length-reward gap is not monotone
        // in t (g(0) = g(1)), so a same-step comparison could cut a region
        // where the older candidate becomes optimal later
        let count = self.active.len();
        for i in 0..count.saturating_sub(1) {
            let futures = count - i - 1;
            self.sampler.draw(futures, t, self.active[i].s, &mut self.picks);
            let (head, tail) = self.active.split_at_mut(i + 1);
            let c = &mut head[i];
            for &k in &self.picks {
                let other = &tail[k];
                match (c.quad - other.quad).nonpositive_on(&self.domain)? {
                    Some(iv) => c.living.intersect_interval(&iv),
                    None => c.living.clear(),
                }
                if c.living.is_void() {
                    break;
                }
            }
        }

        self.active.push(newborn);
        self.active.retain(|c| !c.living.is_void());
        self.t = t;
        Ok(true)
    }

    /// Runs the remaining steps and extracts the optimal segmentation.
    pub fn finish(mut self) -> Result<Segmentation<T>> {
        while self.step()? {}
        let n = self.series.len();
        let changepoints = backtrack(&self.cp, n)?;
        let means = segment_means(self.series, &changepoints)?;
        Ok(Segmentation {
            changepoints,
            means,
            objective: self.costs[n] + self.model.alpha(),
        })
    }
}

/// Exact minimiser of the penalized criterion by functional pruning.
/// Sampling only changes how fast candidates are discarded, never the result.
pub fn msfpop_segment<T: Scalar>(
    series: &Series<T>,
    model: &PenaltyModel<T>,
    sampler: SamplerSpec,
) -> Result<Segmentation<T>> {
    MsFpop::new(series, model, sampler)?.finish()
}
