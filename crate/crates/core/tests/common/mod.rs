// SPDX-License-Identifier: MIT OR Apache-2.0

#![allow(dead_code)]

use msfpop::oracle::{brute_force_segment, grid_living_sets};
use msfpop::{msfpop_segment, pelt_segment, MsFpop, PenaltyModel, PruningBound, SamplerSpec, Series};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const BETA: f64 = 2.25;
pub const GAMMA: f64 = 9.0;

pub fn ms(n: usize) -> PenaltyModel<f64> {
    PenaltyModel::multiscale(n, BETA, GAMMA).unwrap()
}

pub fn bic(n: usize) -> PenaltyModel<f64> {
    PenaltyModel::bic(n, None).unwrap()
}

/// Gaussian noise around a few random mean levels. Continuous values make
/// the optimal segmentation unique with probability one.
pub fn random_series(seed: u64, n: usize) -> Series<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = 0.0;
    let values = (0..n)
        .map(|_| {
            if rng.random_bool(0.15) {
                level = rng.random_range(-4.0..4.0);
            }
            level + rng.sample::<f64, _>(StandardNormal)
        })
        .collect();
    Series::new(values).unwrap()
}

pub fn random_length(seed: u64, lo: usize, hi: usize) -> usize {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed).random_range(lo..=hi)
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Every exact solver against enumeration on one series; returns mismatches.
pub fn exactness_mismatches(series: &Series<f64>, model: &PenaltyModel<f64>, seed: u64) -> Vec<String> {
    let reference = brute_force_segment(series, model).unwrap();
    let mut runs = vec![
        ("msfpop all", msfpop_segment(series, model, SamplerSpec::all()).unwrap()),
        ("pelt none", pelt_segment(series, model, PruningBound::none()).unwrap()),
        (
            "pelt constant",
            pelt_segment(series, model, PruningBound::constant()).unwrap(),
        ),
        (
            "pelt constant general",
            pelt_segment(series, model, PruningBound::constant_general()).unwrap(),
        ),
        (
            "pelt adaptive",
            pelt_segment(series, model, PruningBound::adaptive()).unwrap(),
        ),
    ];
    for k in 1..=3 {
        let spec = SamplerSpec::rand(k, seed).unwrap();
        runs.push(("msfpop rand", msfpop_segment(series, model, spec).unwrap()));
    }
    runs.into_iter()
        .filter(|(_, seg)| !rel_close(seg.objective, reference.objective) || seg.changepoints != reference.changepoints)
        .map(|(name, seg)| {
            format!(
                "{name}: objective {} vs {}, changepoints {:?} vs {:?}",
                seg.objective, reference.objective, seg.changepoints, reference.changepoints
            )
        })
        .collect()
}

/// Grid points where a candidate is a pointwise minimiser but lies outside
/// the maintained living set (or the candidate has already been discarded).
pub fn containment_violations(
    series: &Series<f64>,
    model: &PenaltyModel<f64>,
    sampler: SamplerSpec,
    grid_count: usize,
) -> Vec<String> {
    let atlas = grid_living_sets(series, model, grid_count).unwrap();
    let mut solver = MsFpop::new(series, model, sampler).unwrap();
    let d = solver.domain();
    // root-finding error near interval ends
    let tol = 1e-9 * (d.hi - d.lo).max(1.0);
    let mut out = Vec::new();
    while solver.step().unwrap() {
        let t = solver.t();
        for s in 0..=t {
            let living = solver.active().iter().find(|c| c.s == s).map(|c| &c.living);
            for mu in atlas.members(t, s) {
                let ok = living.is_some_and(|z| z.contains_within(mu, tol));
                if !ok {
                    out.push(format!("t={t} s={s} mu={mu} living={living:?}"));
                }
            }
        }
    }
    out
}

/// Steps at which some maintained living set gained measure.
pub fn growth_violations(series: &Series<f64>, model: &PenaltyModel<f64>, sampler: SamplerSpec) -> Vec<String> {
    let mut solver = MsFpop::new(series, model, sampler).unwrap();
    let mut previous: Vec<(usize, f64)> = Vec::new();
    let mut out = Vec::new();
    while solver.step().unwrap() {
        let t = solver.t();
        for c in solver.active() {
            if let Some(&(_, before)) = previous.iter().find(|(s, _)| *s == c.s) {
                let now = c.living.measure();
                if now > before {
                    out.push(format!("t={t} s={} grew from {before} to {now}", c.s));
                }
            }
        }
        previous = solver.active().iter().map(|c| (c.s, c.living.measure())).collect();
    }
    out
}

/// Smallest value of `g(a) + g(b) - g(a + b)` for `g = ln`, over `a + b <= limit`.
pub fn log_superadditivity_floor(limit: usize) -> f64 {
    let model = PenaltyModel::<f64>::multiscale(limit, 1.0, 1.0).unwrap();
    let g: Vec<f64> = std::iter::once(0.0)
        .chain((1..=limit).map(|len| model.g_eval(len).unwrap()))
        .collect();
    let mut floor = f64::INFINITY;
    for a in 1..limit {
        for b in 1..=(limit - a) {
            floor = floor.min(g[a] + g[b] - g[a + b]);
        }
    }
    floor
}
