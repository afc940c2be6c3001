// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::{bic, exactness_mismatches, ms, random_length, random_series};
use msfpop::oracle::brute_force_segment;
use msfpop::{evaluate_criterion, msfpop_segment, pelt_segment, PruningBound, SamplerSpec, Series};
use proptest::prelude::*;

#[test]
fn multiscale_solvers_match_enumeration() {
    for seed in 0..200u64 {
        let n = random_length(seed, 2, 12);
        let series = random_series(seed, n);
        let bad = exactness_mismatches(&series, &ms(n), seed);
        assert!(bad.is_empty(), "seed {seed}, n {n}: {bad:#?}");
    }
}

#[test]
fn bic_solvers_match_enumeration() {
    for seed in 0..200u64 {
        let n = random_length(seed, 2, 12);
        let series = random_series(seed + 10_000, n);
        let bad = exactness_mismatches(&series, &bic(n), seed);
        assert!(bad.is_empty(), "seed {seed}, n {n}: {bad:#?}");
    }
}

#[test]
fn reported_objective_matches_direct_evaluation() {
    for seed in 0..50u64 {
        let series = random_series(seed, 60);
        let model = ms(60);
        let seg = msfpop_segment(&series, &model, SamplerSpec::default()).unwrap();
        let direct = evaluate_criterion(&series, &model, &seg.changepoints).unwrap();
        assert!(
            (seg.objective - direct).abs() < 1e-9 * direct.abs().max(1.0),
            "{} vs {direct} {:?}",
            seg.objective,
            seg.changepoints
        );
    }
}

#[test]
fn weighted_series_matches_enumeration() {
    for seed in 0..40u64 {
        let base = random_series(seed, 9);
        let weights: Vec<f64> = (0..9).map(|i| 0.5 + ((i as u64 * 7 + seed) % 5) as f64 * 0.4).collect();
        let series = Series::with_weights(base.values().to_vec(), weights).unwrap();
        let model = ms(9);
        let reference = brute_force_segment(&series, &model).unwrap();
        for seg in [
            msfpop_segment(&series, &model, SamplerSpec::all()).unwrap(),
            msfpop_segment(&series, &model, SamplerSpec::default()).unwrap(),
            pelt_segment(&series, &model, PruningBound::adaptive()).unwrap(),
        ] {
            assert_eq!(seg.changepoints, reference.changepoints);
            assert!((seg.objective - reference.objective).abs() < 1e-9 * reference.objective.abs().max(1.0));
        }
    }
}

#[test]
fn pruned_solvers_agree_at_moderate_length() {
    for seed in 0..20u64 {
        let series = random_series(seed, 400);
        let model = ms(400);
        let op = pelt_segment(&series, &model, PruningBound::none()).unwrap();
        for seg in [
            msfpop_segment(&series, &model, SamplerSpec::all()).unwrap(),
            msfpop_segment(&series, &model, SamplerSpec::rand(1, seed).unwrap()).unwrap(),
            msfpop_segment(&series, &model, SamplerSpec::rand(3, seed).unwrap()).unwrap(),
            pelt_segment(&series, &model, PruningBound::constant()).unwrap(),
            pelt_segment(&series, &model, PruningBound::adaptive()).unwrap(),
        ] {
            assert_eq!(seg.changepoints, op.changepoints, "seed {seed}");
            assert!(
                (seg.objective - op.objective).abs() < 1e-9 * op.objective.abs(),
                "{} vs {}",
                seg.objective,
                op.objective
            );
        }
    }
}

#[test]
fn f32_agrees_with_f64_on_clear_steps() {
    let values: Vec<f64> = (0..90)
        .map(|i| ((i / 30) % 2) as f64 * 6.0 + ((i * 13 % 7) as f64 - 3.0) * 0.1)
        .collect();
    let s64 = Series::new(values.clone()).unwrap();
    let s32 = Series::new(values.iter().map(|&v| v as f32).collect()).unwrap();
    let m32 = msfpop::PenaltyModel::<f32>::multiscale(90, 2.25, 9.0).unwrap();
    let a = msfpop_segment(&s64, &ms(90), SamplerSpec::default()).unwrap();
    let b = msfpop_segment(&s32, &m32, SamplerSpec::default()).unwrap();
    assert_eq!(a.changepoints, vec![30, 60]);
    assert_eq!(a.changepoints, b.changepoints);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampler_choice_never_changes_the_optimum(seed in any::<u64>(), n in 2usize..80, k in 1usize..4) {
        let series = random_series(seed, n);
        let model = ms(n);
        let all = msfpop_segment(&series, &model, SamplerSpec::all()).unwrap();
        let sampled = msfpop_segment(&series, &model, SamplerSpec::rand(k, seed).unwrap()).unwrap();
        prop_assert_eq!(&all.changepoints, &sampled.changepoints);
        prop_assert!((all.objective - sampled.objective).abs() <= 1e-9 * all.objective.abs().max(1.0));
    }

    #[test]
    fn optimum_is_invariant_to_shifting_the_data(seed in any::<u64>(), n in 2usize..40, shift in -50.0f64..50.0) {
        let series = random_series(seed, n);
        let shifted = Series::new(series.values().iter().map(|v| v + shift).collect()).unwrap();
        let model = ms(n);
        let a = pelt_segment(&series, &model, PruningBound::none()).unwrap();
        let b = msfpop_segment(&shifted, &model, SamplerSpec::default()).unwrap();
        prop_assert_eq!(a.changepoints, b.changepoints);
    }
}

#[test]
fn functional_pruning_matches_unpruned_recursion() {
    for seed in 0..300u64 {
        let n = random_length(seed, 20, 120);
        let series = random_series(seed + 50_000, n);
        for model in [ms(n), bic(n)] {
            let op = pelt_segment(&series, &model, PruningBound::none()).unwrap();
            for sampler in [SamplerSpec::all(), SamplerSpec::rand(1, seed).unwrap()] {
                let seg = msfpop_segment(&series, &model, sampler).unwrap();
                assert_eq!(seg.changepoints, op.changepoints, "seed {seed} n {n}");
                assert!((seg.objective - op.objective).abs() < 1e-9 * op.objective.abs().max(1.0));
            }
        }
    }
}
