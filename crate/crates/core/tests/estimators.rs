mod common;

use std::collections::VecDeque;

use common::brute_from_labels;
use impurity_core::{ClassId, EntropyState, FadingEstimator, GiniState, SlidingWindowEstimator};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn stream(seed: u64, len: usize, k: u32) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

fn check_window(labels: &[u32], w: usize, refresh: u64, tol: f64) {
    let mut est = SlidingWindowEstimator::new(w, refresh).unwrap();
    let mut shadow: VecDeque<u32> = VecDeque::new();
    for (t, &l) in labels.iter().enumerate() {
        est.observe(ClassId::new(l));
        shadow.push_back(l);
        if shadow.len() > w {
            shadow.pop_front();
        }
        assert!(est.len() <= w);
        let (g, h) = brute_from_labels(shadow.make_contiguous());
        let m = est.metrics();
        assert!(
            (m.gini - g).abs() <= tol && (m.entropy - h).abs() <= tol,
            "w={w} refresh={refresh} t={t}: ({}, {}) vs ({g}, {h})",
            m.gini,
            m.entropy
        );
    }
}

#[test]
fn window_tracks_contents_without_refresh() {
    for (seed, k, w) in [(1, 2, 10), (2, 10, 10), (3, 10, 200), (4, 50, 200)] {
        check_window(&stream(seed, 20_000, k), w, 0, 1e-6);
    }
}

#[test]
fn window_tracks_contents_with_refresh() {
    for (seed, k, w) in [(5, 2, 10), (6, 10, 200)] {
        check_window(&stream(seed, 20_000, k), w, 1_000, 1e-9);
    }
}

#[test]
fn window_total_saturates_at_capacity() {
    let mut est = SlidingWindowEstimator::new(37, 0).unwrap();
    for (t, l) in stream(8, 500, 5).into_iter().enumerate() {
        est.observe(ClassId::new(l));
        assert_eq!(est.len(), (t + 1).min(37));
        assert_eq!(est.counts().total(), est.len() as f64);
        assert_eq!(est.gini_state().total(), est.len() as f64);
        assert_eq!(est.entropy_state().total(), est.len() as f64);
    }
}

#[test]
fn new_classes_can_appear_mid_stream() {
    let mut est = SlidingWindowEstimator::new(4, 0).unwrap();
    let labels = [0, 0, 0, 0, 1, 2, 3, 9];
    for &l in &labels {
        est.observe(ClassId::new(l));
    }
    let (g, h) = brute_from_labels(&labels[4..]);
    assert!((est.metrics().gini - g).abs() < 1e-12);
    assert!((est.metrics().entropy - h).abs() < 1e-12);
}

proptest! {
    #[test]
    fn window_traces_are_deterministic(labels in prop::collection::vec(0u32..6, 1..300), w in 1usize..20) {
        let trace = |labels: &[u32]| {
            let mut est = SlidingWindowEstimator::new(w, 0).unwrap();
            labels
                .iter()
                .map(|&l| {
                    est.observe(ClassId::new(l));
                    let m = est.metrics();
                    (m.gini.to_bits(), m.entropy.to_bits())
                })
                .collect::<Vec<_>>()
        };
        prop_assert_eq!(trace(&labels), trace(&labels));
    }

    #[test]
    fn fading_metrics_stay_in_range(labels in prop::collection::vec(0u32..8, 1..500), alpha in 0.05f64..=1.0) {
        let mut est = FadingEstimator::new(alpha).unwrap();
        for &l in &labels {
            est.observe(ClassId::new(l));
            let m = est.metrics();
            let k = est.num_classes() as f64;
            prop_assert!((0.0..=1.0).contains(&m.gini));
            prop_assert!(m.entropy >= 0.0 && m.entropy <= k.log2() + 1e-9);
        }
    }
}

#[test]
fn fading_with_unit_alpha_is_the_exact_incremental_trace() {
    for (seed, k) in [(11, 2), (12, 10), (13, 100)] {
        let mut est = FadingEstimator::new(1.0).unwrap();
        let mut counts = vec![0.0; k as usize];
        let mut g = GiniState::EMPTY;
        let mut h = EntropyState::EMPTY;
        for l in stream(seed, 10_000, k) {
            est.observe(ClassId::new(l));
            g = g.inc(counts[l as usize]);
            h = h.inc(counts[l as usize]);
            counts[l as usize] += 1.0;
            assert!((est.raw_gini() - g.raw_value()).abs() <= 1e-9);
            assert!((est.raw_entropy() - h.raw_value()).abs() <= 1e-9);
        }
    }
}

#[test]
fn fading_pure_stream_is_a_fixpoint() {
    for alpha in [0.01, 0.5, 0.9, 0.99, 1.0] {
        let mut est = FadingEstimator::new(alpha).unwrap();
        for _ in 0..1_000 {
            est.observe(ClassId::new(3));
            assert_eq!(est.raw_gini(), 0.0);
            assert_eq!(est.raw_entropy(), 0.0);
        }
    }
}

#[test]
fn fading_traces_are_deterministic() {
    let labels = stream(21, 5_000, 7);
    let run = || {
        let mut est = FadingEstimator::new(0.9).unwrap();
        labels
            .iter()
            .map(|&l| {
                est.observe(ClassId::new(l));
                (est.raw_gini().to_bits(), est.raw_entropy().to_bits())
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}

#[test]
fn fading_restore_continues_identically() {
    let labels = stream(22, 2_000, 5);
    let mut full = FadingEstimator::new(0.95).unwrap();
    let mut first = FadingEstimator::new(0.95).unwrap();
    for &l in &labels[..1_000] {
        full.observe(ClassId::new(l));
        first.observe(ClassId::new(l));
    }
    let mut resumed = FadingEstimator::from_parts(
        first.alpha(),
        first.class_counts().to_vec(),
        first.raw_gini(),
        first.raw_entropy(),
    )
    .unwrap();
    assert_eq!(resumed, first);
    for &l in &labels[1_000..] {
        full.observe(ClassId::new(l));
        resumed.observe(ClassId::new(l));
    }
    assert_eq!(resumed, full);
}
