//! Gini index and entropy over the most recent `capacity` events.
//!
//! Each event costs one decrement (when the window is full) and one
//! increment on both accumulators. The window holds at most `capacity`
//! elements: the oldest is evicted *before* the new one is inserted.

use std::collections::VecDeque;

use crate::counts::ClassCounts;
use crate::entropy::EntropyState;
use crate::error::{ImpurityError, Result};
use crate::gini::GiniState;
use crate::label::ClassId;
use crate::Metrics;

#[derive(Debug, Clone, PartialEq)]
pub struct SlidingWindowEstimator {
    capacity: usize,
    window: VecDeque<ClassId>,
    counts: ClassCounts,
    gini: GiniState,
    entropy: EntropyState,
    refresh_period: u64,
    events_since_refresh: u64,
}

impl SlidingWindowEstimator {
    /// `refresh_period = 0` disables the periodic exact recomputation.
    pub fn new(capacity: usize, refresh_period: u64) -> Result<Self> {
        if capacity == 0 {
            return Err(ImpurityError::ZeroCapacity);
        }
        Ok(SlidingWindowEstimator {
            capacity,
            window: VecDeque::with_capacity(capacity),
            counts: ClassCounts::new(),
            gini: GiniState::EMPTY,
            entropy: EntropyState::EMPTY,
            refresh_period,
            events_since_refresh: 0,
        })
    }

    /// Restores an estimator from its persisted parts. Class counts are
    /// rebuilt from the window contents; the metric states are taken as given
    /// so a restored estimator continues bit-for-bit.
    pub fn from_parts(
        capacity: usize,
        refresh_period: u64,
        events_since_refresh: u64,
        window: Vec<ClassId>,
        gini: GiniState,
        entropy: EntropyState,
    ) -> Result<Self> {
        let mut est = Self::new(capacity, refresh_period)?;
        if window.len() > capacity {
            return Err(ImpurityError::InconsistentState(format!(
                "window holds {} elements but capacity is {capacity}",
                window.len()
            )));
        }
        let len = window.len() as f64;
        if gini.total() != len || entropy.total() != len {
            return Err(ImpurityError::InconsistentState(format!(
                "metric totals ({}, {}) disagree with window length {len}",
                gini.total(),
                entropy.total()
            )));
        }
        for &class in &window {
            est.counts.increment(class);
        }
        est.window = window.into();
        est.gini = gini;
        est.entropy = entropy;
        est.events_since_refresh = events_since_refresh;
        Ok(est)
    }

    pub fn observe(&mut self, class: ClassId) {
        if self.window.len() >= self.capacity {
            let oldest = self.window.pop_front().expect("capacity is at least 1");
            let after = self
                .counts
                .decrement(oldest)
                .expect("evicted class is counted in the window");
            self.gini = self.gini.dec(after).expect("full window is nonempty");
            self.entropy = self.entropy.dec(after).expect("full window is nonempty");
        }

        let before = self.counts.increment(class);
        self.window.push_back(class);
        self.gini = self.gini.inc(before);
        self.entropy = self.entropy.inc(before);

        if self.refresh_period > 0 {
            self.events_since_refresh += 1;
            if self.events_since_refresh >= self.refresh_period {
                self.refresh();
            }
        }
    }

    /// Recomputes both metrics exactly from the window's class counts.
    pub fn refresh(&mut self) {
        self.gini = GiniState::from_counts(&self.counts);
        self.entropy = EntropyState::from_counts(&self.counts);
        self.events_since_refresh = 0;
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            gini: self.gini.value(),
            entropy: self.entropy.value(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn refresh_period(&self) -> u64 {
        self.refresh_period
    }

    pub fn events_since_refresh(&self) -> u64 {
        self.events_since_refresh
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    /// Window contents, oldest first.
    pub fn window(&self) -> impl ExactSizeIterator<Item = ClassId> + '_ {
        self.window.iter().copied()
    }

    pub fn counts(&self) -> &ClassCounts {
        &self.counts
    }

    pub fn gini_state(&self) -> GiniState {
        self.gini
    }

    pub fn entropy_state(&self) -> EntropyState {
        self.entropy
    }
}
