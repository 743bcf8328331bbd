//! Timing of incremental estimator updates against recomputing the metrics
//! from class counts after every event.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use impurity_core::{ClassCounts, ClassId, FadingEstimator, Metrics, SlidingWindowEstimator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMode {
    Window,
    Fading,
}

impl BenchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchMode::Window => "window",
            BenchMode::Fading => "fading",
        }
    }
}

impl fmt::Display for BenchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "window" => Ok(BenchMode::Window),
            "fading" => Ok(BenchMode::Fading),
            other => Err(format!("unknown bench mode `{other}` (expected window or fading)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub classes: usize,
    pub events: usize,
    pub modes: Vec<BenchMode>,
    pub window_size: usize,
    pub alpha: f64,
    /// Minimum number of passes per timing; the fastest pass is reported.
    pub repeats: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub const MIN_EVENTS: usize = 10_000;

    pub fn new(classes: usize, events: usize) -> Self {
        BenchConfig {
            classes,
            events,
            modes: vec![BenchMode::Window, BenchMode::Fading],
            window_size: 1_000,
            alpha: 0.99,
            repeats: 3,
            seed: 0x5eed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.classes < 2 {
            return Err(CliError::Usage("--classes must be at least 2".into()));
        }
        if self.events < Self::MIN_EVENTS {
            return Err(CliError::Usage(format!(
                "--events must be at least {}",
                Self::MIN_EVENTS
            )));
        }
        if self.modes.is_empty() || self.repeats == 0 || self.window_size == 0 {
            return Err(CliError::Usage("nothing to benchmark".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub mode: BenchMode,
    pub classes: usize,
    pub events: usize,
    /// Nanoseconds per event for the incremental estimator.
    pub incremental_ns: f64,
    /// Nanoseconds per event when recomputing from counts.
    pub recompute_ns: f64,
}

impl BenchRow {
    pub fn ratio(&self) -> f64 {
        self.recompute_ns / self.incremental_ns
    }
}

pub const REPORT_HEADER: &str = "mode\tclasses\tevents\tincremental_ns\trecompute_ns\tratio";

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}",
            self.mode,
            self.classes,
            self.events,
            self.incremental_ns,
            self.recompute_ns,
            self.ratio()
        )
    }
}

/// Uniform random labels over `classes` classes.
pub fn synthetic_stream(classes: usize, events: usize, seed: u64) -> Vec<ClassId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..events)
        .map(|_| ClassId::new(rng.gen_range(0..classes as u32)))
        .collect()
}

/// Fastest pass, in ns per event. Cheap passes are repeated until about
/// `MIN_SAMPLE_TIME` has elapsed so that scheduler noise averages out.
fn fastest(repeats: usize, events: usize, mut pass: impl FnMut() -> Metrics) -> f64 {
    const MIN_SAMPLE_TIME: Duration = Duration::from_millis(200);
    const MAX_PASSES: usize = 200;
    let started = Instant::now();
    let mut best = f64::INFINITY;
    let mut passes = 0;
    while passes < repeats || (started.elapsed() < MIN_SAMPLE_TIME && passes < MAX_PASSES) {
        let start = Instant::now();
        black_box(pass());
        best = best.min(start.elapsed().as_nanos() as f64 / events as f64);
        passes += 1;
    }
    best
}

fn time_window(labels: &[ClassId], w: usize, repeats: usize) -> f64 {
    fastest(repeats, labels.len(), || {
        let mut est = SlidingWindowEstimator::new(w, 0).expect("validated window size");
        for &l in labels {
            est.observe(l);
            black_box(est.metrics());
        }
        est.metrics()
    })
}

fn time_fading(labels: &[ClassId], alpha: f64, repeats: usize) -> f64 {
    fastest(repeats, labels.len(), || {
        let mut est = FadingEstimator::new(alpha).expect("validated alpha");
        for &l in labels {
            est.observe(l);
            black_box(est.metrics());
        }
        est.metrics()
    })
}

/// Recompute baseline for a window: the same count bookkeeping, followed by
/// a full evaluation of both metrics after every event.
fn time_window_recompute(labels: &[ClassId], w: usize, repeats: usize) -> f64 {
    fastest(repeats, labels.len(), || {
        let mut counts = ClassCounts::new();
        let mut last = Metrics::default();
        for (t, &l) in labels.iter().enumerate() {
            if t >= w {
                counts.decrement(labels[t - w]).expect("evicted label is counted");
            }
            counts.increment(l);
            last = black_box(Metrics::from_counts(&counts));
        }
        last
    })
}

/// Recompute baseline for the unbounded stream.
fn time_unbounded_recompute(labels: &[ClassId], repeats: usize) -> f64 {
    fastest(repeats, labels.len(), || {
        let mut counts = ClassCounts::new();
        let mut last = Metrics::default();
        for &l in labels {
            counts.increment(l);
            last = black_box(Metrics::from_counts(&counts));
        }
        last
    })
}

pub fn bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let labels = synthetic_stream(cfg.classes, cfg.events, cfg.seed);
    let rows = cfg
        .modes
        .iter()
        .map(|&mode| {
            let (incremental_ns, recompute_ns) = match mode {
                BenchMode::Window => (
                    time_window(&labels, cfg.window_size, cfg.repeats),
                    time_window_recompute(&labels, cfg.window_size, cfg.repeats),
                ),
                BenchMode::Fading => (
                    time_fading(&labels, cfg.alpha, cfg.repeats),
                    time_unbounded_recompute(&labels, cfg.repeats),
                ),
            };
            BenchRow {
                mode,
                classes: cfg.classes,
                events: cfg.events,
                incremental_ns,
                recompute_ns,
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_parameters() {
        assert!(BenchConfig::new(1, 100_000).validate().is_err());
        assert!(BenchConfig::new(10, 9_999).validate().is_err());
        assert!(BenchConfig::new(2, 10_000).validate().is_ok());
    }

    #[test]
    fn report_has_one_row_per_mode() {
        let mut cfg = BenchConfig::new(10, 10_000);
        cfg.repeats = 1;
        let rows = bench(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!(row.incremental_ns > 0.0 && row.recompute_ns > 0.0);
            assert_eq!(row.to_string().split('\t').count(), REPORT_HEADER.split('\t').count());
        }
    }

    #[test]
    fn synthetic_stream_is_seeded() {
        assert_eq!(synthetic_stream(5, 100, 1), synthetic_stream(5, 100, 1));
        assert!(synthetic_stream(5, 1_000, 1).iter().all(|c| c.index() < 5));
    }
}
