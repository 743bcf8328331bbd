//! Gini index and entropy with a fading factor applied to the previous
//! metric value at each step. Class counts stay unweighted integers, so
//! `alpha = 1` reduces exactly to the unbounded incremental estimator.

use crate::error::{ImpurityError, Result};
use crate::exact::{rescaled, xlog2};
use crate::label::ClassId;
use crate::Metrics;

#[derive(Debug, Clone, PartialEq)]
pub struct FadingEstimator {
    alpha: f64,
    n: u64,
    class_counts: Vec<u64>,
    gini: f64,
    entropy: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(ImpurityError::InvalidAlpha(alpha))
    }
}

impl FadingEstimator {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(FadingEstimator {
            alpha,
            n: 0,
            class_counts: Vec::new(),
            gini: 0.0,
            entropy: 0.0,
        })
    }

    /// Restores an estimator from per-class counts (indexed by class id) and
    /// raw metric values.
    pub fn from_parts(alpha: f64, class_counts: Vec<u64>, gini: f64, entropy: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let n = class_counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or_else(|| ImpurityError::InconsistentState("count overflow".into()))?;
        Ok(FadingEstimator {
            alpha,
            n,
            class_counts,
            gini,
            entropy,
        })
    }

    pub fn observe(&mut self, class: ClassId) {
        let idx = class.index();
        if idx >= self.class_counts.len() {
            self.class_counts.resize(idx + 1, 0);
        }
        let n = self.n as f64;
        let ni = self.class_counts[idx] as f64;
        let next = n + 1.0;

        self.gini = 1.0 - (n * n * (1.0 - self.alpha * self.gini) + 2.0 * ni + 1.0) / (next * next);
        self.entropy = rescaled(n / next, self.alpha * self.entropy) - xlog2((ni + 1.0) / next)
            + xlog2(ni / next);

        self.n += 1;
        self.class_counts[idx] += 1;
    }

    /// Clamped metrics: Gini into `[0, 1]`, entropy at 0 from below.
    pub fn metrics(&self) -> Metrics {
        Metrics {
            gini: self.gini.clamp(0.0, 1.0),
            entropy: self.entropy.max(0.0),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Number of events seen.
    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn class_count(&self, class: ClassId) -> u64 {
        self.class_counts.get(class.index()).copied().unwrap_or(0)
    }

    /// Per-class counts indexed by class id.
    pub fn class_counts(&self) -> &[u64] {
        &self.class_counts
    }

    pub fn num_classes(&self) -> usize {
        self.class_counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn raw_gini(&self) -> f64 {
        self.gini
    }

    pub fn raw_entropy(&self) -> f64 {
        self.entropy
    }
}
