//! Incremental Gini index and Shannon entropy for labeled data streams.
//!
//! The accumulators ([`GiniState`], [`EntropyState`]) advance a two-number
//! summary of a sample in constant time as elements enter, leave, grow or
//! merge. The estimators build on them: [`SlidingWindowEstimator`] tracks the
//! last `w` events and [`FadingEstimator`] discounts history by a fading
//! factor. [`gini_exact`] and [`entropy_exact`] evaluate the definitions
//! directly and serve as the reference for everything else.

pub mod counts;
pub mod delta;
pub mod entropy;
pub mod error;
pub mod exact;
pub mod fading;
pub mod gini;
pub mod label;
pub mod window;

pub use counts::ClassCounts;
pub use delta::{Delta, DeltaSet};
pub use entropy::EntropyState;
pub use error::{ImpurityError, Result};
pub use exact::{entropy_exact, gini_exact, rescale_entropy, sum_squares};
pub use fading::FadingEstimator;
pub use gini::GiniState;
pub use label::{ClassId, LabelInterner};
pub use window::SlidingWindowEstimator;

/// A Gini / entropy reading, both already clamped into their valid ranges.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Metrics {
    pub gini: f64,
    /// Bits.
    pub entropy: f64,
}

impl Metrics {
    pub fn from_counts(counts: &ClassCounts) -> Self {
        Metrics {
            gini: gini_exact(counts),
            entropy: entropy_exact(counts),
        }
    }
}
