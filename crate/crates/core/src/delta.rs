use std::collections::BTreeMap;

use crate::error::{positive, ImpurityError, Result};
use crate::label::ClassId;

/// One changed class: its mass before the change and the positive increase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta {
    pub current: f64,
    pub increase: f64,
}

/// A batch of simultaneous per-class increases, used by the batch update
/// formulas. Entries iterate in class-id order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DeltaSet {
    entries: BTreeMap<ClassId, Delta>,
    total_increase: f64,
}

impl DeltaSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records that `class` grows from `current` by `increase`. Re-inserting a
    /// class replaces its previous entry.
    pub fn insert(&mut self, class: ClassId, current: f64, increase: f64) -> Result<()> {
        if !positive(increase) {
            return Err(ImpurityError::NonPositiveMass(increase));
        }
        if current < 0.0 || current.is_nan() {
            return Err(ImpurityError::NegativeCount(current));
        }
        if let Some(old) = self.entries.insert(class, Delta { current, increase }) {
            self.total_increase -= old.increase;
        }
        self.total_increase += increase;
        Ok(())
    }

    pub fn with(mut self, class: ClassId, current: f64, increase: f64) -> Result<Self> {
        self.insert(class, current, increase)?;
        Ok(self)
    }

    pub fn total_increase(&self) -> f64 {
        self.total_increase
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClassId, Delta)> + '_ {
        self.entries.iter().map(|(&c, &d)| (c, d))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
