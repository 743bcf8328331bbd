use crate::error::{positive, ImpurityError, Result};
use crate::label::ClassId;

/// Per-class masses of a sample together with their cached total.
///
/// Storage is dense over class ids; a class with zero mass is treated as
/// absent and never reported by [`ClassCounts::iter`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassCounts {
    masses: Vec<f64>,
    total: f64,
    nonzero: usize,
}

impl ClassCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds counts from `(class, mass)` pairs. Repeated classes accumulate.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ClassId, f64)>,
    {
        let mut counts = Self::new();
        for (class, mass) in pairs {
            if mass < 0.0 || mass.is_nan() {
                return Err(ImpurityError::NegativeCount(mass));
            }
            if mass > 0.0 {
                counts.add(class, mass)?;
            }
        }
        Ok(counts)
    }

    /// Convenience constructor assigning ids `0..n` to the given masses.
    pub fn from_masses(masses: &[f64]) -> Result<Self> {
        Self::from_pairs(
            masses
                .iter()
                .enumerate()
                .map(|(i, &m)| (ClassId::new(i as u32), m)),
        )
    }

    pub fn get(&self, class: ClassId) -> f64 {
        self.masses.get(class.index()).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// Number of classes with nonzero mass.
    pub fn num_classes(&self) -> usize {
        self.nonzero
    }

    pub fn is_empty(&self) -> bool {
        self.nonzero == 0
    }

    /// Nonzero entries in class-id order.
    pub fn iter(&self) -> impl Iterator<Item = (ClassId, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(i, &m)| (ClassId::new(i as u32), m))
    }

    /// Adds `mass > 0` to a class and returns the class mass before the change.
    pub fn add(&mut self, class: ClassId, mass: f64) -> Result<f64> {
        if !positive(mass) {
            return Err(ImpurityError::NonPositiveMass(mass));
        }
        let idx = class.index();
        if idx >= self.masses.len() {
            self.masses.resize(idx + 1, 0.0);
        }
        let before = self.masses[idx];
        if before == 0.0 {
            self.nonzero += 1;
        }
        self.masses[idx] = before + mass;
        self.total += mass;
        Ok(before)
    }

    /// Removes `mass` from a class and returns the class mass after the change.
    /// A class whose mass reaches zero is dropped.
    pub fn remove(&mut self, class: ClassId, mass: f64) -> Result<f64> {
        if !positive(mass) {
            return Err(ImpurityError::NonPositiveMass(mass));
        }
        let before = self.get(class);
        if mass > before {
            return Err(ImpurityError::MassExceedsTotal {
                mass,
                total: before,
            });
        }
        let after = before - mass;
        let slot = &mut self.masses[class.index()];
        if after == 0.0 {
            *slot = 0.0;
            self.nonzero -= 1;
        } else {
            *slot = after;
        }
        self.total -= mass;
        if self.nonzero == 0 {
            self.total = 0.0;
        }
        Ok(after)
    }

    /// Adds one occurrence and returns the count before.
    pub fn increment(&mut self, class: ClassId) -> f64 {
        self.add(class, 1.0).expect("unit mass is positive")
    }

    /// Removes one occurrence and returns the count after.
    pub fn decrement(&mut self, class: ClassId) -> Result<f64> {
        if self.get(class) < 1.0 {
            return Err(ImpurityError::EmptyState);
        }
        self.remove(class, 1.0)
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.iter().map(|(_, m)| m * m).sum()
    }
}
