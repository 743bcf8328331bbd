//! Entropy accumulator over the sufficient statistic `(S, H)`, with `H` in
//! bits. Terms of the form `q * log2(.)` vanish whenever `q = 0`.

use crate::counts::ClassCounts;
use crate::delta::DeltaSet;
use crate::error::{positive, ImpurityError, Result};
use crate::exact::{entropy_exact, rescaled, xlog2};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EntropyState {
    total: f64,
    value: f64,
}

impl EntropyState {
    pub const EMPTY: EntropyState = EntropyState {
        total: 0.0,
        value: 0.0,
    };

    pub const fn from_raw(total: f64, value: f64) -> Self {
        EntropyState { total, value }
    }

    pub fn from_counts(counts: &ClassCounts) -> Self {
        EntropyState {
            total: counts.total(),
            value: entropy_exact(counts),
        }
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn raw_value(&self) -> f64 {
        self.value
    }

    /// Value with tiny negative rounding residue clamped to 0.
    pub fn value(&self) -> f64 {
        self.value.max(0.0)
    }

    /// A new element of mass `x` enters the sample.
    pub fn append(self, x: f64) -> Result<Self> {
        if !positive(x) {
            return Err(ImpurityError::NonPositiveMass(x));
        }
        if self.total == 0.0 {
            return Ok(EntropyState { total: x, value: 0.0 });
        }
        let total = self.total + x;
        Ok(EntropyState {
            total,
            value: rescaled(self.total / total, self.value) - xlog2(x / total),
        })
    }

    /// Concatenation of two samples over disjoint classes.
    pub fn merge(self, other: EntropyState) -> Self {
        let total = self.total + other.total;
        if total == 0.0 {
            return Self::EMPTY;
        }
        EntropyState {
            total,
            value: rescaled(self.total / total, self.value)
                + rescaled(other.total / total, other.value),
        }
    }

    /// Several existing classes grow at once; `O(|delta|)` work. Every class
    /// in the batch must already hold positive mass.
    pub fn batch_increase(self, delta: &DeltaSet) -> Result<Self> {
        if delta.is_empty() {
            return Ok(self);
        }
        if let Some((_, d)) = delta.iter().find(|(_, d)| !positive(d.current)) {
            return Err(ImpurityError::NonPositiveMass(d.current));
        }
        let total = self.total + delta.total_increase();
        let changed: f64 = delta
            .iter()
            .map(|(_, d)| xlog2((d.current + d.increase) / total) - xlog2(d.current / total))
            .sum();
        Ok(EntropyState {
            total,
            value: rescaled(self.total / total, self.value) - changed,
        })
    }

    /// One occurrence is added to a class whose count was `before`.
    pub fn inc(self, before: f64) -> Self {
        debug_assert!(before >= 0.0, "class count must be nonnegative");
        let n = self.total + 1.0;
        let ni = before + 1.0;
        EntropyState {
            total: n,
            value: rescaled((n - 1.0) / n, self.value) - xlog2(ni / n) + xlog2((ni - 1.0) / n),
        }
    }

    /// One occurrence is removed from a class, leaving it with `after`.
    pub fn dec(self, after: f64) -> Result<Self> {
        if self.total < 1.0 {
            return Err(ImpurityError::EmptyState);
        }
        if after < 0.0 || after.is_nan() {
            return Err(ImpurityError::NegativeCount(after));
        }
        let n = self.total - 1.0;
        if n <= 0.0 {
            return Ok(Self::EMPTY);
        }
        let prev = n + 1.0;
        Ok(EntropyState {
            total: n,
            value: (prev / n)
                * (self.value + xlog2((after + 1.0) / prev) - xlog2(after / prev))
                + (n / prev).log2(),
        })
    }

    /// A class unseen so far enters with total mass `mass`.
    pub fn add_class(self, mass: f64) -> Result<Self> {
        if !positive(mass) {
            return Err(ImpurityError::NonPositiveMass(mass));
        }
        let n = self.total + mass;
        Ok(EntropyState {
            total: n,
            value: rescaled((n - mass) / n, self.value) - xlog2(mass / n),
        })
    }

    /// A class holding all of `mass` leaves the sample.
    pub fn del_class(self, mass: f64) -> Result<Self> {
        if !positive(mass) {
            return Err(ImpurityError::NonPositiveMass(mass));
        }
        if mass > self.total {
            return Err(ImpurityError::MassExceedsTotal {
                mass,
                total: self.total,
            });
        }
        let n = self.total - mass;
        if n <= 0.0 {
            return Ok(Self::EMPTY);
        }
        let prev = n + mass;
        Ok(EntropyState {
            total: n,
            value: (prev / n) * (self.value + xlog2(mass / prev)) + (n / prev).log2(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::ClassId;

    const TOL: f64 = 1e-12;
    const THREE_ONE: f64 = 0.811_278_124_459_132_8; // counts {3, 1}
    const TWO_ONE: f64 = 0.918_295_834_054_489_6; // counts {2, 1}

    fn s(total: f64, value: f64) -> EntropyState {
        EntropyState::from_raw(total, value)
    }

    fn assert_state(got: EntropyState, total: f64, value: f64) {
        assert!(
            (got.total() - total).abs() < TOL && (got.raw_value() - value).abs() < TOL,
            "got ({}, {}), want ({total}, {value})",
            got.total(),
            got.raw_value()
        );
    }

    #[test]
    fn from_counts_examples() {
        assert_state(EntropyState::from_counts(&ClassCounts::new()), 0.0, 0.0);
        let c = ClassCounts::from_masses(&[1.0, 1.0]).unwrap();
        assert_state(EntropyState::from_counts(&c), 2.0, 1.0);
        let c = ClassCounts::from_masses(&[3.0, 1.0]).unwrap();
        assert_state(EntropyState::from_counts(&c), 4.0, THREE_ONE);
    }

    #[test]
    fn append_examples() {
        assert_state(EntropyState::EMPTY.append(7.0).unwrap(), 7.0, 0.0);
        assert_state(s(1.0, 0.0).append(1.0).unwrap(), 2.0, 1.0);
        assert_state(s(2.0, 1.0).append(2.0).unwrap(), 4.0, 1.5);
        assert!(s(1.0, 0.0).append(0.0).is_err());
    }

    #[test]
    fn merge_examples() {
        assert_state(EntropyState::EMPTY.merge(s(4.0, 1.5)), 4.0, 1.5);
        assert_state(s(2.0, 1.0).merge(s(2.0, 0.0)), 4.0, 1.5);
        assert_state(s(2.0, 1.0).merge(s(2.0, 1.0)), 4.0, 2.0);
    }

    #[test]
    fn batch_increase_examples() {
        let a = ClassId::new(0);
        let b = ClassId::new(1);
        assert_eq!(s(2.0, 1.0).batch_increase(&DeltaSet::new()).unwrap(), s(2.0, 1.0));
        let d = DeltaSet::new().with(a, 1.0, 1.0).unwrap();
        assert_state(s(2.0, 1.0).batch_increase(&d).unwrap(), 3.0, TWO_ONE);
        let d = DeltaSet::new().with(b, 1.0, 2.0).unwrap();
        assert_state(s(4.0, THREE_ONE).batch_increase(&d).unwrap(), 6.0, 1.0);
        let d = DeltaSet::new().with(b, 0.0, 2.0).unwrap();
        assert!(s(4.0, THREE_ONE).batch_increase(&d).is_err());
    }

    #[test]
    fn inc_examples() {
        assert_state(EntropyState::EMPTY.inc(0.0), 1.0, 0.0);
        assert_state(s(2.0, 1.0).inc(1.0), 3.0, TWO_ONE);
        assert_state(s(3.0, TWO_ONE).inc(1.0), 4.0, 1.0);
    }

    #[test]
    fn dec_examples() {
        assert_eq!(s(1.0, 0.0).dec(0.0).unwrap(), EntropyState::EMPTY);
        assert_state(s(4.0, 1.0).dec(1.0).unwrap(), 3.0, TWO_ONE);
        assert_state(s(3.0, TWO_ONE).dec(0.0).unwrap(), 2.0, 0.0);
        assert_eq!(EntropyState::EMPTY.dec(0.0), Err(ImpurityError::EmptyState));
    }

    #[test]
    fn add_class_examples() {
        assert_state(EntropyState::EMPTY.add_class(3.0).unwrap(), 3.0, 0.0);
        assert_state(s(2.0, 1.0).add_class(2.0).unwrap(), 4.0, 1.5);
        assert_state(s(2.0, 0.0).add_class(2.0).unwrap(), 4.0, 1.0);
    }

    #[test]
    fn del_class_examples() {
        assert_eq!(s(3.0, 0.0).del_class(3.0).unwrap(), EntropyState::EMPTY);
        assert_state(s(4.0, 1.5).del_class(2.0).unwrap(), 2.0, 1.0);
        assert_state(s(4.0, 1.0).del_class(2.0).unwrap(), 2.0, 0.0);
        assert!(s(4.0, 1.0).del_class(4.5).is_err());
    }
}
