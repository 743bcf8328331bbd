//! Gini accumulator over the sufficient statistic `(S, G)`.
//!
//! Every operation is a pure transition. Removals that empty the sample reset
//! to exactly `(0, 0)` instead of dividing by zero. The stored value is kept
//! raw so that inverse operations round-trip; [`GiniState::value`] clamps it
//! into `[0, 1]`.

use crate::counts::ClassCounts;
use crate::delta::DeltaSet;
use crate::error::{positive, ImpurityError, Result};
use crate::exact::gini_exact;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GiniState {
    total: f64,
    value: f64,
}

impl GiniState {
    pub const EMPTY: GiniState = GiniState {
        total: 0.0,
        value: 0.0,
    };

    /// Wraps a raw `(total, value)` pair without validation, e.g. when
    /// restoring a persisted state.
    pub const fn from_raw(total: f64, value: f64) -> Self {
        GiniState { total, value }
    }

    pub fn from_counts(counts: &ClassCounts) -> Self {
        GiniState {
            total: counts.total(),
            value: gini_exact(counts),
        }
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// Unclamped value as produced by the update formulas.
    pub fn raw_value(&self) -> f64 {
        self.value
    }

    pub fn value(&self) -> f64 {
        self.value.clamp(0.0, 1.0)
    }

    /// `sum x_i^2` of the underlying sample, recovered from `(S, G)`.
    pub fn sum_of_squares(&self) -> f64 {
        crate::exact::sum_squares(self.total, self.value)
    }

    fn with_squares(total: f64, squares: f64) -> Self {
        GiniState {
            total,
            value: 1.0 - squares / (total * total),
        }
    }

    /// A new element of mass `x` enters the sample.
    pub fn append(self, x: f64) -> Result<Self> {
        if !positive(x) {
            return Err(ImpurityError::NonPositiveMass(x));
        }
        Ok(Self::with_squares(
            self.total + x,
            self.sum_of_squares() + x * x,
        ))
    }

    /// Several classes grow at once; `O(|delta|)` work.
    pub fn batch_increase(self, delta: &DeltaSet) -> Self {
        if delta.is_empty() {
            return self;
        }
        let extra: f64 = delta
            .iter()
            .map(|(_, d)| 2.0 * d.current * d.increase + d.increase * d.increase)
            .sum();
        Self::with_squares(
            self.total + delta.total_increase(),
            self.sum_of_squares() + extra,
        )
    }

    /// One occurrence is added to a class whose count was `before`.
    pub fn inc(self, before: f64) -> Self {
        debug_assert!(before >= 0.0, "class count must be nonnegative");
        let n = self.total + 1.0;
        let ni = before + 1.0;
        let prev = n - 1.0;
        Self::with_squares(n, prev * prev * (1.0 - self.value) + 2.0 * ni - 1.0)
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
        Ok(Self::with_squares(
            n,
            prev * prev * (1.0 - self.value) - 2.0 * after - 1.0,
        ))
    }

    /// A class unseen so far enters with total mass `mass`.
    pub fn add_class(self, mass: f64) -> Result<Self> {
        if !positive(mass) {
            return Err(ImpurityError::NonPositiveMass(mass));
        }
        let n = self.total + mass;
        let prev = n - mass;
        Ok(Self::with_squares(
            n,
            prev * prev * (1.0 - self.value) + mass * mass,
        ))
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
        Ok(Self::with_squares(
            n,
            prev * prev * (1.0 - self.value) - mass * mass,
        ))
    }

    /// Concatenation of two samples over disjoint classes. Disjointness is the
    /// caller's obligation.
    pub fn merge(self, other: GiniState) -> Self {
        let total = self.total + other.total;
        if total == 0.0 {
            return Self::EMPTY;
        }
        Self::with_squares(total, self.sum_of_squares() + other.sum_of_squares())
    }

    /// Elementwise sum of two samples over the same classes. `cross` must be
    /// `sum x_i y_i`, computed by the caller from the raw vectors.
    pub fn overlay(self, other: GiniState, cross: f64) -> Result<Self> {
        if cross < 0.0 || cross.is_nan() {
            return Err(ImpurityError::NegativeCrossTerm(cross));
        }
        let total = self.total + other.total;
        if total == 0.0 {
            return Ok(Self::EMPTY);
        }
        Ok(Self::with_squares(
            total,
            self.sum_of_squares() + other.sum_of_squares() + 2.0 * cross,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::ClassId;

    const TOL: f64 = 1e-12;
    const TWO_ONE: f64 = 0.444_444_444_444_444_4; // counts {2, 1}

    fn s(total: f64, value: f64) -> GiniState {
        GiniState::from_raw(total, value)
    }

    fn assert_state(got: GiniState, total: f64, value: f64) {
        assert!(
            (got.total() - total).abs() < TOL && (got.raw_value() - value).abs() < TOL,
            "got ({}, {}), want ({total}, {value})",
            got.total(),
            got.raw_value()
        );
    }

    fn a() -> ClassId {
        ClassId::new(0)
    }

    fn b() -> ClassId {
        ClassId::new(1)
    }

    #[test]
    fn from_counts_examples() {
        assert_state(GiniState::from_counts(&ClassCounts::new()), 0.0, 0.0);
        let c = ClassCounts::from_masses(&[1.0, 1.0]).unwrap();
        assert_state(GiniState::from_counts(&c), 2.0, 0.5);
        let c = ClassCounts::from_masses(&[2.0, 1.0]).unwrap();
        assert_state(GiniState::from_counts(&c), 3.0, TWO_ONE);
    }

    #[test]
    fn append_examples() {
        assert_state(GiniState::EMPTY.append(5.0).unwrap(), 5.0, 0.0);
        assert_state(s(1.0, 0.0).append(1.0).unwrap(), 2.0, 0.5);
        assert_state(s(2.0, 0.5).append(2.0).unwrap(), 4.0, 0.625);
        assert!(s(1.0, 0.0).append(0.0).is_err());
        assert!(s(1.0, 0.0).append(-1.0).is_err());
    }

    #[test]
    fn batch_increase_examples() {
        assert_eq!(s(2.0, 0.5).batch_increase(&DeltaSet::new()), s(2.0, 0.5));
        let d = DeltaSet::new().with(a(), 1.0, 1.0).unwrap();
        assert_state(s(2.0, 0.5).batch_increase(&d), 3.0, TWO_ONE);
        let d = DeltaSet::new()
            .with(a(), 2.0, 1.0)
            .unwrap()
            .with(b(), 1.0, 2.0)
            .unwrap();
        assert_state(s(3.0, TWO_ONE).batch_increase(&d), 6.0, 0.5);
        assert!(DeltaSet::new().with(a(), 1.0, 0.0).is_err());
    }

    #[test]
    fn inc_examples() {
        assert_state(GiniState::EMPTY.inc(0.0), 1.0, 0.0);
        assert_state(s(2.0, 0.5).inc(1.0), 3.0, TWO_ONE);
        assert_state(s(3.0, TWO_ONE).inc(1.0), 4.0, 0.5);
    }

    #[test]
    fn dec_examples() {
        assert_eq!(s(1.0, 0.0).dec(0.0).unwrap(), GiniState::EMPTY);
        assert_state(s(4.0, 0.5).dec(1.0).unwrap(), 3.0, TWO_ONE);
        assert_state(s(2.0, 0.5).dec(0.0).unwrap(), 1.0, 0.0);
        assert_eq!(GiniState::EMPTY.dec(0.0), Err(ImpurityError::EmptyState));
    }

    #[test]
    fn add_class_examples() {
        assert_state(GiniState::EMPTY.add_class(5.0).unwrap(), 5.0, 0.0);
        assert_state(s(2.0, 0.5).add_class(2.0).unwrap(), 4.0, 0.625);
        assert_state(s(2.0, 0.0).add_class(2.0).unwrap(), 4.0, 0.5);
        assert!(s(2.0, 0.0).add_class(0.0).is_err());
    }

    #[test]
    fn del_class_examples() {
        assert_eq!(s(5.0, 0.0).del_class(5.0).unwrap(), GiniState::EMPTY);
        assert_state(s(4.0, 0.625).del_class(2.0).unwrap(), 2.0, 0.5);
        assert_state(s(4.0, 0.5).del_class(2.0).unwrap(), 2.0, 0.0);
        assert!(matches!(
            s(4.0, 0.5).del_class(5.0),
            Err(ImpurityError::MassExceedsTotal { .. })
        ));
    }

    #[test]
    fn merge_examples() {
        assert_state(GiniState::EMPTY.merge(s(2.0, 0.5)), 2.0, 0.5);
        assert_state(s(2.0, 0.5).merge(s(2.0, 0.0)), 4.0, 0.625);
        assert_state(
            s(3.0, TWO_ONE).merge(s(3.0, TWO_ONE)),
            6.0,
            0.722_222_222_222_222_2,
        );
        assert_eq!(GiniState::EMPTY.merge(GiniState::EMPTY), GiniState::EMPTY);
    }

    #[test]
    fn overlay_examples() {
        assert_state(s(1.0, 0.0).overlay(s(1.0, 0.0), 1.0).unwrap(), 2.0, 0.0);
        assert_state(s(3.0, TWO_ONE).overlay(s(2.0, 0.5), 3.0).unwrap(), 5.0, 0.48);
        assert_state(s(2.0, 0.5).overlay(s(2.0, 0.5), 2.0).unwrap(), 4.0, 0.5);
        assert_eq!(
            s(1.0, 0.0).overlay(s(1.0, 0.0), -1.0),
            Err(ImpurityError::NegativeCrossTerm(-1.0))
        );
    }

    #[test]
    fn value_is_clamped_on_read() {
        assert_eq!(s(3.0, -1e-12).value(), 0.0);
        assert_eq!(s(3.0, 1.0 + 1e-12).value(), 1.0);
        assert_eq!(s(3.0, -1e-12).raw_value(), -1e-12);
    }
}
