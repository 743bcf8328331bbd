//! Direct evaluation of the Gini index and entropy of a sample, plus the two
//! identities the incremental formulas are built on. These functions are the
//! reference every incremental path is checked against.

use crate::counts::ClassCounts;
use crate::error::{positive, ImpurityError, Result};

/// `q * log2(q)`, taking `0 * log2(0) = 0`.
#[inline]
pub(crate) fn xlog2(q: f64) -> f64 {
    if q == 0.0 {
        0.0
    } else {
        q * q.log2()
    }
}

/// `q * (h - log2(q))`, taking the product to be 0 whenever `q = 0`.
#[inline]
pub(crate) fn rescaled(q: f64, h: f64) -> f64 {
    if q == 0.0 {
        0.0
    } else {
        q * (h - q.log2())
    }
}

/// Gini index `1 - sum (x_i / S)^2`; 0 for an empty sample.
pub fn gini_exact(counts: &ClassCounts) -> f64 {
    let total = counts.total();
    if total == 0.0 {
        return 0.0;
    }
    1.0 - counts.sum_of_squares() / (total * total)
}

/// Shannon entropy in bits; 0 for an empty sample.
pub fn entropy_exact(counts: &ClassCounts) -> f64 {
    let total = counts.total();
    if total == 0.0 {
        return 0.0;
    }
    0.0 - counts.iter().map(|(_, m)| xlog2(m / total)).sum::<f64>()
}

/// Recovers `sum x_i^2` from the total and Gini index: `S^2 (1 - G)`.
pub fn sum_squares(total: f64, gini: f64) -> f64 {
    total * total * (1.0 - gini)
}

/// Entropy-like sum of a sample re-denominated over `total + added_mass`:
/// `-sum x_i/(S+R) log2(x_i/(S+R)) = S/(S+R) * (H - log2(S/(S+R)))`.
pub fn rescale_entropy(entropy: f64, total: f64, added_mass: f64) -> Result<f64> {
    if !positive(total) {
        return Err(ImpurityError::NonPositiveTotal(total));
    }
    if !positive(added_mass) {
        return Err(ImpurityError::NonPositiveMass(added_mass));
    }
    Ok(rescaled(total / (total + added_mass), entropy))
}
