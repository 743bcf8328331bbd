//! Brute-force reference evaluations, written against plain slices so they
//! share no code with the library's accumulators.

#![allow(dead_code)]

pub fn brute_gini(masses: &[f64]) -> f64 {
    let total: f64 = masses.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let mut acc = 0.0;
    for &m in masses {
        let p = m / total;
        acc += p * p;
    }
    1.0 - acc
}

pub fn brute_entropy(masses: &[f64]) -> f64 {
    let total: f64 = masses.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let mut acc = 0.0;
    for &m in masses {
        if m > 0.0 {
            let p = m / total;
            acc -= p * p.ln() / std::f64::consts::LN_2;
        }
    }
    acc
}

/// Brute-force metrics over a label sequence.
pub fn brute_from_labels(labels: &[u32]) -> (f64, f64) {
    let k = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut masses = vec![0.0; k];
    for &l in labels {
        masses[l as usize] += 1.0;
    }
    (brute_gini(&masses), brute_entropy(&masses))
}
