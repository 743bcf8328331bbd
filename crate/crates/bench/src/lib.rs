//! Criterion benchmarks for the impurity estimators live under `benches/`.
