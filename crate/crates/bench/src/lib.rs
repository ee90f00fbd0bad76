//! Criterion benchmarks for evscale; see `benches/`.
