//! Criterion benchmarks for `anchorset-core`; see `benches/`.
