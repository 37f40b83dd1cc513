//! Criterion benchmarks for `fig8-core`; see `benches/`.
