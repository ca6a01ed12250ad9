//! Criterion benchmarks for gaplab; see `benches/`.
