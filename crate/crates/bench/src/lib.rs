//! Criterion benchmarks for the hypersurface pipeline; see `benches/`.
