//! Criterion benchmarks for the hot numerical paths; see `benches/`.
