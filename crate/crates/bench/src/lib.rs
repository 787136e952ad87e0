//! Criterion benchmarks for the attachment pipeline live in `benches/`.
