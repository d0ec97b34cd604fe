//! Benchmarks for the f4core engine live in `benches/`.
