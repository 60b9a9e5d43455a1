//! Criterion benchmarks for the shapeorbit kernels; see `benches/kernels.rs`.
