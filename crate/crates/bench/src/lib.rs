//! Criterion benchmarks for `susp-core`; see `benches/algebra.rs`.
