//! Criterion benchmarks for `mincodes`; see `benches/`.
