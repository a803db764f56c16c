//! Criterion benchmarks for the polynomial kernels and the sums.
