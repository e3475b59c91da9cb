//! Criterion benchmarks for evaluation, classification and the soundness harness.
