//! Shared inputs for the criterion benchmarks.

use paulitpd::{generate, generate_sparse, DenseOperator, GeneratorKind, GeneratorSpec, SparseOperator};

/// Seed used for every benchmark input.
pub const SEED: u64 = 2024;

pub fn dense_input(kind: GeneratorKind, n: usize) -> DenseOperator {
    generate(&GeneratorSpec::new(kind, n).with_seed(SEED)).expect("valid spec")
}

pub fn sparse_input(kind: GeneratorKind, n: usize) -> SparseOperator {
    generate_sparse(&GeneratorSpec::new(kind, n).with_seed(SEED)).expect("valid spec")
}
