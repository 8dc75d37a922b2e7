//! Pauli decomposition of `2^n x 2^n` complex matrices by tensorized block
//! slicing.
//!
//! ```
//! use paulitpd::{decompose_recursive, Complex64, DenseOperator, TpdConfig};
//!
//! let a = DenseOperator::diagonal(2, &[1.0, 2.0, 3.0, 4.0].map(|x| Complex64::new(x, 0.0))).unwrap();
//! let d = decompose_recursive(&a, &TpdConfig::new());
//! assert_eq!(d.to_canonical_string(), "II 2.5 0\nIZ -0.5 0\nZI -1 0\n");
//! ```

pub mod bench;
pub mod decomposition;
pub mod error;
pub mod generators;
pub mod io;
pub mod method;
pub mod operator;
pub mod oracle;
pub mod pauli;
pub mod tpd;

pub use decomposition::{format_g17, Decomposition};
pub use error::{Error, Result};
pub use generators::{generate, generate_sparse, GeneratorKind, GeneratorSpec};
pub use io::MatrixFile;
pub use method::{DecomposeOptions, Method};
pub use num_complex::Complex64;
pub use operator::{frobenius_inner, DenseOperator, SparseOperator};
pub use oracle::{decompose_composer, decompose_naive_dense};
pub use pauli::{PauliDigit, PauliString, PauliTerm, Phase, MAX_QUBITS};
pub use tpd::{
    cmw_split, decompose, decompose_iterative, decompose_recursive, decompose_sparse,
    sparse_cmw_split, CmwFrame, Frontier, TpdConfig, TpdVariant,
};
