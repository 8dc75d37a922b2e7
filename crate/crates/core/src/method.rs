//! The decomposition methods selectable from the command line and the bench.

use std::fmt;
use std::str::FromStr;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::io::MatrixFile;
use crate::oracle::{self, OracleOptions, COMPOSER_MAX_QUBITS, NAIVE_MAX_QUBITS};
use crate::tpd::{self, TpdConfig, TpdVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    TpdRecursive,
    TpdIterative,
    /// Slicing engine on CSR storage, using the variant from [`TpdConfig`].
    TpdSparse,
    /// Trace against every Kronecker-built string.
    Naive,
    /// Trace against every string in one-entry-per-row form.
    Composer,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::TpdRecursive,
        Method::TpdIterative,
        Method::TpdSparse,
        Method::Naive,
        Method::Composer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::TpdRecursive => "tpd-recursive",
            Method::TpdIterative => "tpd-iterative",
            Method::TpdSparse => "tpd-sparse",
            Method::Naive => "naive",
            Method::Composer => "composer",
        }
    }

    pub fn uses_sparse_input(self) -> bool {
        self == Method::TpdSparse
    }

    /// Largest default qubit count, if the method has one.
    pub fn qubit_limit(self) -> Option<usize> {
        match self {
            Method::Naive => Some(NAIVE_MAX_QUBITS),
            Method::Composer => Some(COMPOSER_MAX_QUBITS),
            _ => None,
        }
    }

    pub fn check_guard(self, n: usize, force: bool) -> Result<()> {
        match self.qubit_limit() {
            Some(limit) if n > limit && !force => Err(Error::GuardExceeded {
                method: self.name(),
                limit,
                n,
            }),
            _ => Ok(()),
        }
    }

    /// Converts `input` to the layout this method reads, so that conversion
    /// can be kept out of timed regions.
    pub fn prepare(self, input: &MatrixFile) -> MatrixFile {
        match (self.uses_sparse_input(), input) {
            (true, MatrixFile::Dense(a)) => MatrixFile::Sparse(crate::SparseOperator::from_dense(a)),
            (false, MatrixFile::Sparse(a)) => MatrixFile::Dense(a.to_dense()),
            _ => input.clone(),
        }
    }

    pub fn decompose(self, input: &MatrixFile, opts: &DecomposeOptions) -> Result<Decomposition> {
        self.check_guard(input.n(), opts.force)?;
        let input = match (self.uses_sparse_input(), input) {
            (true, MatrixFile::Sparse(_)) | (false, MatrixFile::Dense(_)) => std::borrow::Cow::Borrowed(input),
            _ => std::borrow::Cow::Owned(self.prepare(input)),
        };
        let oracle_opts = OracleOptions {
            store_epsilon: 0.0,
            force: opts.force,
        };
        match (self, input.as_ref()) {
            (Method::TpdRecursive, MatrixFile::Dense(a)) => Ok(tpd::decompose_recursive(a, &opts.tpd)),
            (Method::TpdIterative, MatrixFile::Dense(a)) => Ok(tpd::decompose_iterative(a, &opts.tpd)),
            (Method::TpdSparse, MatrixFile::Sparse(a)) => Ok(tpd::decompose_sparse(a, &opts.tpd)),
            (Method::Naive, MatrixFile::Dense(a)) => oracle::decompose_naive_dense_with(a, &oracle_opts),
            (Method::Composer, MatrixFile::Dense(a)) => oracle::decompose_composer_with(a, &oracle_opts),
            _ => unreachable!("input prepared for {self}"),
        }
    }

    /// The engine configuration implied by this method, if it is a slicing method.
    pub fn tpd_variant(self) -> Option<TpdVariant> {
        match self {
            Method::TpdRecursive => Some(TpdVariant::Recursive),
            Method::TpdIterative => Some(TpdVariant::Iterative),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DecomposeOptions {
    pub tpd: TpdConfig,
    /// Lift the naive/composer qubit guards.
    pub force: bool,
}
