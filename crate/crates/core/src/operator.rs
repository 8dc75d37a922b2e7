//! Dense and compressed-sparse-row operators on `n` qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::MAX_QUBITS;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Qubit count of a `dim x dim` operator, if `dim` is a power of two >= 2.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

fn check_qubits(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    Ok(1usize << n)
}

/// Largest modulus among `entries`, or 0 when empty.
pub(crate) fn max_abs(entries: &[Complex64]) -> f64 {
    entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Row-major `2^n x 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    entries: Vec<Complex64>,
}

impl DenseOperator {
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        let dim = check_qubits(n)?;
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(DenseOperator { n, entries })
    }

    /// Builds an operator from a `dim x dim` row-major buffer.
    pub fn from_dim(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::new(qubits_for_dim(dim)?, entries)
    }

    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        Self::new(n, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        let dim = check_qubits(n)?;
        Ok(DenseOperator {
            n,
            entries: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for r in 0..m.dim() {
            m.set(r, r, Complex64::new(1.0, 0.0));
        }
        Ok(m)
    }

    pub fn diagonal(n: usize, diag: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        if diag.len() != m.dim() {
            return Err(Error::EntryCount {
                expected: m.dim(),
                found: diag.len(),
            });
        }
        for (r, &v) in diag.iter().enumerate() {
            m.set(r, r, v);
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        let dim = self.dim();
        self.entries[row * dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        let dim = self.dim();
        &self.entries[row * dim..(row + 1) * dim]
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn transpose(&self) -> DenseOperator {
        let dim = self.dim();
        let mut out = self.clone();
        for r in 0..dim {
            for c in 0..dim {
                out.entries[c * dim + r] = self.entries[r * dim + c];
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseOperator {
        let mut out = self.transpose();
        out.entries.iter_mut().for_each(|z| *z = z.conj());
        out
    }

    /// `alpha * self + beta * other`.
    pub fn linear_combination(
        &self,
        alpha: Complex64,
        other: &DenseOperator,
        beta: Complex64,
    ) -> Result<DenseOperator> {
        self.check_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(DenseOperator { n: self.n, entries })
    }

    fn check_same_dim(&self, other: &DenseOperator) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

/// `(1/2^n) * sum_jk conj(a_jk) * b_jk`, i.e. `tr(A* B) / 2^n`.
pub fn frobenius_inner(a: &DenseOperator, b: &DenseOperator) -> Result<Complex64> {
    a.check_same_dim(b)?;
    let sum: Complex64 = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(sum / a.dim() as f64)
}

/// Compressed sparse row `2^n x 2^n` complex matrix.
///
/// Column indices are strictly increasing within a row and no stored value is
/// exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    n: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseOperator {
    /// Validates CSR arrays.
    pub fn from_csr(
        n: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        let dim = check_qubits(n)?;
        let bad = |msg: &str| Err(Error::InvalidStructure(msg.to_string()));
        if row_offsets.len() != dim + 1 || row_offsets[0] != 0 {
            return bad("row_offsets must have length dim + 1 and start at 0");
        }
        if row_offsets.windows(2).any(|w| w[0] > w[1]) {
            return bad("row_offsets must be nondecreasing");
        }
        let nnz = row_offsets[dim];
        if col_indices.len() != nnz || values.len() != nnz {
            return bad("column and value arrays must have length nnz");
        }
        for r in 0..dim {
            let cols = &col_indices[row_offsets[r]..row_offsets[r + 1]];
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return bad("column indices must be strictly increasing within a row");
            }
            if cols.last().is_some_and(|&c| c >= dim) {
                return bad("column index out of range");
            }
        }
        if values.contains(&ZERO) {
            return bad("stored values must be nonzero");
        }
        Ok(SparseOperator {
            n,
            row_offsets,
            col_indices,
            values,
        })
    }

    pub(crate) fn from_csr_unchecked(
        n: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<Complex64>,
    ) -> Self {
        SparseOperator {
            n,
            row_offsets,
            col_indices,
            values,
        }
    }

    /// Builds from `(row, col, value)` triplets in any order. Duplicates are
    /// summed and entries that end up exactly zero are dropped.
    pub fn from_triplets(
        n: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self> {
        let dim = check_qubits(n)?;
        let mut items: Vec<(usize, usize, Complex64)> = triplets.into_iter().collect();
        if let Some(&(r, c, _)) = items.iter().find(|(r, c, _)| *r >= dim || *c >= dim) {
            return Err(Error::InvalidStructure(format!(
                "entry ({r}, {c}) outside a {dim} x {dim} matrix"
            )));
        }
        // Stable sort keeps duplicate summation in input order.
        items.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_offsets = vec![0usize; dim + 1];
        let mut col_indices = Vec::with_capacity(items.len());
        let mut values = Vec::with_capacity(items.len());
        let mut i = 0;
        while i < items.len() {
            let (r, c, mut v) = items[i];
            i += 1;
            while i < items.len() && items[i].0 == r && items[i].1 == c {
                v += items[i].2;
                i += 1;
            }
            if v != ZERO {
                row_offsets[r + 1] += 1;
                col_indices.push(c);
                values.push(v);
            }
        }
        for r in 0..dim {
            row_offsets[r + 1] += row_offsets[r];
        }
        Ok(SparseOperator {
            n,
            row_offsets,
            col_indices,
            values,
        })
    }

    pub fn from_dense(a: &DenseOperator) -> Self {
        let dim = a.dim();
        let mut row_offsets = Vec::with_capacity(dim + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        for r in 0..dim {
            for (c, &v) in a.row(r).iter().enumerate() {
                if v != ZERO {
                    col_indices.push(c);
                    values.push(v);
                }
            }
            row_offsets.push(col_indices.len());
        }
        SparseOperator {
            n: a.n(),
            row_offsets,
            col_indices,
            values,
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        let dim = check_qubits(n)?;
        Ok(SparseOperator {
            n,
            row_offsets: (0..=dim).collect(),
            col_indices: (0..dim).collect(),
            values: vec![Complex64::new(1.0, 0.0); dim],
        })
    }

    pub fn to_dense(&self) -> DenseOperator {
        let dim = self.dim();
        let mut entries = vec![ZERO; dim * dim];
        for (r, c, v) in self.iter() {
            entries[r * dim + c] = v;
        }
        DenseOperator { n: self.n, entries }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn row(&self, row: usize) -> (&[usize], &[Complex64]) {
        let (lo, hi) = (self.row_offsets[row], self.row_offsets[row + 1]);
        (&self.col_indices[lo..hi], &self.values[lo..hi])
    }

    /// Stored entries as `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.values)
    }
}
