//! Cumulative weights over CSR storage.
//!
//! Quadrants are found by cutting each row at column `dim / 2`. `W_I`/`W_Z`
//! come from a two-pointer merge of matching rows of `A11` and `A22`, and
//! `W_X`/`W_Y` from `A12` and `A21`, so output columns stay sorted. Entries
//! that cancel to exactly zero are never stored, which is what lets a block
//! (and every string below it) vanish.

use num_complex::Complex64;

use super::{CmwBlock, CmwSplit, TpdConfig};
use crate::decomposition::Decomposition;
use crate::error::Result;
use crate::operator::SparseOperator;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// CSR block of any power-of-two dimension, including `1 x 1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsrBlock {
    dim: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<Complex64>,
}

impl CsrBlock {
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Stored entries as `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            let (lo, hi) = (self.row_offsets[r], self.row_offsets[r + 1]);
            (lo..hi).map(move |k| (r, self.col_indices[k], self.values[k]))
        })
    }

    fn reset(&mut self, dim: usize) {
        self.dim = dim;
        self.row_offsets.clear();
        self.row_offsets.push(0);
        self.col_indices.clear();
        self.values.clear();
    }

    #[inline]
    fn push(&mut self, col: usize, value: Complex64) {
        if value != ZERO {
            self.col_indices.push(col);
            self.values.push(value);
        }
    }

    #[inline]
    fn end_row(&mut self) {
        self.row_offsets.push(self.values.len());
    }
}

#[inline]
fn mul_i(z: Complex64) -> Complex64 {
    Complex64::new(-z.im, z.re)
}

/// One quadrant row: sorted columns (already shifted into the block) and values.
type QuadRow<'a> = (&'a [usize], &'a [Complex64], usize);

/// Merges rows `p` and `q` of two quadrants, writing `(p + q) / 2` to `sum` and
/// `(p - q) / 2` (times `i` if `rotate`) to `diff`. Missing entries count as
/// zero; the arithmetic matches the dense kernel bit for bit.
fn merge_rows(p: QuadRow, q: QuadRow, sum: &mut CsrBlock, diff: &mut CsrBlock, rotate: bool) {
    let (p_cols, p_vals, p_shift) = p;
    let (q_cols, q_vals, q_shift) = q;
    let (mut i, mut j) = (0, 0);
    while i < p_cols.len() || j < q_cols.len() {
        let pc = p_cols.get(i).map_or(usize::MAX, |c| c - p_shift);
        let qc = q_cols.get(j).map_or(usize::MAX, |c| c - q_shift);
        let col = pc.min(qc);
        let x = if pc == col {
            i += 1;
            p_vals[i - 1]
        } else {
            ZERO
        };
        let y = if qc == col {
            j += 1;
            q_vals[j - 1]
        } else {
            ZERO
        };
        sum.push(col, (x + y) * 0.5);
        let d = (x - y) * 0.5;
        diff.push(col, if rotate { mul_i(d) } else { d });
    }
}

fn split_csr(
    dim: usize,
    offsets: &[usize],
    cols: &[usize],
    vals: &[Complex64],
    out: &mut [CsrBlock; 4],
) {
    let h = dim / 2;
    for block in out.iter_mut() {
        block.reset(h);
    }
    let [w_i, w_x, w_y, w_z] = out;
    for row in 0..h {
        let (top_lo, top_hi) = (offsets[row], offsets[row + 1]);
        let (bot_lo, bot_hi) = (offsets[row + h], offsets[row + h + 1]);
        let top_cut = top_lo + cols[top_lo..top_hi].partition_point(|&c| c < h);
        let bot_cut = bot_lo + cols[bot_lo..bot_hi].partition_point(|&c| c < h);

        let a11 = (&cols[top_lo..top_cut], &vals[top_lo..top_cut], 0);
        let a12 = (&cols[top_cut..top_hi], &vals[top_cut..top_hi], h);
        let a21 = (&cols[bot_lo..bot_cut], &vals[bot_lo..bot_cut], 0);
        let a22 = (&cols[bot_cut..bot_hi], &vals[bot_cut..bot_hi], h);

        merge_rows(a11, a22, w_i, w_z, false);
        merge_rows(a12, a21, w_x, w_y, true);
        for block in [&mut *w_i, &mut *w_x, &mut *w_y, &mut *w_z] {
            block.end_row();
        }
    }
}

impl CmwSplit for CsrBlock {
    type Block = CsrBlock;

    fn dim(&self) -> usize {
        self.dim
    }

    fn split_into(&self, out: &mut [CsrBlock; 4]) {
        split_csr(self.dim, &self.row_offsets, &self.col_indices, &self.values, out);
    }
}

impl CmwBlock for CsrBlock {
    fn empty() -> Self {
        CsrBlock::default()
    }

    fn exceeds(&self, epsilon: f64) -> bool {
        if epsilon == 0.0 {
            !self.values.is_empty()
        } else {
            let eps2 = epsilon * epsilon;
            self.values.iter().any(|z| z.norm_sqr() > eps2)
        }
    }

    fn scalar(&self) -> Complex64 {
        debug_assert_eq!(self.dim, 1);
        self.values.first().copied().unwrap_or(ZERO)
    }
}

impl CmwSplit for SparseOperator {
    type Block = CsrBlock;

    fn dim(&self) -> usize {
        SparseOperator::dim(self)
    }

    fn split_into(&self, out: &mut [CsrBlock; 4]) {
        split_csr(
            SparseOperator::dim(self),
            self.row_offsets(),
            self.col_indices(),
            self.values(),
            out,
        );
    }
}

/// The cumulative weights `[W_I, W_X, W_Y, W_Z]` of `a` in CSR form.
pub fn sparse_cmw_split<S: CmwSplit<Block = CsrBlock>>(a: &S) -> Result<[CsrBlock; 4]> {
    super::split(a)
}

/// Decomposes a sparse operator with the variant selected in `cfg`.
pub fn decompose_sparse(a: &SparseOperator, cfg: &TpdConfig) -> Decomposition {
    super::run(a, cfg)
}
