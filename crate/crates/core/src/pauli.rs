//! Pauli digits and strings.
//!
//! A string `t1 t2 ... tn` names the operator `σ^t1 ⊗ σ^t2 ⊗ ... ⊗ σ^tn`. The
//! first digit is the outermost tensor factor, so it selects the coarsest 2x2
//! block structure and corresponds to the most significant bit of a row index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::SparseOperator;

/// Largest supported qubit count; a string is packed into 64 bits.
pub const MAX_QUBITS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum PauliDigit {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl PauliDigit {
    pub const ALL: [PauliDigit; 4] = [PauliDigit::I, PauliDigit::X, PauliDigit::Y, PauliDigit::Z];

    pub fn from_index(value: u8) -> Option<Self> {
        Self::ALL.get(value as usize).copied()
    }

    #[inline]
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn as_char(self) -> char {
        match self {
            PauliDigit::I => 'I',
            PauliDigit::X => 'X',
            PauliDigit::Y => 'Y',
            PauliDigit::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliDigit::I),
            'X' => Some(PauliDigit::X),
            'Y' => Some(PauliDigit::Y),
            'Z' => Some(PauliDigit::Z),
            _ => None,
        }
    }

    /// Flips the basis state (X or Y).
    #[inline]
    fn flips(self) -> bool {
        matches!(self, PauliDigit::X | PauliDigit::Y)
    }

    /// Contributes a sign depending on the basis state (Y or Z).
    #[inline]
    fn signs(self) -> bool {
        matches!(self, PauliDigit::Y | PauliDigit::Z)
    }
}

impl fmt::Display for PauliDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A power of `i`, i.e. one of `1, i, -1, -i`. Applying it to a complex number
/// only swaps and negates components, so it is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    #[inline]
    pub fn power(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn apply(self, z: Complex64) -> Complex64 {
        match self.0 {
            0 => z,
            1 => Complex64::new(-z.im, z.re),
            2 => Complex64::new(-z.re, -z.im),
            _ => Complex64::new(z.im, -z.re),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        self.apply(Complex64::new(1.0, 0.0))
    }
}

/// A Pauli string of `len` digits, stored as a base-4 number with the first
/// digit most significant. Ordering is lexicographic over digits for strings of
/// equal length.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    len: u8,
    code: u64,
}

impl PauliString {
    pub fn new(digits: &[PauliDigit]) -> Result<Self> {
        if digits.is_empty() || digits.len() > MAX_QUBITS {
            return Err(Error::QubitCount(digits.len()));
        }
        let code = digits
            .iter()
            .fold(0u64, |acc, d| (acc << 2) | d.index() as u64);
        Ok(PauliString {
            len: digits.len() as u8,
            code,
        })
    }

    /// Builds a string from its base-4 index; digit 1 is the most significant.
    pub fn from_index(len: usize, code: u64) -> Result<Self> {
        if len == 0 || len > MAX_QUBITS {
            return Err(Error::QubitCount(len));
        }
        if len < MAX_QUBITS && code >> (2 * len) != 0 {
            return Err(Error::InvalidLabel(format!("index {code} for length {len}")));
        }
        Ok(PauliString {
            len: len as u8,
            code,
        })
    }

    pub fn identity(len: usize) -> Result<Self> {
        Self::from_index(len, 0)
    }

    pub(crate) fn from_index_unchecked(len: usize, code: u64) -> Self {
        debug_assert!((1..=MAX_QUBITS).contains(&len));
        PauliString {
            len: len as u8,
            code,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; strings have at least one digit.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn index(&self) -> u64 {
        self.code
    }

    /// Digit at `pos`, counting from the first (outermost) factor.
    pub fn digit(&self, pos: usize) -> PauliDigit {
        assert!(pos < self.len(), "digit position out of range");
        let shift = 2 * (self.len() - 1 - pos);
        PauliDigit::from_index(((self.code >> shift) & 3) as u8).unwrap()
    }

    pub fn digits(&self) -> impl Iterator<Item = PauliDigit> + '_ {
        (0..self.len()).map(move |p| self.digit(p))
    }

    /// Row-index bits flipped by the string: bit `n-1-k` is set when factor `k`
    /// is X or Y.
    pub fn x_mask(&self) -> usize {
        self.mask(PauliDigit::flips)
    }

    /// Row-index bits that contribute a sign: bit `n-1-k` is set when factor `k`
    /// is Y or Z.
    pub fn z_mask(&self) -> usize {
        self.mask(PauliDigit::signs)
    }

    fn mask(&self, pred: fn(PauliDigit) -> bool) -> usize {
        let n = self.len();
        let mut mask = 0usize;
        for (k, d) in self.digits().enumerate() {
            if pred(d) {
                mask |= 1 << (n - 1 - k);
            }
        }
        mask
    }

    pub fn count(&self, digit: PauliDigit) -> usize {
        self.digits().filter(|&d| d == digit).count()
    }

    /// Column and value of the single nonzero in row `row` of the matrix.
    #[inline]
    pub fn row_entry(&self, row: usize) -> (usize, Phase) {
        RowEntries::new(self).entry(row)
    }

    /// Sparse matrix of the string. Each row `r` holds one entry at column
    /// `r ^ x_mask` whose value is a power of `i`.
    pub fn synthesize(&self) -> SparseOperator {
        let dim = 1usize << self.len();
        let rows = RowEntries::new(self);
        let mut cols = Vec::with_capacity(dim);
        let mut values = Vec::with_capacity(dim);
        for r in 0..dim {
            let (c, phase) = rows.entry(r);
            cols.push(c);
            values.push(phase.to_complex());
        }
        let offsets = (0..=dim).collect();
        SparseOperator::from_csr_unchecked(self.len(), offsets, cols, values)
    }
}

/// Precomputed masks for evaluating the rows of a Pauli string.
#[derive(Clone, Copy, Debug)]
pub struct RowEntries {
    x_mask: usize,
    z_mask: usize,
    base: Phase,
}

impl RowEntries {
    pub fn new(s: &PauliString) -> Self {
        // Y = -i * X * Z row by row: Y[0,1] = -i, Y[1,0] = i.
        let ys = s.count(PauliDigit::Y) as u8;
        RowEntries {
            x_mask: s.x_mask(),
            z_mask: s.z_mask(),
            base: Phase((3 * ys) % 4),
        }
    }

    #[inline]
    pub fn x_mask(&self) -> usize {
        self.x_mask
    }

    #[inline]
    pub fn entry(&self, row: usize) -> (usize, Phase) {
        let sign = ((row & self.z_mask).count_ones() & 1) as u8;
        (row ^ self.x_mask, Phase((self.base.0 + 2 * sign) % 4))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.digits() {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(PauliDigit::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidLabel(s.to_string()))?;
        PauliString::new(&digits).map_err(|_| Error::InvalidLabel(s.to_string()))
    }
}

/// A Pauli string with its complex weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTerm {
    pub string: PauliString,
    pub weight: Complex64,
}

impl PauliTerm {
    pub fn new(string: PauliString, weight: Complex64) -> Self {
        PauliTerm { string, weight }
    }
}
