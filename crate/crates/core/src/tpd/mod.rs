//! Tensorized Pauli decomposition.
//!
//! Splitting `A = [A11 A12; A21 A22]` into quadrants gives
//! `A = sum_t σ^t ⊗ W_t` with the cumulative matrix weights
//!
//! ```text
//! W_I = (A11 + A22) / 2      W_X = (A12 + A21) / 2
//! W_Y = i (A12 - A21) / 2    W_Z = (A11 - A22) / 2
//! ```
//!
//! `W_t` is the partial sum of every term whose first digit is `t`. Repeating
//! the split on each nonzero `W_t` fixes one digit per level until the blocks
//! are scalars, which are the weights. A zero block removes all `4^(n-k)`
//! strings below it at once.
//!
//! The drivers here are generic over [`CmwSplit`]; [`dense`] and [`sparse`]
//! provide the block kernels.

pub mod dense;
pub mod sparse;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::pauli::{PauliDigit, PauliString, PauliTerm};

pub use dense::{cmw_split, decompose, decompose_iterative, decompose_recursive, DenseBlock};
pub use sparse::{decompose_sparse, sparse_cmw_split, CsrBlock};

/// Blocks at least this wide are split on separate rayon tasks in parallel mode.
const PARALLEL_MIN_DIM: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TpdVariant {
    /// Depth-first recursion over nonzero blocks.
    #[default]
    Recursive,
    /// Level-by-level expansion of a frontier of partially fixed strings.
    Iterative,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TpdConfig {
    prune_epsilon: f64,
    parallel: bool,
    variant: TpdVariant,
}

impl TpdConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Blocks whose largest entry modulus is `<= epsilon` are treated as zero.
    pub fn with_prune_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if epsilon.is_nan() || epsilon < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "prune epsilon must be >= 0, got {epsilon}"
            )));
        }
        self.prune_epsilon = epsilon;
        Ok(self)
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn with_variant(mut self, variant: TpdVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn prune_epsilon(&self) -> f64 {
        self.prune_epsilon
    }

    pub fn parallel(&self) -> bool {
        self.parallel
    }

    pub fn variant(&self) -> TpdVariant {
        self.variant
    }
}

/// Something that can be partitioned into the four cumulative matrix weights.
pub trait CmwSplit: Sync {
    type Block: CmwBlock;

    fn dim(&self) -> usize;

    /// Overwrites `out[t]` with `W_t`, each of dimension `dim / 2`. Existing
    /// allocations in `out` are reused.
    fn split_into(&self, out: &mut [Self::Block; 4]);
}

/// An owned cumulative-weight block.
pub trait CmwBlock: CmwSplit<Block = Self> + Send + Sized {
    fn empty() -> Self;

    /// True if some entry has modulus `> epsilon` (any nonzero entry for 0).
    fn exceeds(&self, epsilon: f64) -> bool;

    /// The value of a `1 x 1` block.
    fn scalar(&self) -> Complex64;
}

fn empty_quad<B: CmwBlock>() -> [B; 4] {
    [B::empty(), B::empty(), B::empty(), B::empty()]
}

/// Splits `a` once. Fails for `1 x 1` input, which is already a weight.
pub fn split<S: CmwSplit>(a: &S) -> Result<[S::Block; 4]> {
    if a.dim() < 2 {
        return Err(Error::ScalarBlock);
    }
    let mut out = empty_quad();
    a.split_into(&mut out);
    Ok(out)
}

fn qubits_of<S: CmwSplit>(a: &S) -> usize {
    debug_assert!(a.dim().is_power_of_two() && a.dim() >= 2);
    a.dim().trailing_zeros() as usize
}

pub(crate) fn run<S: CmwSplit>(a: &S, cfg: &TpdConfig) -> Decomposition {
    match cfg.variant {
        TpdVariant::Recursive => run_recursive(a, cfg),
        TpdVariant::Iterative => Frontier::new(a, *cfg).run(),
    }
}

pub(crate) fn run_recursive<S: CmwSplit>(a: &S, cfg: &TpdConfig) -> Decomposition {
    let n = qubits_of(a);
    let terms = if cfg.parallel {
        recurse_parallel(a, 0, n, cfg.prune_epsilon)
    } else {
        let mut out = Vec::new();
        let mut scratch: Vec<[S::Block; 4]> = (0..n).map(|_| empty_quad()).collect();
        recurse(a, 0, n, cfg.prune_epsilon, &mut scratch, &mut out);
        out
    };
    Decomposition::from_sorted(n, terms)
}

/// Depth-first expansion. `scratch[k]` holds the blocks of level `k` below
/// `src`; children are visited in digit order so `out` stays sorted.
fn recurse<S: CmwSplit>(
    src: &S,
    prefix: u64,
    n: usize,
    epsilon: f64,
    scratch: &mut [[S::Block; 4]],
    out: &mut Vec<PauliTerm>,
) {
    let (level, rest) = scratch
        .split_first_mut()
        .expect("one scratch level per remaining qubit");
    src.split_into(level);
    for (digit, block) in level.iter().enumerate() {
        if !block.exceeds(epsilon) {
            continue;
        }
        let code = (prefix << 2) | digit as u64;
        if block.dim() == 1 {
            out.push(PauliTerm::new(
                PauliString::from_index_unchecked(n, code),
                block.scalar(),
            ));
        } else {
            recurse(block, code, n, epsilon, rest, out);
        }
    }
}

fn recurse_parallel<S: CmwSplit>(src: &S, prefix: u64, n: usize, epsilon: f64) -> Vec<PauliTerm> {
    if src.dim() < PARALLEL_MIN_DIM {
        let depth = src.dim().trailing_zeros() as usize;
        let mut scratch: Vec<[S::Block; 4]> = (0..depth).map(|_| empty_quad()).collect();
        let mut out = Vec::new();
        recurse(src, prefix, n, epsilon, &mut scratch, &mut out);
        return out;
    }
    let mut level = empty_quad::<S::Block>();
    src.split_into(&mut level);
    let parts: Vec<Vec<PauliTerm>> = level
        .par_iter()
        .enumerate()
        .map(|(digit, block)| {
            if !block.exceeds(epsilon) {
                return Vec::new();
            }
            recurse_parallel(block, (prefix << 2) | digit as u64, n, epsilon)
        })
        .collect();
    parts.concat()
}

/// A block together with the leading digits already fixed for it.
#[derive(Clone, Debug)]
pub struct CmwFrame<B> {
    fixed: usize,
    prefix: u64,
    block: B,
}

impl<B: CmwBlock> CmwFrame<B> {
    pub fn fixed_digits(&self) -> Vec<PauliDigit> {
        (0..self.fixed)
            .rev()
            .map(|k| PauliDigit::from_index(((self.prefix >> (2 * k)) & 3) as u8).unwrap())
            .collect()
    }

    pub fn block(&self) -> &B {
        &self.block
    }
}

/// Level-by-level expansion. Starts from the wildcard frame holding the input;
/// each [`Frontier::step`] fixes one more leading digit of every frame and
/// drops zero blocks. Frames stay in lexicographic order of their fixed digits.
pub struct Frontier<'a, S: CmwSplit> {
    root: Option<&'a S>,
    frames: Vec<CmwFrame<S::Block>>,
    fixed: usize,
    n: usize,
    cfg: TpdConfig,
}

impl<'a, S: CmwSplit> Frontier<'a, S> {
    pub fn new(root: &'a S, cfg: TpdConfig) -> Self {
        Frontier {
            root: Some(root),
            frames: Vec::new(),
            fixed: 0,
            n: qubits_of(root),
            cfg,
        }
    }

    /// Number of live frames (the wildcard counts as one).
    pub fn len(&self) -> usize {
        if self.root.is_some() {
            1
        } else {
            self.frames.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn fixed_digits(&self) -> usize {
        self.fixed
    }

    pub fn is_complete(&self) -> bool {
        self.fixed == self.n
    }

    pub fn frames(&self) -> &[CmwFrame<S::Block>] {
        &self.frames
    }

    /// Fixes the next digit. Returns false once every digit is fixed.
    pub fn step(&mut self) -> bool {
        if self.is_complete() {
            return false;
        }
        let epsilon = self.cfg.prune_epsilon;
        let fixed = self.fixed + 1;
        let expand = |prefix: u64, src: &dyn Fn(&mut [S::Block; 4])| {
            let mut quad = empty_quad::<S::Block>();
            src(&mut quad);
            quad.into_iter()
                .enumerate()
                .filter(|(_, b)| b.exceeds(epsilon))
                .map(|(digit, block)| CmwFrame {
                    fixed,
                    prefix: (prefix << 2) | digit as u64,
                    block,
                })
                .collect::<Vec<_>>()
        };
        self.frames = if let Some(root) = self.root.take() {
            expand(0, &|q| root.split_into(q))
        } else if self.cfg.parallel {
            let parts: Vec<Vec<_>> = self
                .frames
                .par_iter()
                .map(|f| expand(f.prefix, &|q| f.block.split_into(q)))
                .collect();
            parts.into_iter().flatten().collect()
        } else {
            self.frames
                .iter()
                .flat_map(|f| expand(f.prefix, &|q| f.block.split_into(q)))
                .collect()
        };
        self.fixed = fixed;
        true
    }

    pub fn run(mut self) -> Decomposition {
        while self.step() {}
        self.into_decomposition()
    }

    /// Weights of a completed frontier.
    pub fn into_decomposition(self) -> Decomposition {
        assert!(self.is_complete(), "frontier has unexpanded digits");
        let n = self.n;
        let terms = self
            .frames
            .into_iter()
            .map(|f| PauliTerm::new(PauliString::from_index_unchecked(n, f.prefix), f.block.scalar()))
            .collect();
        Decomposition::from_sorted(n, terms)
    }
}
