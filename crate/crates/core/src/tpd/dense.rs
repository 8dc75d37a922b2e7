use num_complex::Complex64;

use super::{CmwBlock, CmwSplit, TpdConfig, TpdVariant};
use crate::decomposition::Decomposition;
use crate::error::Result;
use crate::operator::DenseOperator;

/// Row-major square block of any power-of-two dimension, including `1 x 1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DenseBlock {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseBlock {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "block must be dim x dim");
        DenseBlock { dim, entries }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn is_zero(&self) -> bool {
        !self.exceeds(0.0)
    }
}

impl From<&DenseOperator> for DenseBlock {
    fn from(a: &DenseOperator) -> Self {
        DenseBlock::new(a.dim(), a.entries().to_vec())
    }
}

#[inline]
fn mul_i(z: Complex64) -> Complex64 {
    Complex64::new(-z.im, z.re)
}

/// Reads the four quadrants of `src` in place and writes the cumulative weights.
fn split_rows(src: &[Complex64], dim: usize, out: &mut [DenseBlock; 4]) {
    let h = dim / 2;
    for block in out.iter_mut() {
        block.dim = h;
        block.entries.clear();
        block.entries.reserve(h * h);
    }
    let [w_i, w_x, w_y, w_z] = out;
    for row in 0..h {
        let (a11, a12) = src[row * dim..(row + 1) * dim].split_at(h);
        let (a21, a22) = src[(row + h) * dim..(row + h + 1) * dim].split_at(h);
        w_i.entries
            .extend(a11.iter().zip(a22).map(|(p, q)| (p + q) * 0.5));
        w_x.entries
            .extend(a12.iter().zip(a21).map(|(p, q)| (p + q) * 0.5));
        w_y.entries
            .extend(a12.iter().zip(a21).map(|(p, q)| mul_i((p - q) * 0.5)));
        w_z.entries
            .extend(a11.iter().zip(a22).map(|(p, q)| (p - q) * 0.5));
    }
}

impl CmwSplit for DenseBlock {
    type Block = DenseBlock;

    fn dim(&self) -> usize {
        self.dim
    }

    fn split_into(&self, out: &mut [DenseBlock; 4]) {
        split_rows(&self.entries, self.dim, out);
    }
}

impl CmwBlock for DenseBlock {
    fn empty() -> Self {
        DenseBlock::default()
    }

    fn exceeds(&self, epsilon: f64) -> bool {
        if epsilon == 0.0 {
            self.entries.iter().any(|z| z.re != 0.0 || z.im != 0.0)
        } else {
            let eps2 = epsilon * epsilon;
            self.entries.iter().any(|z| z.norm_sqr() > eps2)
        }
    }

    fn scalar(&self) -> Complex64 {
        debug_assert_eq!(self.dim, 1);
        self.entries[0]
    }
}

impl CmwSplit for DenseOperator {
    type Block = DenseBlock;

    fn dim(&self) -> usize {
        DenseOperator::dim(self)
    }

    fn split_into(&self, out: &mut [DenseBlock; 4]) {
        split_rows(self.entries(), DenseOperator::dim(self), out);
    }
}

/// The cumulative weights `[W_I, W_X, W_Y, W_Z]` of `a`.
pub fn cmw_split<S: CmwSplit<Block = DenseBlock>>(a: &S) -> Result<[DenseBlock; 4]> {
    super::split(a)
}

pub fn decompose_recursive(a: &DenseOperator, cfg: &TpdConfig) -> Decomposition {
    super::run_recursive(a, cfg)
}

pub fn decompose_iterative(a: &DenseOperator, cfg: &TpdConfig) -> Decomposition {
    super::Frontier::new(a, *cfg).run()
}

/// Runs the variant selected in `cfg`.
pub fn decompose(a: &DenseOperator, cfg: &TpdConfig) -> Decomposition {
    match cfg.variant() {
        TpdVariant::Recursive => decompose_recursive(a, cfg),
        TpdVariant::Iterative => decompose_iterative(a, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::decompose_naive_dense;
    use crate::tpd::Frontier;
    use crate::Error;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag1234() -> DenseOperator {
        DenseOperator::diagonal(2, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]).unwrap()
    }

    fn random_dense(n: usize, seed: u64) -> DenseOperator {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = 1 << n;
        let entries = (0..dim * dim)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        DenseOperator::new(n, entries).unwrap()
    }

    fn both(a: &DenseOperator) -> [Decomposition; 2] {
        let cfg = TpdConfig::new();
        [decompose_recursive(a, &cfg), decompose_iterative(a, &cfg)]
    }

    #[test]
    fn split_2x2() {
        let a = DenseOperator::from_real(1, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let w = cmw_split(&a).unwrap();
        let scalars: Vec<Complex64> = w.iter().map(|b| b.scalar()).collect();
        assert_eq!(scalars, [c(2.5, 0.0), c(2.5, 0.0), c(0.0, -0.5), c(-1.5, 0.0)]);
        // Trace oracle: w_t = tr(σ^t A) / 2.
        let oracle = decompose_naive_dense(&a).unwrap();
        for (label, s) in ["I", "X", "Y", "Z"].iter().zip(&scalars) {
            assert_eq!(oracle.weight(label).unwrap(), *s, "{label}");
        }
    }

    #[test]
    fn split_identity_and_diagonal() {
        let w = cmw_split(&DenseOperator::identity(1).unwrap()).unwrap();
        assert_eq!(w[0].scalar(), c(1.0, 0.0));
        assert!(w[1..].iter().all(|b| b.is_zero()));

        let a = DenseOperator::diagonal(1, &[c(0.25, 0.0), c(-7.0, 0.0)]).unwrap();
        let w = cmw_split(&a).unwrap();
        assert!(w[1].is_zero() && w[2].is_zero());
    }

    #[test]
    fn split_rejects_scalar() {
        let scalar = DenseBlock::new(1, vec![c(1.0, 0.0)]);
        assert!(matches!(cmw_split(&scalar), Err(Error::ScalarBlock)));
    }

    #[test]
    fn recombination_identity() {
        for seed in 0..8 {
            let a = random_dense(3, seed);
            let w = cmw_split(&a).unwrap();
            let h = 4;
            let tol = 1e-15 * a.max_abs();
            for r in 0..h {
                for col in 0..h {
                    let (wi, wx, wy, wz) = (w[0].get(r, col), w[1].get(r, col), w[2].get(r, col), w[3].get(r, col));
                    let i = Complex64::i();
                    let checks = [
                        (wi + wz, a.get(r, col)),
                        (wx - i * wy, a.get(r, col + h)),
                        (wx + i * wy, a.get(r + h, col)),
                        (wi - wz, a.get(r + h, col + h)),
                    ];
                    for (got, want) in checks {
                        assert!((got - want).norm() <= tol, "{got} vs {want}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_4x4() {
        for d in both(&DenseOperator::identity(2).unwrap()) {
            assert_eq!(d.to_canonical_string(), "II 1 0\n");
        }
    }

    #[test]
    fn diag_has_no_zz() {
        for d in both(&diag1234()) {
            assert_eq!(d.len(), 3);
            assert_eq!(d.weight("II"), Some(c(2.5, 0.0)));
            assert_eq!(d.weight("IZ"), Some(c(-0.5, 0.0)));
            assert_eq!(d.weight("ZI"), Some(c(-1.0, 0.0)));
            assert_eq!(d.weight("ZZ"), None);
        }
    }

    #[test]
    fn pauli_y() {
        let a = DenseOperator::new(1, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        for d in both(&a) {
            assert_eq!(d.len(), 1);
            assert_eq!(d.weight("Y"), Some(c(1.0, 0.0)));
        }
    }

    #[test]
    fn frontier_sizes() {
        let a = diag1234();
        let mut f = Frontier::new(&a, TpdConfig::new());
        assert_eq!(f.len(), 1);
        assert!(f.step());
        assert_eq!(f.len(), 2);
        let fixed: Vec<_> = f.frames().iter().map(|fr| fr.fixed_digits()).collect();
        use crate::PauliDigit::{I, Z};
        assert_eq!(fixed, vec![vec![I], vec![Z]]);

        let r = random_dense(2, 42);
        let mut f = Frontier::new(&r, TpdConfig::new());
        f.step();
        assert_eq!(f.len(), 4);
        f.step();
        assert!(f.is_complete());
        assert!(!f.step());
        assert_eq!(f.into_decomposition().len(), 16);
    }

    #[test]
    fn zero_matrix_is_empty() {
        for d in both(&DenseOperator::zeros(3).unwrap()) {
            assert!(d.is_empty());
        }
    }

    #[test]
    fn prune_epsilon_drops_small_terms() {
        let mut a = diag1234();
        a.set(0, 1, c(1e-9, 0.0));
        let exact = decompose_recursive(&a, &TpdConfig::new());
        assert!(exact.len() > 3);
        let cfg = TpdConfig::new().with_prune_epsilon(1e-6).unwrap();
        for d in [decompose_recursive(&a, &cfg), decompose_iterative(&a, &cfg)] {
            assert_eq!(d.len(), 3);
        }
    }

    #[test]
    fn parallel_matches_sequential_bitwise() {
        // n = 7 crosses the parallel fan-out threshold.
        let a = random_dense(7, 5);
        for variant in [TpdVariant::Recursive, TpdVariant::Iterative] {
            let seq = decompose(&a, &TpdConfig::new().with_variant(variant));
            let par = decompose(&a, &TpdConfig::new().with_variant(variant).with_parallel(true));
            assert_eq!(seq, par);
        }
    }

    proptest! {
        #[test]
        fn linearity(seed_a in any::<u64>(), seed_b in any::<u64>(), alpha in -2.0f64..2.0, beta in -2.0f64..2.0, n in 1usize..=4) {
            let a = random_dense(n, seed_a);
            let b = random_dense(n, seed_b);
            let (alpha, beta) = (c(alpha, 0.5), c(beta, -0.25));
            let combo = a.linear_combination(alpha, &b, beta).unwrap();
            let cfg = TpdConfig::new();
            let da = decompose_recursive(&a, &cfg);
            let db = decompose_recursive(&b, &cfg);
            let dc = decompose_recursive(&combo, &cfg);
            for t in dc.iter() {
                let want = alpha * da.get(&t.string).unwrap_or_default() + beta * db.get(&t.string).unwrap_or_default();
                prop_assert!((t.weight - want).norm() <= 1e-10);
            }
            for t in da.iter().chain(db.iter()) {
                let want = alpha * da.get(&t.string).unwrap_or_default() + beta * db.get(&t.string).unwrap_or_default();
                let got = dc.get(&t.string).unwrap_or_default();
                prop_assert!((got - want).norm() <= 1e-10);
            }
        }

        #[test]
        fn recombination_random_blocks(seed in any::<u64>(), n in 1usize..=5) {
            let a = random_dense(n, seed);
            let w = cmw_split(&a).unwrap();
            let h = a.dim() / 2;
            let tol = 1e-15 * a.max_abs();
            let i = Complex64::i();
            for r in 0..h {
                for col in 0..h {
                    prop_assert!((w[0].get(r, col) + w[3].get(r, col) - a.get(r, col)).norm() <= tol);
                    prop_assert!((w[1].get(r, col) - i * w[2].get(r, col) - a.get(r, col + h)).norm() <= tol);
                    prop_assert!((w[1].get(r, col) + i * w[2].get(r, col) - a.get(r + h, col)).norm() <= tol);
                    prop_assert!((w[0].get(r, col) - w[3].get(r, col) - a.get(r + h, col + h)).norm() <= tol);
                }
            }
        }
    }
}
