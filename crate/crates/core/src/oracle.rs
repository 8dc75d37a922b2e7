//! Reference decompositions that evaluate every weight `tr(σ^t A) / 2^n`
//! directly, with no pruning. They share nothing with the slicing engine.
//!
//! Traces are summed over the orbits `{r, r ^ x}` of the row permutation of
//! `σ^t`, so the two mirror terms of a real symmetric input against an
//! antisymmetric string cancel exactly instead of leaving rounding residue.

use num_complex::Complex64;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::operator::DenseOperator;
use crate::pauli::{PauliDigit, PauliString, PauliTerm, RowEntries};

pub const NAIVE_MAX_QUBITS: usize = 8;
pub const COMPOSER_MAX_QUBITS: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct OracleOptions {
    /// Weights with modulus `<= store_epsilon` are left out (0 keeps all nonzero weights).
    pub store_epsilon: f64,
    /// Skip the qubit-count guard.
    pub force: bool,
}

fn pauli_matrix(d: PauliDigit) -> [Complex64; 4] {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let i = Complex64::new(0.0, 1.0);
    match d {
        PauliDigit::I => [o, z, z, o],
        PauliDigit::X => [z, o, o, z],
        PauliDigit::Y => [z, -i, i, z],
        PauliDigit::Z => [o, z, z, -o],
    }
}

/// Kronecker product of two square row-major matrices.
pub fn kron(a: &[Complex64], a_dim: usize, b: &[Complex64], b_dim: usize) -> Vec<Complex64> {
    let dim = a_dim * b_dim;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..a_dim {
        for j in 0..a_dim {
            let s = a[i * a_dim + j];
            for k in 0..b_dim {
                let row = (i * b_dim + k) * dim + j * b_dim;
                for l in 0..b_dim {
                    out[row + l] = s * b[k * b_dim + l];
                }
            }
        }
    }
    out
}

/// Dense matrix of `s` built as `σ^t1 ⊗ σ^t2 ⊗ ...` by repeated Kronecker products.
pub fn kron_string(s: &PauliString) -> DenseOperator {
    let mut digits = s.digits();
    let mut m = pauli_matrix(digits.next().expect("nonempty string")).to_vec();
    let mut dim = 2;
    for d in digits {
        m = kron(&m, dim, &pauli_matrix(d), 2);
        dim *= 2;
    }
    DenseOperator::from_dim(dim, m).expect("power-of-two dimension")
}

/// `tr(S A)` for dense `S`, summing `S[j,k] A[k,j]` and its mirror together.
pub fn dense_trace_product(s: &DenseOperator, a: &DenseOperator) -> Result<Complex64> {
    if s.n() != a.n() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: a.dim(),
        });
    }
    let dim = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        acc += s.get(j, j) * a.get(j, j);
        for k in j + 1..dim {
            acc += s.get(j, k) * a.get(k, j) + s.get(k, j) * a.get(j, k);
        }
    }
    Ok(acc)
}

/// `tr(σ^s A)` using the one-entry-per-row form of `σ^s`.
pub fn composer_trace(rows: &RowEntries, a: &DenseOperator) -> Complex64 {
    let dim = a.dim();
    let x = rows.x_mask();
    let entries = a.entries();
    let mut acc = Complex64::new(0.0, 0.0);
    if x == 0 {
        for r in 0..dim {
            let (_, phase) = rows.entry(r);
            acc += phase.apply(entries[r * dim + r]);
        }
    } else {
        for r in 0..dim {
            let c = r ^ x;
            if c < r {
                continue;
            }
            // σ[r, c] A[c, r] + σ[c, r] A[r, c]
            let (_, p) = rows.entry(r);
            let (_, q) = rows.entry(c);
            acc += p.apply(entries[c * dim + r]) + q.apply(entries[r * dim + c]);
        }
    }
    acc
}

fn guard(method: &'static str, limit: usize, n: usize, force: bool) -> Result<()> {
    if n > limit && !force {
        return Err(Error::GuardExceeded { method, limit, n });
    }
    Ok(())
}

fn sweep(
    a: &DenseOperator,
    opts: &OracleOptions,
    mut trace: impl FnMut(&PauliString) -> Complex64,
) -> Decomposition {
    let n = a.n();
    let scale = 1.0 / a.dim() as f64;
    let eps2 = opts.store_epsilon * opts.store_epsilon;
    let mut terms = Vec::new();
    for code in 0..1u64 << (2 * n) {
        let s = PauliString::from_index_unchecked(n, code);
        let w = trace(&s) * scale;
        if w.norm_sqr() > eps2 || (opts.store_epsilon == 0.0 && w != Complex64::new(0.0, 0.0)) {
            terms.push(PauliTerm::new(s, w));
        }
    }
    Decomposition::from_sorted(n, terms)
}

/// All `4^n` weights against Kronecker-built dense strings. Limited to
/// n <= 8 unless forced.
pub fn decompose_naive_dense_with(a: &DenseOperator, opts: &OracleOptions) -> Result<Decomposition> {
    guard("naive", NAIVE_MAX_QUBITS, a.n(), opts.force)?;
    Ok(sweep(a, opts, |s| {
        dense_trace_product(&kron_string(s), a).expect("same dimension")
    }))
}

pub fn decompose_naive_dense(a: &DenseOperator) -> Result<Decomposition> {
    decompose_naive_dense_with(a, &OracleOptions::default())
}

/// All `4^n` weights, each trace costing `O(2^n)` through the sparse form of
/// the string. Limited to n <= 10 unless forced.
pub fn decompose_composer_with(a: &DenseOperator, opts: &OracleOptions) -> Result<Decomposition> {
    guard("composer", COMPOSER_MAX_QUBITS, a.n(), opts.force)?;
    Ok(sweep(a, opts, |s| composer_trace(&RowEntries::new(s), a)))
}

pub fn decompose_composer(a: &DenseOperator) -> Result<Decomposition> {
    decompose_composer_with(a, &OracleOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::frobenius_inner;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_complex(n: usize, seed: u64) -> DenseOperator {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = 1 << n;
        let entries = (0..dim * dim).map(|_| c(rng.random(), rng.random())).collect();
        DenseOperator::new(n, entries).unwrap()
    }

    #[test]
    fn identity() {
        let d = decompose_naive_dense(&DenseOperator::identity(2).unwrap()).unwrap();
        assert_eq!(d.to_canonical_string(), "II 1 0\n");
        let d = decompose_composer(&DenseOperator::identity(5).unwrap()).unwrap();
        assert_eq!(d.to_canonical_string(), "IIIII 1 0\n");
    }

    #[test]
    fn diag_by_hand() {
        // tr(II A)/4 = 10/4, tr(IZ A)/4 = (1-2+3-4)/4, tr(ZI A)/4 = (1+2-3-4)/4,
        // tr(ZZ A)/4 = (1-2-3+4)/4 = 0.
        let a = DenseOperator::diagonal(2, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        for d in [decompose_naive_dense(&a).unwrap(), decompose_composer(&a).unwrap()] {
            assert_eq!(d.to_canonical_string(), "II 2.5 0\nIZ -0.5 0\nZI -1 0\n");
        }
    }

    #[test]
    fn pauli_y() {
        let a = DenseOperator::new(1, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        let d = decompose_naive_dense(&a).unwrap();
        assert_eq!(d.to_canonical_string(), "Y 1 0\n");
    }

    #[test]
    fn guards() {
        let big = DenseOperator::identity(9).unwrap();
        assert!(matches!(
            decompose_naive_dense(&big),
            Err(Error::GuardExceeded { limit: 8, n: 9, .. })
        ));
        let huge = DenseOperator::zeros(11).unwrap();
        assert!(matches!(
            decompose_composer(&huge),
            Err(Error::GuardExceeded { limit: 10, .. })
        ));
    }

    #[test]
    fn oracles_agree() {
        for n in 1..=4 {
            for seed in 0..3 {
                let a = random_complex(n, seed);
                let naive = decompose_naive_dense(&a).unwrap();
                let comp = decompose_composer(&a).unwrap();
                assert_eq!(naive.len(), comp.len());
                for (p, q) in naive.iter().zip(comp.iter()) {
                    assert_eq!(p.string, q.string);
                    assert!((p.weight - q.weight).norm() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn conjugating_the_string_is_immaterial() {
        for n in 1..=3 {
            let a = random_complex(n, 7);
            for code in 0..1u64 << (2 * n) {
                let s = PauliString::from_index(n, code).unwrap();
                let dense = kron_string(&s);
                let plain = dense_trace_product(&dense, &a).unwrap() / a.dim() as f64;
                let conj = frobenius_inner(&dense, &a).unwrap();
                assert!((plain - conj).norm() <= 1e-14, "{s}");
            }
        }
    }

    #[test]
    fn store_epsilon_filters() {
        let mut a = DenseOperator::identity(1).unwrap();
        a.set(0, 1, c(1e-8, 0.0));
        let all = decompose_composer(&a).unwrap();
        assert_eq!(all.len(), 3);
        let opts = OracleOptions {
            store_epsilon: 1e-6,
            force: false,
        };
        assert_eq!(decompose_composer_with(&a, &opts).unwrap().len(), 1);
    }

    #[test]
    fn kron_matches_hand_built() {
        let xz = kron_string(&"XZ".parse().unwrap());
        let want = DenseOperator::from_real(2, &[
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            1.0, 0.0, 0.0, 0.0, //
            0.0, -1.0, 0.0, 0.0,
        ])
        .unwrap();
        assert_eq!(xz, want);
    }
}
