//! Seedable benchmark inputs.
//!
//! Random draws use ChaCha8 seeded with [`GeneratorSpec::seed`] and are taken
//! in row-major order, so a spec always produces the same matrix.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator::{DenseOperator, SparseOperator};
use crate::pauli::{PauliDigit, PauliString, RowEntries, MAX_QUBITS};

pub const DEFAULT_DENSITY: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// I.i.d. uniform [0, 1) real entries.
    Random,
    /// `(R + R^T) / 2` of a random draw.
    Symmetric,
    /// `(C + C^*) / 2` with real and imaginary parts uniform in [0, 1).
    Hermitian,
    /// Uniform diagonal, zero elsewhere.
    Diagonal,
    /// Each entry present with probability `density`, value uniform in [0, 1).
    Sparse,
    /// The identity.
    Unit,
    /// Open-chain transverse-field Ising model `-J sum Z_i Z_{i+1} - g sum X_i`.
    Tfim,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 7] = [
        GeneratorKind::Random,
        GeneratorKind::Symmetric,
        GeneratorKind::Hermitian,
        GeneratorKind::Diagonal,
        GeneratorKind::Sparse,
        GeneratorKind::Unit,
        GeneratorKind::Tfim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Random => "random",
            GeneratorKind::Symmetric => "symmetric",
            GeneratorKind::Hermitian => "hermitian",
            GeneratorKind::Diagonal => "diagonal",
            GeneratorKind::Sparse => "sparse",
            GeneratorKind::Unit => "unit",
            GeneratorKind::Tfim => "tfim",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown matrix kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    /// Fill probability for [`GeneratorKind::Sparse`].
    pub density: f64,
    /// Ising coupling `J` for [`GeneratorKind::Tfim`].
    pub coupling: f64,
    /// Transverse field `g` for [`GeneratorKind::Tfim`].
    pub field: f64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize) -> Self {
        GeneratorSpec {
            kind,
            n,
            seed: 0,
            density: DEFAULT_DENSITY,
            coupling: 1.0,
            field: 1.0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_QUBITS {
            return Err(Error::InvalidSpec(format!("n must be in 1..={MAX_QUBITS}, got {}", self.n)));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "density must be in (0, 1], got {}",
                self.density
            )));
        }
        if !self.coupling.is_finite() || !self.field.is_finite() {
            return Err(Error::InvalidSpec("TFIM parameters must be finite".into()));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Dense matrix for `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<DenseOperator> {
    spec.validate()?;
    let n = spec.n;
    let dim = 1usize << n;
    let mut rng = spec.rng();
    match spec.kind {
        GeneratorKind::Random => {
            let entries = (0..dim * dim).map(|_| re(rng.random())).collect();
            DenseOperator::new(n, entries)
        }
        GeneratorKind::Symmetric => {
            let r: Vec<f64> = (0..dim * dim).map(|_| rng.random()).collect();
            let mut entries = Vec::with_capacity(dim * dim);
            for j in 0..dim {
                for k in 0..dim {
                    entries.push(re((r[j * dim + k] + r[k * dim + j]) * 0.5));
                }
            }
            DenseOperator::new(n, entries)
        }
        GeneratorKind::Hermitian => {
            let c: Vec<Complex64> = (0..dim * dim)
                .map(|_| Complex64::new(rng.random(), rng.random()))
                .collect();
            let mut entries = Vec::with_capacity(dim * dim);
            for j in 0..dim {
                for k in 0..dim {
                    entries.push((c[j * dim + k] + c[k * dim + j].conj()) * 0.5);
                }
            }
            DenseOperator::new(n, entries)
        }
        GeneratorKind::Diagonal => {
            let diag: Vec<Complex64> = (0..dim).map(|_| re(rng.random())).collect();
            DenseOperator::diagonal(n, &diag)
        }
        GeneratorKind::Unit => DenseOperator::identity(n),
        GeneratorKind::Sparse | GeneratorKind::Tfim => Ok(generate_sparse(spec)?.to_dense()),
    }
}

/// Sparse matrix for `spec`; equal to the densified [`generate`] output.
/// Sparse, diagonal, unit and TFIM inputs are built without a dense detour.
pub fn generate_sparse(spec: &GeneratorSpec) -> Result<SparseOperator> {
    spec.validate()?;
    let n = spec.n;
    let dim = 1usize << n;
    let mut rng = spec.rng();
    match spec.kind {
        GeneratorKind::Sparse => {
            let mut triplets = Vec::new();
            for r in 0..dim {
                for c in 0..dim {
                    if rng.random::<f64>() < spec.density {
                        triplets.push((r, c, re(rng.random())));
                    }
                }
            }
            SparseOperator::from_triplets(n, triplets)
        }
        GeneratorKind::Diagonal => {
            let triplets: Vec<_> = (0..dim).map(|r| (r, r, re(rng.random()))).collect();
            SparseOperator::from_triplets(n, triplets)
        }
        GeneratorKind::Unit => SparseOperator::identity(n),
        GeneratorKind::Tfim => {
            let mut triplets = Vec::new();
            for (string, weight) in tfim_terms(n, spec.coupling, spec.field) {
                let rows = RowEntries::new(&string);
                for r in 0..dim {
                    let (c, phase) = rows.entry(r);
                    triplets.push((r, c, phase.apply(re(weight))));
                }
            }
            SparseOperator::from_triplets(n, triplets)
        }
        _ => Ok(SparseOperator::from_dense(&generate(spec)?)),
    }
}

/// Pauli terms of the open-chain TFIM: `Z_i Z_{i+1}` with weight `-coupling`
/// for each bond, then `X_i` with weight `-field` for each site.
pub fn tfim_terms(n: usize, coupling: f64, field: f64) -> Vec<(PauliString, f64)> {
    let mut terms = Vec::with_capacity(2 * n);
    let mut digits = vec![PauliDigit::I; n];
    for i in 0..n.saturating_sub(1) {
        digits[i] = PauliDigit::Z;
        digits[i + 1] = PauliDigit::Z;
        terms.push((PauliString::new(&digits).expect("valid length"), -coupling));
        digits[i] = PauliDigit::I;
        digits[i + 1] = PauliDigit::I;
    }
    for i in 0..n {
        digits[i] = PauliDigit::X;
        terms.push((PauliString::new(&digits).expect("valid length"), -field));
        digits[i] = PauliDigit::I;
    }
    terms
}
