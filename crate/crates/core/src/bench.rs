//! Timing sweeps over (method, kind, n).
//!
//! Each cell gets one untimed warmup and then `reps` timed runs. Only the
//! decomposition call is inside the clock; generation and layout conversion
//! happen before it.

use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::generators::{generate, generate_sparse, GeneratorKind, GeneratorSpec, DEFAULT_DENSITY};
use crate::io::MatrixFile;
use crate::method::{DecomposeOptions, Method};

pub const CSV_HEADER: &str = "method,kind,n,rep,wall_time_s,terms";
pub const SUMMARY_HEADER: &str = "method,kind,n,median_wall_time_s,terms";
pub const DEFAULT_REPS: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub method: Method,
    pub kind: GeneratorKind,
    pub n: usize,
    pub rep: usize,
    /// Seconds, always > 0.
    pub wall_time: f64,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub method: Method,
    pub kind: GeneratorKind,
    pub n: usize,
    pub median_wall_time: f64,
    pub terms: usize,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub kinds: Vec<GeneratorKind>,
    pub qubits: RangeInclusive<usize>,
    pub methods: Vec<Method>,
    pub reps: usize,
    pub seed: u64,
    pub density: f64,
    pub options: DecomposeOptions,
}

impl BenchConfig {
    pub fn new(kinds: Vec<GeneratorKind>, qubits: RangeInclusive<usize>, methods: Vec<Method>) -> Self {
        BenchConfig {
            kinds,
            qubits,
            methods,
            reps: DEFAULT_REPS,
            seed: 0,
            density: DEFAULT_DENSITY,
            options: DecomposeOptions::default(),
        }
    }

    /// Cells in output order: method name, kind name, then n, all ascending.
    pub fn cells(&self) -> Vec<(Method, GeneratorKind, usize)> {
        let mut methods = self.methods.clone();
        methods.sort_by_key(|m| m.name());
        methods.dedup();
        let mut kinds = self.kinds.clone();
        kinds.sort_by_key(|k| k.name());
        kinds.dedup();
        let mut cells = Vec::new();
        for &m in &methods {
            for &k in &kinds {
                for n in self.qubits.clone() {
                    cells.push((m, k, n));
                }
            }
        }
        cells
    }

    fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidSpec("reps must be >= 1".into()));
        }
        if self.qubits.is_empty() || *self.qubits.start() == 0 {
            return Err(Error::InvalidSpec(format!("bad qubit range {:?}", self.qubits)));
        }
        for &m in &self.methods {
            m.check_guard(*self.qubits.end(), self.options.force)?;
        }
        Ok(())
    }
}

fn input_for(method: Method, spec: &GeneratorSpec) -> Result<MatrixFile> {
    Ok(if method.uses_sparse_input() {
        MatrixFile::Sparse(generate_sparse(spec)?)
    } else {
        MatrixFile::Dense(generate(spec)?)
    })
}

/// Runs the sweep, calling `on_record` as each timed run finishes.
pub fn run_bench(cfg: &BenchConfig, mut on_record: impl FnMut(&BenchRecord)) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let mut records = Vec::new();
    for (method, kind, n) in cfg.cells() {
        let spec = GeneratorSpec::new(kind, n)
            .with_seed(cfg.seed)
            .with_density(cfg.density);
        let input = input_for(method, &spec)?;
        method.decompose(&input, &cfg.options)?;
        for rep in 0..cfg.reps {
            let start = Instant::now();
            let d = method.decompose(&input, &cfg.options)?;
            let elapsed = start.elapsed().as_secs_f64();
            let record = BenchRecord {
                method,
                kind,
                n,
                rep,
                wall_time: elapsed.max(1e-9),
                terms: d.len(),
            };
            on_record(&record);
            records.push(record);
        }
    }
    Ok(records)
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of nothing");
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

/// One row per (method, kind, n) cell, in record order.
pub fn summarize(records: &[BenchRecord]) -> Vec<CellSummary> {
    let mut out = Vec::new();
    for group in records.chunk_by(|a, b| (a.method, a.kind, a.n) == (b.method, b.kind, b.n)) {
        let mut times: Vec<f64> = group.iter().map(|r| r.wall_time).collect();
        out.push(CellSummary {
            method: group[0].method,
            kind: group[0].kind,
            n: group[0].n,
            median_wall_time: median(&mut times),
            terms: group[0].terms,
        });
    }
    out
}

pub fn write_csv<W: Write>(records: &[BenchRecord], w: &mut W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{},{},{},{},{:e},{}", r.method, r.kind, r.n, r.rep, r.wall_time, r.terms)?;
    }
    Ok(())
}

pub fn write_summary_csv<W: Write>(summary: &[CellSummary], w: &mut W) -> Result<()> {
    writeln!(w, "{SUMMARY_HEADER}")?;
    for s in summary {
        writeln!(w, "{},{},{},{:e},{}", s.method, s.kind, s.n, s.median_wall_time, s.terms)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_count_and_order() {
        let mut cfg = BenchConfig::new(
            vec![GeneratorKind::Unit],
            2..=4,
            vec![Method::TpdRecursive, Method::Naive],
        );
        cfg.seed = 1;
        let records = run_bench(&cfg, |_| {}).unwrap();
        assert_eq!(records.len(), 30);
        let keys: Vec<_> = records.iter().map(|r| (r.method.name(), r.kind.name(), r.n, r.rep)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(records.iter().all(|r| r.wall_time > 0.0 && r.terms == 1));
        assert_eq!(summarize(&records).len(), 6);
    }

    #[test]
    fn diagonal_terms_bounded() {
        let cfg = BenchConfig::new(vec![GeneratorKind::Diagonal], 5..=5, vec![Method::TpdSparse]);
        let records = run_bench(&cfg, |_| {}).unwrap();
        assert!(records.iter().all(|r| r.terms <= 32));
    }

    #[test]
    fn guard_is_checked_up_front() {
        let cfg = BenchConfig::new(vec![GeneratorKind::Unit], 2..=9, vec![Method::Naive]);
        let mut seen = 0;
        assert!(matches!(
            run_bench(&cfg, |_| seen += 1),
            Err(Error::GuardExceeded { .. })
        ));
        assert_eq!(seen, 0);
    }

    #[test]
    fn median_values() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn csv_layout() {
        let records = vec![BenchRecord {
            method: Method::Composer,
            kind: GeneratorKind::Tfim,
            n: 3,
            rep: 0,
            wall_time: 0.5,
            terms: 5,
        }];
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "method,kind,n,rep,wall_time_s,terms\ncomposer,tfim,3,0,5e-1,5\n");
        let mut buf = Vec::new();
        write_summary_csv(&summarize(&records), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "method,kind,n,median_wall_time_s,terms\ncomposer,tfim,3,5e-1,5\n"
        );
    }
}
