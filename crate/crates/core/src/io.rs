//! Matrix files.
//!
//! Dense text:
//!
//! ```text
//! paulitpd-dense v1 <dim>
//! <dim lines of dim whitespace-separated entries: `re`, `re+imi` or `re-imi`>
//! ```
//!
//! Sparse matrices use Matrix Market `coordinate` files with 1-based indices.
//! `real`, `integer` and `complex` fields are read with `general`, `symmetric`
//! or `hermitian` symmetry; the writer always emits `complex general` sorted by
//! row then column. Numbers are written in shortest round-trip form, so
//! reading a written file gives back the same bits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{qubits_for_dim, DenseOperator, SparseOperator};

pub const DENSE_MAGIC: &str = "paulitpd-dense";
pub const DENSE_VERSION: &str = "v1";
const MM_BANNER: &str = "%%MatrixMarket";

/// A matrix read from disk in whichever layout the file used.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixFile {
    Dense(DenseOperator),
    Sparse(SparseOperator),
}

impl MatrixFile {
    pub fn n(&self) -> usize {
        match self {
            MatrixFile::Dense(a) => a.n(),
            MatrixFile::Sparse(a) => a.n(),
        }
    }

    pub fn to_dense(&self) -> DenseOperator {
        match self {
            MatrixFile::Dense(a) => a.clone(),
            MatrixFile::Sparse(a) => a.to_dense(),
        }
    }

    pub fn to_sparse(&self) -> SparseOperator {
        match self {
            MatrixFile::Dense(a) => SparseOperator::from_dense(a),
            MatrixFile::Sparse(a) => a.clone(),
        }
    }
}

/// Reads either format, chosen by the first line of the file.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<MatrixFile> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    if text.trim_start().starts_with(MM_BANNER) {
        Ok(MatrixFile::Sparse(parse_matrix_market(text.as_bytes())?))
    } else {
        Ok(MatrixFile::Dense(parse_dense(text.as_bytes())?))
    }
}

pub fn read_dense(path: impl AsRef<Path>) -> Result<DenseOperator> {
    parse_dense(BufReader::new(File::open(path)?))
}

pub fn write_dense(a: &DenseOperator, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_dense_to(a, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn read_sparse_mm(path: impl AsRef<Path>) -> Result<SparseOperator> {
    parse_matrix_market(BufReader::new(File::open(path)?))
}

pub fn write_sparse_mm(a: &SparseOperator, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix_market_to(a, &mut w)?;
    w.flush()?;
    Ok(())
}

/// Shortest text that parses back to the same `f64`.
fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        fmt_f64(z.re)
    } else if z.im.is_sign_negative() {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-z.im))
    } else {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(z.im))
    }
}

/// Parses `re`, `re+imi`, `re-imi` or `imi`.
pub fn parse_complex(token: &str) -> Option<Complex64> {
    let Some(body) = token.strip_suffix('i') else {
        return token.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse().ok()?;
            let im = body[k..].parse().ok()?;
            Some(Complex64::new(re, im))
        }
        None => body.parse().ok().map(|im| Complex64::new(0.0, im)),
    }
}

pub fn write_dense_to<W: Write>(a: &DenseOperator, w: &mut W) -> Result<()> {
    writeln!(w, "{DENSE_MAGIC} {DENSE_VERSION} {}", a.dim())?;
    for r in 0..a.dim() {
        let line: Vec<String> = a.row(r).iter().map(|&z| format_complex(z)).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn format_dense(a: &DenseOperator) -> String {
    let mut buf = Vec::new();
    write_dense_to(a, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn parse_dense<R: BufRead>(reader: R) -> Result<DenseOperator> {
    let mut lines = reader.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break line;
                }
            }
            None => return Err(Error::parse(1, "missing header")),
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let dim: usize = match fields[..] {
        [DENSE_MAGIC, DENSE_VERSION, dim] => dim
            .parse()
            .map_err(|_| Error::parse(1, format!("bad dimension {dim:?}")))?,
        _ => {
            return Err(Error::parse(
                1,
                format!("expected `{DENSE_MAGIC} {DENSE_VERSION} <dim>`"),
            ))
        }
    };
    qubits_for_dim(dim)?;
    let mut entries = Vec::with_capacity(dim * dim);
    let mut rows = 0;
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let before = entries.len();
        for token in line.split_whitespace() {
            let z = parse_complex(token)
                .ok_or_else(|| Error::parse(idx + 1, format!("bad entry {token:?}")))?;
            entries.push(z);
        }
        if entries.len() - before != dim {
            return Err(Error::EntryCount {
                expected: dim,
                found: entries.len() - before,
            });
        }
        rows += 1;
    }
    if rows != dim {
        return Err(Error::EntryCount {
            expected: dim * dim,
            found: entries.len(),
        });
    }
    DenseOperator::from_dim(dim, entries)
}

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, PartialEq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
}

fn parse_banner(line: &str) -> Result<(Field, Symmetry)> {
    let lower = line.to_ascii_lowercase();
    let fields: Vec<&str> = lower.split_whitespace().collect();
    let [banner, object, format, field, symmetry] = fields[..] else {
        return Err(Error::parse(1, "malformed Matrix Market banner"));
    };
    if banner != MM_BANNER.to_ascii_lowercase() || object != "matrix" {
        return Err(Error::parse(1, "malformed Matrix Market banner"));
    }
    if format != "coordinate" {
        return Err(Error::Unsupported(format!("format {format}")));
    }
    let field = match field {
        "real" | "integer" => Field::Real,
        "complex" => Field::Complex,
        other => return Err(Error::Unsupported(format!("field {other}"))),
    };
    let symmetry = match symmetry {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(Error::Unsupported(format!("symmetry {other}"))),
    };
    Ok((field, symmetry))
}

pub fn parse_matrix_market<R: BufRead>(reader: R) -> Result<SparseOperator> {
    let mut lines = reader.lines().enumerate();
    let (field, symmetry) = match lines.next() {
        Some((_, line)) => parse_banner(&line?)?,
        None => return Err(Error::parse(1, "empty file")),
    };
    let mut body = lines.filter_map(|(idx, line)| match line {
        Ok(l) if l.trim().is_empty() || l.trim_start().starts_with('%') => None,
        Ok(l) => Some(Ok((idx + 1, l))),
        Err(e) => Some(Err(Error::from(e))),
    });

    let (size_line, size) = body
        .next()
        .ok_or_else(|| Error::parse(2, "missing size line"))??;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(size_line, "bad size line"))?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(Error::parse(size_line, "expected `rows cols nnz`"));
    };
    if rows != cols {
        return Err(Error::DimensionMismatch {
            left: rows,
            right: cols,
        });
    }
    let n = qubits_for_dim(rows)?;

    let mut triplets = Vec::with_capacity(nnz);
    let mut read = 0;
    for item in body {
        let (line_no, line) = item?;
        if read == nnz {
            return Err(Error::parse(line_no, "more entries than declared"));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let want = if field == Field::Complex { 4 } else { 3 };
        if tokens.len() != want {
            return Err(Error::parse(line_no, format!("expected {want} fields")));
        }
        let index = |t: &str| -> Result<usize> {
            let i: usize = t
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad index {t:?}")))?;
            if i == 0 || i > rows {
                return Err(Error::parse(line_no, format!("index {i} out of range")));
            }
            Ok(i - 1)
        };
        let number = |t: &str| -> Result<f64> {
            t.parse()
                .map_err(|_| Error::parse(line_no, format!("bad value {t:?}")))
        };
        let (r, c) = (index(tokens[0])?, index(tokens[1])?);
        let v = Complex64::new(
            number(tokens[2])?,
            if want == 4 { number(tokens[3])? } else { 0.0 },
        );
        triplets.push((r, c, v));
        if r != c {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => triplets.push((c, r, v)),
                Symmetry::Hermitian => triplets.push((c, r, v.conj())),
            }
        }
        read += 1;
    }
    if read != nnz {
        return Err(Error::EntryCount {
            expected: nnz,
            found: read,
        });
    }
    SparseOperator::from_triplets(n, triplets)
}

pub fn write_matrix_market_to<W: Write>(a: &SparseOperator, w: &mut W) -> Result<()> {
    writeln!(w, "{MM_BANNER} matrix coordinate complex general")?;
    writeln!(w, "{} {} {}", a.dim(), a.dim(), a.nnz())?;
    for (r, c, v) in a.iter() {
        writeln!(w, "{} {} {} {}", r + 1, c + 1, fmt_f64(v.re), fmt_f64(v.im))?;
    }
    Ok(())
}

pub fn format_matrix_market(a: &SparseOperator) -> String {
    let mut buf = Vec::new();
    write_matrix_market_to(a, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
