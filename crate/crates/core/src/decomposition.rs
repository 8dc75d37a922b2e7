//! The result of a Pauli decomposition and its canonical text form.
//!
//! Text form: one `LABEL re im` line per term in lexicographic label order,
//! numbers rendered like C's `%.17g`. The parser also accepts blank lines and
//! `#` comments.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::DenseOperator;
use crate::pauli::{PauliString, PauliTerm, RowEntries, MAX_QUBITS};

/// Weighted sum of Pauli strings on `n` qubits. Terms are sorted by string,
/// unique, and never carry an exactly-zero weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    n: usize,
    terms: Vec<PauliTerm>,
}

impl Decomposition {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        Ok(Decomposition {
            n,
            terms: Vec::new(),
        })
    }

    /// Collects terms in any order, dropping zero weights. Duplicate strings
    /// and strings of the wrong length are rejected.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        let mut d = Self::empty(n)?;
        for t in terms {
            if t.string.len() != n {
                return Err(Error::InvalidLabel(t.string.to_string()));
            }
            if t.weight != Complex64::new(0.0, 0.0) {
                d.terms.push(t);
            }
        }
        d.terms.sort_by_key(|t| t.string);
        if let Some(w) = d.terms.windows(2).find(|w| w[0].string == w[1].string) {
            return Err(Error::DuplicateTerm(w[0].string.to_string()));
        }
        Ok(d)
    }

    /// Terms must already be sorted, unique and nonzero.
    pub(crate) fn from_sorted(n: usize, terms: Vec<PauliTerm>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].string < w[1].string));
        debug_assert!(terms.iter().all(|t| t.string.len() == n));
        Decomposition { n, terms }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = &PauliTerm> {
        self.terms.iter()
    }

    pub fn get(&self, string: &PauliString) -> Option<Complex64> {
        self.terms
            .binary_search_by_key(string, |t| t.string)
            .ok()
            .map(|i| self.terms[i].weight)
    }

    /// Looks up a term by its text label.
    pub fn weight(&self, label: &str) -> Option<Complex64> {
        label.parse().ok().and_then(|s| self.get(&s))
    }

    pub fn strings(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms.iter().map(|t| t.string)
    }

    /// Dense matrix `sum_t w_t σ^t`.
    pub fn reconstruct(&self) -> DenseOperator {
        let mut out = DenseOperator::zeros(self.n).expect("valid qubit count");
        let dim = out.dim();
        let entries = out.entries_mut();
        for t in &self.terms {
            let rows = RowEntries::new(&t.string);
            for r in 0..dim {
                let (c, phase) = rows.entry(r);
                entries[r * dim + c] += phase.apply(t.weight);
            }
        }
        out
    }

    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            writeln!(
                out,
                "{} {} {}",
                t.string,
                format_g17(t.weight.re),
                format_g17(t.weight.im)
            )
            .unwrap();
        }
        out
    }

    /// Parses canonical text. The qubit count is taken from the labels, so the
    /// input must hold at least one term; see [`Decomposition::parse_with_qubits`].
    pub fn parse(text: &str) -> Result<Self> {
        let terms = parse_terms(text)?;
        let n = terms
            .first()
            .map(|(_, t)| t.string.len())
            .ok_or_else(|| Error::parse(0, "no terms to infer the qubit count from"))?;
        Self::collect_parsed(n, terms)
    }

    pub fn parse_with_qubits(text: &str, n: usize) -> Result<Self> {
        Self::collect_parsed(n, parse_terms(text)?)
    }

    fn collect_parsed(n: usize, terms: Vec<(usize, PauliTerm)>) -> Result<Self> {
        if let Some((line, t)) = terms.iter().find(|(_, t)| t.string.len() != n) {
            return Err(Error::parse(
                *line,
                format!("label {} does not have {n} qubits", t.string),
            ));
        }
        Self::from_terms(n, terms.into_iter().map(|(_, t)| t))
    }
}

fn parse_terms(text: &str) -> Result<Vec<(usize, PauliTerm)>> {
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [label, re, im] = fields[..] else {
            return Err(Error::parse(line_no, "expected `LABEL re im`"));
        };
        let string: PauliString = label
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad label {label:?}")))?;
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("bad number {s:?}")))
        };
        terms.push((line_no, PauliTerm::new(string, Complex64::new(num(re)?, num(im)?))));
    }
    Ok(terms)
}

/// Renders `x` the way C's `printf("%.17g", x)` does; negative zero prints as `0`.
pub fn format_g17(x: f64) -> String {
    const PRECISION: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (PRECISION - 1 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
