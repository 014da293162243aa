//! Text formats for matrices and polynomial matrices.
//!
//! Matrix files:
//!
//! ```text
//! field Fp 5
//! 2 2
//! 0 0
//! 1 0
//! ```
//!
//! Polynomial matrix files give a profile header and `m` rows of `m`
//! bracketed coefficient lists, constant term first. A leading field line is
//! optional; without one the caller's default field is used.
//!
//! ```text
//! field Fp 2
//! profile 2 1
//! [0,1] [0]
//! [0]   [1]
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Line and column
//! numbers in errors count from 1.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::ExactMatrix;
use crate::poly::{Poly, PolyMatrix};
use crate::structured::BlockProfile;

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(byte, t)| (line[..byte].chars().count() + 1, t)).collect()
}

fn parse_field_line(line_no: usize, line: &str) -> Result<FieldSpec> {
    let toks = tokens(line);
    match toks.split_first() {
        Some(((_, "field"), rest)) if !rest.is_empty() => {
            let spec = rest.iter().map(|t| t.1).collect::<Vec<_>>().join(" ");
            spec.parse().map_err(|e| relocate(e, line_no, rest[0].0))
        }
        _ => Err(Error::parse(line_no, 1, "expected `field Fp <p>` or `field Q`")),
    }
}

fn relocate(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::parse(line, col, msg),
        other => Error::parse(line, col, other.to_string()),
    }
}

fn parse_count(line: usize, col: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, col, format!("expected a nonnegative integer, found {tok:?}")))
}

/// Parses the matrix format. With `field_override`, entries are read in that
/// field instead of the one named in the file.
pub fn parse_matrix(text: &str, field_override: Option<FieldSpec>) -> Result<ExactMatrix> {
    let mut lines = content_lines(text);
    let (l1, first) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
    let field =
        field_override.map_or_else(|| parse_field_line(l1, first), |f| parse_field_line(l1, first).map(|_| f))?;
    let (l2, dims) = lines.next().ok_or_else(|| Error::parse(l1 + 1, 1, "missing `<rows> <cols>` line"))?;
    let (rows, cols) = match tokens(dims).as_slice() {
        [(c1, r), (c2, c)] => (parse_count(l2, *c1, r)?, parse_count(l2, *c2, c)?),
        _ => return Err(Error::parse(l2, 1, "expected `<rows> <cols>`")),
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut last = l2;
    for r in 0..rows {
        let (ln, line) =
            lines.next().ok_or_else(|| Error::parse(last + 1, 1, format!("expected {rows} rows, found {r}")))?;
        last = ln;
        let toks = tokens(line);
        if toks.len() != cols {
            return Err(Error::parse(ln, 1, format!("expected {cols} entries, found {}", toks.len())));
        }
        for (col, t) in toks {
            data.push(field.parse_element(t).map_err(|e| relocate(e, ln, col))?);
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, 1, "unexpected content after the last row"));
    }
    ExactMatrix::from_flat(field, rows, cols, data)
}

fn field_line(field: FieldSpec) -> String {
    match field {
        FieldSpec::Prime(p) => format!("field Fp {p}"),
        FieldSpec::Rationals => "field Q".to_string(),
    }
}

pub fn format_matrix(m: &ExactMatrix) -> String {
    let mut s = format!("{}\n{} {}\n", field_line(m.field()), m.rows(), m.cols());
    for row in m.to_string_rows() {
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

/// Splits a row of bracketed lists into `(column, inner text)` pairs.
fn bracket_entries(line_no: usize, line: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut chars = line.chars().enumerate();
    while let Some((i, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '[' => {
                let mut inner = String::new();
                loop {
                    match chars.next() {
                        Some((_, ']')) => break,
                        Some((_, ch)) => inner.push(ch),
                        None => return Err(Error::parse(line_no, i + 1, "unclosed '['")),
                    }
                }
                out.push((i + 1, inner));
            }
            other => return Err(Error::parse(line_no, i + 1, format!("expected '[', found '{other}'"))),
        }
    }
    Ok(out)
}

/// Parses the polynomial matrix format; `default_field` applies when the
/// file has no field line, and `field_override` wins over both.
pub fn parse_poly_matrix(
    text: &str,
    default_field: FieldSpec,
    field_override: Option<FieldSpec>,
) -> Result<(BlockProfile, PolyMatrix)> {
    let mut lines = content_lines(text).peekable();
    let mut field = default_field;
    if let Some((ln, line)) = lines.peek().copied() {
        if line.trim_start().starts_with("field") {
            field = parse_field_line(ln, line)?;
            lines.next();
        }
    }
    if let Some(f) = field_override {
        field = f;
    }
    let (lp, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing `profile k1 ... km` line"))?;
    let toks = tokens(header);
    if toks.first().map(|t| t.1) != Some("profile") || toks.len() < 2 {
        return Err(Error::parse(lp, 1, "expected `profile k1 ... km`"));
    }
    let k = toks[1..].iter().map(|(c, t)| parse_count(lp, *c, t)).collect::<Result<Vec<_>>>()?;
    let profile = BlockProfile::new(field, k).map_err(|e| relocate(e, lp, toks[1].0))?;
    let m = profile.m();
    let mut entries = Vec::with_capacity(m * m);
    let mut last = lp;
    for r in 0..m {
        let (ln, line) =
            lines.next().ok_or_else(|| Error::parse(last + 1, 1, format!("expected {m} rows, found {r}")))?;
        last = ln;
        let row = bracket_entries(ln, line)?;
        if row.len() != m {
            return Err(Error::parse(ln, 1, format!("expected {m} entries, found {}", row.len())));
        }
        for (col, inner) in row {
            let coeffs = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|c| field.parse_element(c).map_err(|e| relocate(e, ln, col)))
                    .collect::<Result<Vec<_>>>()?
            };
            entries.push(Poly::from_coeffs(field, coeffs));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, 1, "unexpected content after the last row"));
    }
    Ok((profile, PolyMatrix::from_entries(field, m, entries)?))
}

pub fn format_poly_matrix(profile: &BlockProfile, p: &PolyMatrix) -> String {
    let ks: Vec<String> = profile.k().iter().map(ToString::to_string).collect();
    let mut s = format!("{}\nprofile {}\n", field_line(p.field()), ks.join(" "));
    for i in 0..p.size() {
        let row: Vec<String> = (0..p.size()).map(|j| p.get(i, j).to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}
