//! Plain-text formats for generator matrices and α witnesses.
//!
//! Matrix file:
//!
//! ```text
//! # Simplex [7,3]_2
//! 2 3 7
//! 0 0 0 1 1 1 1
//! 0 1 1 0 0 1 1
//! 1 0 1 0 1 0 1
//! ```
//!
//! The header is `q k n`, followed by `k` rows of `n` element codes. A `#`
//! starts a comment; blank lines are ignored. Witness files have the header
//! `q k r l` followed, for each of the `r` pairs, by the `l` rows of the
//! dual basis of `W_i` and then the `l + 1` rows of the dual basis of `U_i`.

use std::fmt::Write as _;

use crate::alpha::CoverWitness;
use crate::error::{Error, Result};
use crate::geometry::ProjectiveSpace;
use crate::gf::{Elem, FieldSpec};
use crate::linalg::Matrix;

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn numbers(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| Error::Parse { line, msg: format!("expected a non-negative integer, got {t:?}") }))
        .collect()
}

fn header<const N: usize>(lines: &mut dyn Iterator<Item = (usize, &str)>, names: &str) -> Result<(usize, [u64; N])> {
    let (line, s) = lines.next().ok_or(Error::Parse { line: 0, msg: format!("missing header `{names}`") })?;
    let v = numbers(line, s)?;
    let arr: [u64; N] = v
        .try_into()
        .map_err(|_| Error::Parse { line, msg: format!("header must be `{names}`") })?;
    Ok((line, arr))
}

fn read_rows(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    field: &FieldSpec,
    rows: usize,
    cols: usize,
) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let (line, s) = lines.next().ok_or(Error::Parse { line: 0, msg: format!("expected {rows} rows, found {r}") })?;
        let v = numbers(line, s)?;
        if v.len() != cols {
            return Err(Error::Parse { line, msg: format!("expected {cols} entries, found {}", v.len()) });
        }
        let row = v
            .into_iter()
            .map(|x| {
                let x = u32::try_from(x).map_err(|_| Error::ElementOutOfRange(u32::MAX, field.q()))?;
                field.elem(x)
            })
            .collect::<Result<Vec<Elem>>>()
            .map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        out.push(row);
    }
    Ok(out)
}

fn field_from(line: usize, q: u64) -> Result<FieldSpec> {
    let q = u32::try_from(q).map_err(|_| Error::Unsupported(u32::MAX))?;
    FieldSpec::new(q).map_err(|e| match e {
        Error::NotAPrimePower(_) | Error::Unsupported(_) => e,
        other => Error::Parse { line, msg: other.to_string() },
    })
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let (line, [q, k, n]) = header::<3>(&mut lines, "q k n")?;
    let field = field_from(line, q)?;
    if k == 0 || n == 0 {
        return Err(Error::Parse { line, msg: "k and n must be positive".into() });
    }
    let rows = read_rows(&mut lines, &field, k as usize, n as usize)?;
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, msg: "unexpected extra row".into() });
    }
    Matrix::from_rows(&field, n as usize, &rows)
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{} {} {}\n", m.field().q(), m.rows(), m.cols());
    for r in 0..m.rows() {
        out.push_str(&join(m.row(r)));
        out.push('\n');
    }
    out
}

fn join(row: &[Elem]) -> String {
    row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn format_witness(w: &CoverWitness) -> String {
    let mut out = format!("{} {} {} {}\n", w.q, w.k, w.r(), w.l);
    for (i, (outer, inner)) in w.outer.iter().zip(&w.inner).enumerate() {
        writeln!(out, "# pair {}", i + 1).unwrap();
        for d in [&outer.dual_basis, &inner.dual_basis] {
            for r in 0..d.rows() {
                out.push_str(&join(d.row(r)));
                out.push('\n');
            }
        }
    }
    out
}

/// Parses a witness and rebuilds it in `space` (which must match its `q` and `k`).
pub fn parse_witness(text: &str, space: &ProjectiveSpace) -> Result<CoverWitness> {
    let mut lines = content_lines(text);
    let (line, [q, k, r, l]) = header::<4>(&mut lines, "q k r l")?;
    let field = field_from(line, q)?;
    if q != space.q() as u64 || k != space.k() as u64 {
        return Err(Error::Parse { line, msg: format!("witness is for q = {q}, k = {k}") });
    }
    let (k, l) = (k as usize, l as usize);
    if l == 0 || l >= k {
        return Err(Error::Parse { line, msg: format!("need 1 <= l < k, got l = {l}") });
    }
    let mut outer = Vec::new();
    let mut inner = Vec::new();
    for _ in 0..r {
        let w = read_rows(&mut lines, &field, l, k)?;
        let u = read_rows(&mut lines, &field, l + 1, k)?;
        outer.push(space.subspace_from_dual(&w)?);
        inner.push(space.subspace_from_dual(&u)?);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, msg: "unexpected extra row".into() });
    }
    CoverWitness::new(space, l, outer, inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::{alpha_brute, alpha_construction, BruteGuard};
    use crate::gf::field_new;

    const SIMPLEX: &str = "# Simplex [7,3]_2\n2 3 7\n0 0 0 1 1 1 1\n0 1 1 0 0 1 1  # middle\n\n1 0 1 0 1 0 1\n";

    #[test]
    fn matrix_round_trip() {
        let m = parse_matrix(SIMPLEX).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 7));
        let text = format_matrix(&m);
        assert_eq!(parse_matrix(&text).unwrap(), m);
        assert!(text.starts_with("2 3 7\n0 0 0 1 1 1 1\n"));
    }

    #[test]
    fn matrix_errors() {
        assert!(matches!(parse_matrix(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("2 2 2\n1 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("2 1 2\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("2 1 2\n1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("2 1 2\n1 1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("6 1 1\n1\n"), Err(Error::NotAPrimePower(6))));
        assert!(matches!(parse_matrix("32 1 1\n1\n"), Err(Error::Unsupported(32))));
        assert!(matches!(parse_matrix("2 1 1\n1\n1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn witness_round_trip() {
        let f = field_new(3).unwrap();
        let s = ProjectiveSpace::new(&f, 4).unwrap();
        let w = alpha_construction(&s, 3).unwrap();
        let text = format_witness(&w);
        assert!(text.starts_with("3 4 3 1\n"));
        assert_eq!(parse_witness(&text, &s).unwrap(), w);

        let s2 = ProjectiveSpace::new(&field_new(2).unwrap(), 4).unwrap();
        let (_, w2) = alpha_brute(&s2, 2, 2, BruteGuard::default()).unwrap();
        assert_eq!(parse_witness(&format_witness(&w2), &s2).unwrap(), w2);
        assert!(parse_witness(&format_witness(&w2), &s).is_err());
    }
}
