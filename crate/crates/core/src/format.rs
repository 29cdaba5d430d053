//! The `FTSV1` text format. A header line `FTSV1 <mode> <dim>` is followed
//! by either one line of scalars (an element), `dim` lines (a row-major
//! matrix), or a structure: `UNIT` and one line, `INVOLUTION` and `dim`
//! lines, then `STRUCT` and `i j k value` lines for nonzero constants.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::brown::{BrownStructure, DIM};
use crate::error::{Error, Result};
use crate::exact::{Field, Mat, Mode, Scalar};

pub const MAGIC: &str = "FTSV1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Element,
    Matrix,
    Structure,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Mode, dimension and shape of a document.
pub fn inspect(text: &str) -> Result<(Mode, usize, Shape)> {
    let mut lines = content_lines(text);
    let (_, head) = lines.next().ok_or_else(|| parse_err("empty document"))?;
    let parts: Vec<&str> = head.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != MAGIC {
        return Err(parse_err(format!("bad header `{head}`")));
    }
    let mode: Mode = parts[1].parse()?;
    let dim: usize = parts[2].parse().map_err(|_| parse_err(format!("bad dimension `{}`", parts[2])))?;
    if dim == 0 {
        return Err(parse_err("dimension must be positive"));
    }
    let body: Vec<&str> = lines.map(|(_, l)| l).collect();
    let shape = if body.first() == Some(&"UNIT") {
        Shape::Structure
    } else if body.len() == 1 {
        Shape::Element
    } else {
        Shape::Matrix
    };
    Ok((mode, dim, shape))
}

fn header<F: Field>(field: F, dim: usize) -> String {
    format!("{MAGIC} {} {dim}\n", field.mode())
}

fn push_row<S: Scalar>(out: &mut String, row: &[S]) {
    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
    out.push_str(&cells.join(" "));
    out.push('\n');
}

pub fn element_to_string<S: Scalar>(v: &[S]) -> String {
    let f = v.first().expect("nonempty element").field();
    let mut out = header(f, v.len());
    push_row(&mut out, v);
    out
}

pub fn matrix_to_string<S: Scalar>(m: &Mat<S>) -> String {
    let mut out = header(m.field(), m.rows());
    for i in 0..m.rows() {
        push_row(&mut out, m.row(i));
    }
    out
}

pub fn structure_to_string<S: Scalar>(s: &BrownStructure<S>) -> String {
    let mut out = header(s.field(), DIM);
    out.push_str("UNIT\n");
    push_row(&mut out, s.unit());
    out.push_str("INVOLUTION\n");
    for i in 0..DIM {
        push_row(&mut out, s.involution().row(i));
    }
    out.push_str("STRUCT\n");
    for (i, j, k, v) in s.nonzero_entries() {
        writeln!(out, "{i} {j} {k} {v}").expect("write to string");
    }
    out
}

struct Body<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Body<'a> {
    fn open<F: Field>(field: F, text: &'a str) -> Result<(Self, usize)> {
        let (mode, dim, _) = inspect(text)?;
        if mode != field.mode() {
            return Err(parse_err(format!("document mode {mode} does not match {}", field.mode())));
        }
        let lines: Vec<(usize, &str)> = content_lines(text).skip(1).collect();
        Ok((Body { lines, pos: 0 }, dim))
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied().ok_or_else(|| parse_err("unexpected end of document"))?;
        self.pos += 1;
        Ok(l)
    }

    fn row<F: Field>(&mut self, field: F, len: usize) -> Result<Vec<F::Elem>> {
        let (n, line) = self.next()?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != len {
            return Err(parse_err(format!("line {n}: expected {len} scalars, found {}", cells.len())));
        }
        cells.iter().map(|c| field.parse(c).map_err(|e| parse_err(format!("line {n}: {e}")))).collect()
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let (n, line) = self.next()?;
        if line != word {
            return Err(parse_err(format!("line {n}: expected `{word}`")));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some((n, _)) => Err(parse_err(format!("line {n}: trailing content"))),
        }
    }
}

pub fn parse_element<F: Field>(field: F, text: &str) -> Result<Vec<F::Elem>> {
    let (mut body, dim) = Body::open(field, text)?;
    let v = body.row(field, dim)?;
    body.finish()?;
    Ok(v)
}

pub fn parse_matrix<F: Field>(field: F, text: &str) -> Result<Mat<F::Elem>> {
    let (mut body, dim) = Body::open(field, text)?;
    let rows = (0..dim).map(|_| body.row(field, dim)).collect::<Result<Vec<_>>>()?;
    body.finish()?;
    Mat::from_rows(field, rows)
}

pub fn parse_structure<F: Field>(field: F, text: &str) -> Result<BrownStructure<F::Elem>> {
    let (mut body, dim) = Body::open(field, text)?;
    if dim != DIM {
        return Err(Error::Dimension { expected: DIM, found: dim });
    }
    body.keyword("UNIT")?;
    let unit = body.row(field, DIM)?;
    body.keyword("INVOLUTION")?;
    let inv_rows = (0..DIM).map(|_| body.row(field, DIM)).collect::<Result<Vec<_>>>()?;
    body.keyword("STRUCT")?;
    let mut table = field.zeros(DIM * DIM * DIM);
    while body.pos < body.lines.len() {
        let (n, line) = body.next()?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != 4 {
            return Err(parse_err(format!("line {n}: expected `i j k value`")));
        }
        let idx: Vec<usize> = cells[..3]
            .iter()
            .map(|c| c.parse().ok().filter(|&i: &usize| i < DIM))
            .collect::<Option<_>>()
            .ok_or_else(|| parse_err(format!("line {n}: bad index")))?;
        let v = field.parse(cells[3]).map_err(|e| parse_err(format!("line {n}: {e}")))?;
        table[(idx[0] * DIM + idx[1]) * DIM + idx[2]] = v;
    }
    BrownStructure::from_parts(table, Mat::from_rows(field, inv_rows)?, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PrimeField, Rational, RationalField, Rng};

    const F: RationalField = RationalField;

    #[test]
    fn matrix_round_trip() {
        let mut rng = Rng::new(3);
        let m = Mat::from_fn(F, 4, 4, |_, _| F.random(&mut rng));
        let text = matrix_to_string(&m);
        assert!(text.starts_with("FTSV1 rational 4\n"));
        assert_eq!(inspect(&text).unwrap(), (Mode::Rational, 4, Shape::Matrix));
        assert_eq!(parse_matrix(F, &text).unwrap(), m);
    }

    #[test]
    fn element_and_structure_round_trip() {
        let v = vec![Rational::new(1, 2), Rational::int(-3), Rational::int(0)];
        let text = element_to_string(&v);
        assert_eq!(text, "FTSV1 rational 3\n1/2 -3 0\n");
        assert_eq!(parse_element(F, &text).unwrap(), v);
        let f = PrimeField::new(7).unwrap();
        let s = BrownStructure::standard(f);
        let text = structure_to_string(&s);
        assert_eq!(inspect(&text).unwrap().2, Shape::Structure);
        assert_eq!(parse_structure(f, &text).unwrap(), s);
    }

    #[test]
    fn malformed_documents() {
        assert!(inspect("").is_err());
        assert!(inspect("FTSV2 rational 2\n1 2\n").is_err());
        assert!(inspect("FTSV1 prime:4 2\n1 2\n").is_err());
        assert!(parse_matrix(F, "FTSV1 rational 2\n1 2\n3\n").is_err());
        assert!(parse_matrix(F, "FTSV1 rational 2\n1 2\n3 x\n").is_err());
        let f = PrimeField::new(7).unwrap();
        assert!(parse_matrix(f, "FTSV1 rational 1\n1\n").is_err());
    }
}
