//! Plain-text group, pair and module files.
//!
//! Group file:
//! ```text
//! degree 4
//! (0 1 2)
//! (0 1)(2 3)
//! ```
//! Pair file: `degree N`, a line `small`, its generators, a line `big`, its
//! generators.
//!
//! Module file:
//! ```text
//! field 2 2
//! group a4.grp
//! dim 1
//! 0:1
//! 1:0
//! ```
//! then, for each generator in order, `dim` rows of `dim` comma-separated
//! scalars.  A scalar is its m coefficients over GF(p), constant term first,
//! joined by `:`.  Blank lines and lines starting with `#` are ignored
//! everywhere.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{Field, Matrix, Scalar};
use crate::grouprep::Rep;
use crate::permgroup::{Group, Perm};

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers and the column of the first
/// non-blank character.
fn lines(text: &str) -> Vec<(usize, usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let t = l.trim_start();
            let col = l.len() - t.len() + 1;
            let t = t.trim_end();
            (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, col, t))
        })
        .collect()
}

struct Cursor<'a> {
    lines: Vec<(usize, usize, &'a str)>,
    at: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: lines(text),
            at: 0,
            last_line: text.lines().count().max(1),
        }
    }

    fn peek(&self) -> Option<(usize, usize, &'a str)> {
        self.lines.get(self.at).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, usize, &'a str)> {
        let l = self
            .peek()
            .ok_or_else(|| perr(self.last_line + 1, 1, format!("unexpected end of input, expected {what}")))?;
        self.at += 1;
        Ok(l)
    }

    /// A `key value...` line; returns the values and the line number.
    fn keyed(&mut self, key: &str) -> Result<(usize, usize, Words<'a>)> {
        let (ln, col, text) = self.next(&format!("`{key} ...`"))?;
        let mut words = words(text, col);
        match words.first() {
            Some((_, w)) if *w == key => {}
            _ => return Err(perr(ln, col, format!("expected `{key}`"))),
        }
        words.remove(0);
        Ok((ln, col, words))
    }
}

type Words<'a> = Vec<(usize, &'a str)>;

/// Whitespace-separated words with their columns.
fn words(text: &str, col: usize) -> Words<'_> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((col + s, &text[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((col + s, &text[s..]));
    }
    out
}

fn number<T: std::str::FromStr>(ln: usize, col: usize, w: &str, what: &str) -> Result<T> {
    w.parse().map_err(|_| perr(ln, col, format!("{what} must be a non-negative integer, got {w:?}")))
}

fn degree_line(c: &mut Cursor) -> Result<usize> {
    let (ln, col, vals) = c.keyed("degree")?;
    match vals.as_slice() {
        [(vc, v)] => number(ln, *vc, v, "degree"),
        _ => Err(perr(ln, col, "expected `degree N`")),
    }
}

fn generator(degree: usize, (ln, col, text): (usize, usize, &str)) -> Result<Perm> {
    Perm::from_cycles(degree, text).map_err(|e| perr(ln, col, e.to_string()))
}

fn close(degree: usize, gens: Vec<Perm>, ln: usize) -> Result<Group> {
    Group::close(degree, gens).map_err(|e| perr(ln, 1, e.to_string()))
}

pub fn parse_group(text: &str) -> Result<Group> {
    let mut c = Cursor::new(text);
    let degree = degree_line(&mut c)?;
    let mut gens = Vec::new();
    while let Some(l) = c.peek() {
        c.at += 1;
        gens.push(generator(degree, l)?);
    }
    close(degree, gens, 1)
}

pub fn write_group(g: &Group) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for x in g.generators() {
        out.push_str(&x.cycle_string());
        out.push('\n');
    }
    out
}

/// A normal-pair file; normality is checked by the consumer.
pub fn parse_pair(text: &str) -> Result<(Group, Group)> {
    let mut c = Cursor::new(text);
    let degree = degree_line(&mut c)?;
    let mut sections: Vec<(usize, Vec<Perm>)> = Vec::new();
    for name in ["small", "big"] {
        let (ln, col, head) = c.next(&format!("`{name}`"))?;
        if head != name {
            return Err(perr(ln, col, format!("expected `{name}`")));
        }
        let mut gens = Vec::new();
        while let Some(l) = c.peek() {
            if l.2 == "big" {
                break;
            }
            c.at += 1;
            gens.push(generator(degree, l)?);
        }
        sections.push((ln, gens));
    }
    let (bln, big) = sections.pop().expect("two sections");
    let (sln, small) = sections.pop().expect("two sections");
    Ok((close(degree, small, sln)?, close(degree, big, bln)?))
}

pub fn write_pair(small: &Group, big: &Group) -> String {
    let mut out = format!("degree {}\nsmall\n", big.degree());
    for x in small.generators() {
        out.push_str(&x.cycle_string());
        out.push('\n');
    }
    out.push_str("big\n");
    for x in big.generators() {
        out.push_str(&x.cycle_string());
        out.push('\n');
    }
    out
}

/// The header of a module file: field and group path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepHeader {
    pub p: u32,
    pub m: u32,
    pub group_path: String,
    pub dim: usize,
}

fn header(c: &mut Cursor) -> Result<RepHeader> {
    let (ln, col, vals) = c.keyed("field")?;
    let (p, m) = match vals.as_slice() {
        [(pc, p), (mc, m)] => (number(ln, *pc, p, "p")?, number(ln, *mc, m, "m")?),
        _ => return Err(perr(ln, col, "expected `field p m`")),
    };
    let (ln, col, text) = c.next("`group <path>`")?;
    let group_path = text
        .strip_prefix("group")
        .filter(|r| r.starts_with(char::is_whitespace))
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .ok_or_else(|| perr(ln, col, "expected `group <path>`"))?
        .to_string();
    let (ln, col, vals) = c.keyed("dim")?;
    let dim = match vals.as_slice() {
        [(dc, d)] => number(ln, *dc, d, "dim")?,
        _ => return Err(perr(ln, col, "expected `dim d`")),
    };
    Ok(RepHeader { p, m, group_path, dim })
}

/// Reads only the header, so the caller can locate the group file.
pub fn parse_rep_header(text: &str) -> Result<RepHeader> {
    header(&mut Cursor::new(text))
}

fn scalar(field: Field, ln: usize, col: usize, w: &str) -> Result<Scalar> {
    let parts: Vec<&str> = w.split(':').collect();
    if parts.len() != field.degree() as usize {
        return Err(perr(
            ln,
            col,
            format!("scalar {w:?} has {} coefficients, expected {}", parts.len(), field.degree()),
        ));
    }
    let coeffs = parts
        .iter()
        .map(|d| number::<u32>(ln, col, d, "coefficient"))
        .collect::<Result<Vec<_>>>()?;
    field.from_coeffs(&coeffs).map_err(|e| perr(ln, col, e.to_string()))
}

/// Parses a module file over the given group; the header's group path is
/// not opened here.
pub fn parse_rep(text: &str, group: Arc<Group>) -> Result<Rep> {
    let mut c = Cursor::new(text);
    let h = header(&mut c)?;
    let field = Field::new(h.p, h.m).map_err(|e| perr(1, 1, e.to_string()))?;
    let n = h.dim;
    let mut mats = Vec::new();
    let mut starts = Vec::new();
    for gi in 0..group.generators().len() {
        let mut data = Vec::with_capacity(n * n);
        let mut start = None;
        for _ in 0..n {
            let (ln, col, text) = c.next(&format!("a row of generator matrix {gi}"))?;
            start.get_or_insert(ln);
            let mut at = col;
            let mut row = Vec::with_capacity(n);
            for cell in text.split(',') {
                let lead = cell.len() - cell.trim_start().len();
                row.push(scalar(field, ln, at + lead, cell.trim())?);
                at += cell.len() + 1;
            }
            if row.len() != n {
                return Err(perr(ln, col, format!("row has {} entries, expected {n}", row.len())));
            }
            data.extend(row);
        }
        starts.push(start.unwrap_or(c.peek().map_or(1, |l| l.0)));
        mats.push(Matrix::from_data(field, n, n, data));
    }
    if let Some((ln, col, _)) = c.peek() {
        return Err(perr(ln, col, "trailing content after the last generator matrix"));
    }
    Rep::with_dim(group, field, n, mats).map_err(|e| {
        let at = match &e {
            Error::SingularGenerator(i) => starts[*i],
            _ => starts.first().copied().unwrap_or(3),
        };
        perr(at, 1, e.to_string())
    })
}

/// A scalar in file notation: coefficients, constant term first, joined by `:`.
pub fn scalar_text(field: Field, s: Scalar) -> String {
    field
        .coeffs(s)
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(":")
}

pub fn write_rep(m: &Rep, group_path: &str) -> String {
    let f = m.field();
    let mut out = format!(
        "field {} {}\ngroup {group_path}\ndim {}\n",
        f.characteristic(),
        f.degree(),
        m.dim()
    );
    for (gi, x) in m.generator_matrices().iter().enumerate() {
        out.push_str(&format!("# generator {gi}\n"));
        for r in 0..x.rows() {
            let row: Vec<String> = (0..x.cols()).map(|c| scalar_text(f, x[(r, c)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}
