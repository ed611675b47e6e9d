//! Text formats: PMAT for tensors, LATIN for latin hypercubes, OA for
//! orthogonal arrays.
//!
//! ```text
//! pmat v1          latin v1        oa v1
//! <d>              <d> <n>         <t> <n> <k> <lambda>
//! <e_1> .. <e_d>   <symbols>       <rows of k symbols>
//! <entries>
//! ```
//!
//! Bodies are whitespace-separated tokens in storage order. The writers emit
//! one last-axis run per line, so the output is canonical and a
//! parse/serialize round trip is byte-identical.

use std::fmt::Write as _;

use crate::combinatorics::{LatinHypercube, OrthogonalArray};
use crate::error::{Error, Result};
use crate::rational::{format_literal, parse_at};
use crate::tensor::{Shape, Tensor};

/// Largest number of body tokens a header may announce.
pub const MAX_ENTRIES: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Pmat,
    Latin,
    Oa,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Pmat => "pmat",
            Format::Latin => "latin",
            Format::Oa => "oa",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pmat" => Ok(Format::Pmat),
            "latin" => Ok(Format::Latin),
            "oa" => Ok(Format::Oa),
            other => Err(Error::validation(format!("unknown format `{other}`"))),
        }
    }
}

/// Any object one of the formats can carry.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Tensor(Tensor),
    Latin(LatinHypercube),
    Oa(OrthogonalArray),
}

impl Document {
    pub fn format(&self) -> Format {
        match self {
            Document::Tensor(_) => Format::Pmat,
            Document::Latin(_) => Format::Latin,
            Document::Oa(_) => Format::Oa,
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Document::Tensor(t) => write_pmat(t),
            Document::Latin(q) => write_latin(q),
            Document::Oa(r) => write_oa(r),
        }
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    index: usize,
}

struct Lines<'a> {
    lines: Vec<Vec<Token<'a>>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(l, raw)| {
                raw.split_whitespace()
                    .enumerate()
                    .map(|(i, text)| Token { text, line: l + 1, index: i + 1 })
                    .collect()
            })
            .collect();
        Lines { lines }
    }

    fn line(&self, number: usize) -> Result<&[Token<'a>]> {
        self.lines.get(number - 1).map(Vec::as_slice).ok_or_else(|| Error::Parse {
            line: number,
            token: 1,
            message: "unexpected end of input".into(),
        })
    }

    /// Tokens from line `from` on, checked to number exactly `count`.
    fn body(&self, from: usize, count: usize) -> Result<Vec<Token<'a>>> {
        let tokens: Vec<Token<'a>> = self.lines.iter().skip(from - 1).flatten().copied().collect();
        if tokens.len() > count {
            let extra = tokens[count];
            return Err(parse_error(extra, format!("expected {count} body tokens, found more")));
        }
        if tokens.len() < count {
            let line = self.lines.len() + 1;
            return Err(Error::Parse {
                line,
                token: 1,
                message: format!("expected {count} body tokens, found {}", tokens.len()),
            });
        }
        Ok(tokens)
    }
}

fn parse_error(tok: Token<'_>, message: impl Into<String>) -> Error {
    Error::Parse {
        line: tok.line,
        token: tok.index,
        message: message.into(),
    }
}

fn expect_header(lines: &Lines<'_>, magic: &str) -> Result<()> {
    let first = lines.line(1)?;
    let ok = first.len() == 2 && first[0].text == magic && first[1].text == "v1";
    if !ok {
        let tok = first.first().copied().unwrap_or(Token { text: "", line: 1, index: 1 });
        return Err(parse_error(tok, format!("expected header `{magic} v1`")));
    }
    Ok(())
}

fn parse_count(tok: Token<'_>) -> Result<usize> {
    let digits = tok.text.bytes().all(|b| b.is_ascii_digit());
    match tok.text.parse::<usize>() {
        Ok(v) if digits => Ok(v),
        _ => Err(parse_error(tok, format!("`{}` is not a nonnegative integer", tok.text))),
    }
}

fn header_values(lines: &Lines<'_>, number: usize, names: &[&str]) -> Result<Vec<usize>> {
    let toks = lines.line(number)?;
    if toks.len() != names.len() {
        let tok = toks
            .get(names.len())
            .copied()
            .unwrap_or(Token { text: "", line: number, index: toks.len() + 1 });
        return Err(parse_error(tok, format!("expected {}", names.join(" "))));
    }
    toks.iter().map(|&t| parse_count(t)).collect()
}

fn checked_len(counts: impl IntoIterator<Item = usize>, line: usize) -> Result<usize> {
    counts
        .into_iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c))
        .filter(|&len| len <= MAX_ENTRIES)
        .ok_or_else(|| Error::Parse {
            line,
            token: 1,
            message: format!("declared size exceeds {MAX_ENTRIES} entries"),
        })
}

fn parse_symbol(tok: Token<'_>) -> Result<u32> {
    let digits = !tok.text.is_empty() && tok.text.bytes().all(|b| b.is_ascii_digit());
    match tok.text.parse::<u32>() {
        Ok(v) if digits => Ok(v),
        _ => Err(parse_error(tok, format!("`{}` is not a symbol", tok.text))),
    }
}

pub fn parse_pmat(text: &str) -> Result<Tensor> {
    let lines = Lines::new(text);
    expect_header(&lines, "pmat")?;
    let d = header_values(&lines, 2, &["<d>"])?[0];
    let ext_line = lines.line(3)?;
    if ext_line.len() != d {
        let tok = ext_line
            .get(d)
            .copied()
            .unwrap_or(Token { text: "", line: 3, index: ext_line.len() + 1 });
        return Err(parse_error(tok, format!("expected {d} extents")));
    }
    let extents = ext_line.iter().map(|&t| parse_count(t)).collect::<Result<Vec<_>>>()?;
    let len = checked_len(extents.iter().copied(), 3)?;
    let shape = Shape::new(extents)?;
    let entries = lines
        .body(4, len)?
        .into_iter()
        .map(|t| parse_at(t.text, t.line, t.index))
        .collect::<Result<Vec<_>>>()?;
    Tensor::new(shape, entries)
}

pub fn parse_latin(text: &str) -> Result<LatinHypercube> {
    let lines = Lines::new(text);
    expect_header(&lines, "latin")?;
    let dn = header_values(&lines, 2, &["<d>", "<n>"])?;
    let (d, n) = (dn[0], dn[1]);
    let len = checked_len(std::iter::repeat(n).take(d), 2)?;
    let cells = lines
        .body(3, len)?
        .into_iter()
        .map(parse_symbol)
        .collect::<Result<Vec<_>>>()?;
    LatinHypercube::new(d, n, cells)
}

pub fn parse_oa(text: &str) -> Result<OrthogonalArray> {
    let lines = Lines::new(text);
    expect_header(&lines, "oa")?;
    let p = header_values(&lines, 2, &["<t>", "<n>", "<k>", "<lambda>"])?;
    let (t, n, k, lambda) = (p[0], p[1], p[2], p[3]);
    let n_rows = checked_len(std::iter::repeat(n).take(t).chain([lambda]), 2)?;
    let len = checked_len([n_rows, k], 2)?;
    let symbols = lines
        .body(3, len)?
        .into_iter()
        .map(parse_symbol)
        .collect::<Result<Vec<_>>>()?;
    let rows = if k == 0 { Vec::new() } else { symbols.chunks(k).map(<[u32]>::to_vec).collect() };
    OrthogonalArray::new(t, n, k, lambda, rows)
}

/// Detects the format from the first token.
pub fn detect_format(text: &str) -> Result<Format> {
    let first = text.split_whitespace().next().unwrap_or("");
    match first {
        "pmat" => Ok(Format::Pmat),
        "latin" => Ok(Format::Latin),
        "oa" => Ok(Format::Oa),
        _ => Err(Error::Parse {
            line: 1,
            token: 1,
            message: format!("unknown format tag `{first}`"),
        }),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    match detect_format(text)? {
        Format::Pmat => parse_pmat(text).map(Document::Tensor),
        Format::Latin => parse_latin(text).map(Document::Latin),
        Format::Oa => parse_oa(text).map(Document::Oa),
    }
}

fn join_line<T: std::fmt::Display>(out: &mut String, items: impl IntoIterator<Item = T>) {
    let mut first = true;
    for item in items {
        if !first {
            out.push(' ');
        }
        first = false;
        write!(out, "{item}").expect("writing to a String");
    }
    out.push('\n');
}

pub fn write_pmat(t: &Tensor) -> String {
    let mut out = format!("pmat v1\n{}\n", t.dim());
    join_line(&mut out, t.extents());
    let run = t.extents().last().copied().unwrap_or(1);
    for chunk in t.entries().chunks(run.max(1)) {
        join_line(&mut out, chunk.iter().map(format_literal));
    }
    out
}

pub fn write_latin(q: &LatinHypercube) -> String {
    let mut out = format!("latin v1\n{} {}\n", q.dim(), q.order());
    let run = if q.dim() == 0 { 1 } else { q.order() };
    for chunk in q.cells().chunks(run) {
        join_line(&mut out, chunk);
    }
    out
}

pub fn write_oa(r: &OrthogonalArray) -> String {
    let mut out = format!(
        "oa v1\n{} {} {} {}\n",
        r.strength(),
        r.levels(),
        r.factors(),
        r.index()
    );
    for row in r.rows() {
        join_line(&mut out, row);
    }
    out
}
