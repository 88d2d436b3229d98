//! graph6 and plain edge-list encodings.
//!
//! Edge lists look like
//!
//! ```text
//! p 4
//! 0 1
//! 1 2
//! ```
//!
//! with 0-based vertices. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edges" | "edgelist" => Ok(Format::EdgeList),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Guesses the format from content: an edge list starts with a `p` header.
pub fn detect_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l == "p" || l.starts_with("p ") || l.starts_with("p\t") => Format::EdgeList,
        _ => Format::Graph6,
    }
}

pub fn read_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Error::Parse("empty graph6 input".into()))?;
            from_graph6(line)
        }
        Format::EdgeList => from_edge_list(text),
    }
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s
        }
        Format::EdgeList => to_edge_list(g),
    }
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Standard graph6 encoding of the upper triangle, column by column.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is printable ascii")
}

fn parse_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let digit = |b: u8| -> Result<usize> {
        if (BIAS..=126).contains(&b) {
            Ok((b - BIAS) as usize)
        } else {
            Err(Error::Parse(format!("invalid graph6 byte {b:#x}")))
        }
    };
    match bytes {
        [] => Err(Error::Parse("empty graph6 string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let mut n = 0;
            for &b in &rest[..6] {
                n = (n << 6) | digit(b)?;
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let mut n = 0;
            for &b in &rest[..3] {
                n = (n << 6) | digit(b)?;
            }
            Ok((n, 4))
        }
        [b, ..] => {
            let n = digit(*b)?;
            if n > 62 {
                return Err(Error::Parse("invalid graph6 size byte".into()));
            }
            Ok((n, 1))
        }
    }
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    if s.starts_with(':') || s.starts_with('&') {
        return Err(Error::Parse("sparse6/digraph6 input is not supported".into()));
    }
    let bytes = s.as_bytes();
    let (n, offset) = parse_size(bytes)?;
    let body = &bytes[offset..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {expected} for order {n}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = body[k / 6];
            if !(BIAS..=126).contains(&b) {
                return Err(Error::Parse(format!("invalid graph6 byte {b:#x}")));
            }
            if (b - BIAS) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p {}", g.order()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut order = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: cannot parse {line:?}", lineno + 1));
        if order.is_none() {
            match fields.as_slice() {
                ["p", n] => order = Some(n.parse::<usize>().map_err(|_| bad())?),
                _ => return Err(Error::Parse("edge list must start with \"p <n>\"".into())),
            }
            continue;
        }
        match fields.as_slice() {
            [u, v] => edges.push((
                u.parse::<usize>().map_err(|_| bad())?,
                v.parse::<usize>().map_err(|_| bad())?,
            )),
            _ => return Err(bad()),
        }
    }
    let order = order.ok_or_else(|| Error::Parse("missing \"p <n>\" header".into()))?;
    Graph::from_edges(order, edges)
}
