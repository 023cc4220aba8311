//! Text formats: graph6 and a whitespace-separated edge list.
//!
//! graph6 stores the upper triangle of the adjacency matrix column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), six bits per byte, each byte
//! offset by 63. The order `n` is one byte for `n <= 62`, or `~` followed by
//! three bytes (18 bits) for `n <= 258047`.

use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";
const SMALL_ORDER_MAX: usize = 62;
const MEDIUM_ORDER_MAX: usize = 258_047;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl GraphFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphFormat::Graph6 => "graph6",
            GraphFormat::EdgeList => "edgelist",
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(Error::Domain(format!("unknown graph format '{other}'"))),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeList => parse_edgelist(text),
    }
}

fn parse_err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are accepted; byte offsets in errors refer to the input text.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(GRAPH6_HEADER) {
        body = rest;
        base += GRAPH6_HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return parse_err(base, "empty graph6 string");
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return parse_err(base + i, format!("byte 0x{b:02x} outside the graph6 range 63..=126"));
        }
    }

    let (n, mut pos) = if bytes[0] != b'~' {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == b'~' {
        return parse_err(base + 1, "orders above 258047 are not supported");
    } else {
        if bytes.len() < 4 {
            return parse_err(base + bytes.len(), "truncated 18-bit order header");
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    if n == 0 {
        return parse_err(base, "graph6 order 0 is not a graph");
    }

    let bit_count = n * (n - 1) / 2;
    let expected = bit_count.div_ceil(6);
    let data = &bytes[pos..];
    if data.len() != expected {
        let at = base + pos + data.len().min(expected);
        return parse_err(
            at,
            format!("expected {expected} adjacency bytes for n = {n}, found {}", data.len()),
        );
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == bit_count {
                break 'outer;
            }
        }
    }
    // padding bits of the final byte must be zero
    if bit_count % 6 != 0 {
        pos += expected - 1;
        let last = bytes[pos] - 63;
        let pad = 6 - bit_count % 6;
        if last & ((1 << pad) - 1) != 0 {
            return parse_err(base + pos, "non-zero padding bits");
        }
    }
    Graph::new(n, &edges)
}

/// Encodes `g` as graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= SMALL_ORDER_MAX {
        out.push(n as u8 + 63);
    } else {
        assert!(
            n <= MEDIUM_ORDER_MAX,
            "graph6 encoding supports n <= {MEDIUM_ORDER_MAX}"
        );
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses an edge list: one `u v` pair of 0-based integers per line. Blank
/// lines and anything after `#` are ignored. A line holding a single integer
/// before any edge declares the vertex count; otherwise the count is one more
/// than the largest endpoint.
pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut line_start = 0usize;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut cursor = 0usize;
        for tok in content.split_whitespace() {
            let at = content[cursor..].find(tok).map_or(cursor, |p| cursor + p);
            cursor = at + tok.len();
            let value: usize = tok
                .parse()
                .or_else(|_| parse_err(line_start + at, format!("'{tok}' is not a vertex index")))?;
            fields.push(value);
        }
        match fields.as_slice() {
            [] => {}
            [count] if declared.is_none() && edges.is_empty() => declared = Some(*count),
            [u, v] => edges.push((*u, *v)),
            _ => return parse_err(line_start, format!("expected 'u v', found {} fields", fields.len())),
        }
        line_start += line.len();
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) => n,
        None if inferred == 0 => return parse_err(0, "edge list has neither edges nor a vertex count"),
        None => inferred,
    };
    Graph::new(n, &edges)
}

/// Writes the edge list format read by [`parse_edgelist`], with a vertex-count line.
pub fn to_edgelist(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
