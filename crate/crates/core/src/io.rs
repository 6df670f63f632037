//! Edge-list and graph6 readers and writers.
//!
//! Edge-list: first line `n`, then one `u v` line per edge with `u < v`.
//! Blank lines and lines starting with `#` are skipped by the reader.
//!
//! graph6: the usual header-less form. `n <= 62` takes one byte, larger
//! orders use the `~` (18-bit) or `~~` (36-bit) prefix. Only the shortest
//! length prefix is accepted and padding bits must be zero, so parse and
//! write are mutually inverse on the byte level.

use std::fmt::Write as _;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::arg(format!("unknown graph format '{other}'"))),
        }
    }
}

impl GraphFormat {
    /// Guesses the format from a file name: `.g6` means graph6, anything else edge-list.
    pub fn from_path(path: &std::path::Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Graph6 => write_graph6(g),
    }
}

fn perr(line: usize, offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        offset,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| perr(1, 0, "missing vertex count"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| perr(hline, 0, format!("malformed header '{}'", header.trim())))?;
    let mut g = Graph::empty(n);

    for (lineno, line) in lines {
        let mut fields = Vec::with_capacity(2);
        for (offset, tok) in tokens(line) {
            let v: usize = tok
                .parse()
                .map_err(|_| perr(lineno, offset, format!("expected a vertex id, found '{tok}'")))?;
            fields.push((offset, v));
        }
        let [(_, u), (voff, v)] = fields[..] else {
            return Err(perr(
                lineno,
                0,
                format!("expected two vertex ids, found {}", fields.len()),
            ));
        };
        if u >= n || v >= n {
            let off = if u >= n { 0 } else { voff };
            return Err(perr(lineno, off, format!("endpoint out of range for {n} vertices")));
        }
        if u >= v {
            return Err(perr(lineno, voff, format!("expected u < v, found {u} {v}")));
        }
        if g.has_edge(u, v) {
            return Err(perr(lineno, 0, format!("duplicate edge {u} {v}")));
        }
        g.insert_edge(u, v);
    }
    Ok(g)
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_ascii_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - line.as_ptr() as usize, tok))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.vertex_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

const SMALL_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(perr(
            1,
            pos,
            format!("byte {:#04x} outside the graph6 alphabet", bytes[pos]),
        ));
    }
    if bytes.is_empty() {
        return Err(perr(1, 0, "empty graph6 string"));
    }

    let (n, start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        if bytes.len() < 4 {
            return Err(perr(1, 0, "truncated 18-bit length prefix"));
        }
        let n = sixes(&bytes[1..4]);
        if n <= SMALL_MAX {
            return Err(perr(1, 0, format!("non-canonical length prefix for n = {n}")));
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(perr(1, 0, "truncated 36-bit length prefix"));
        }
        let n = sixes(&bytes[2..8]);
        if n <= MEDIUM_MAX {
            return Err(perr(1, 0, format!("non-canonical length prefix for n = {n}")));
        }
        (n, 8)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let want = bits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != want {
        return Err(perr(
            1,
            start,
            format!("expected {want} data bytes for n = {n}, found {}", data.len()),
        ));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (data[k / 6] - 63) & (1 << (5 - k % 6)) != 0 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[want - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(perr(1, start + want - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

fn sixes(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= SMALL_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_MAX {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Hex SHA-256 of the graph6 encoding; the stable identity used by reports.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(write_graph6(g).as_bytes()))
}

/// Serde adapter storing a [`Graph`] as its graph6 string.
pub mod graph6_serde {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::graph::Graph;

    pub fn serialize<S: Serializer>(g: &Graph, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&super::write_graph6(g))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Graph, D::Error> {
        let s = String::deserialize(deserializer)?;
        super::parse_graph6(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        let p3 = parse_edge_list("3\n0 1\n1 2").unwrap();
        assert_eq!(p3, Graph::path(3));
        let k1 = parse_edge_list("1\n").unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        match parse_edge_list("3\n0 1\n1 5\n") {
            Err(Error::Parse { line: 3, offset: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_edge_list("x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("3\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            parse_edge_list("3\n0 1\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("3\n0 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
    }

    // Reference strings produced by networkx.to_graph6_bytes(header=False).
    #[test]
    fn graph6_reference_strings() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2, Graph::complete(2));
        assert_eq!(write_graph6(&Graph::complete(2)), "A_");
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(write_graph6(&Graph::cycle(5).unwrap()), "Dhc");
        let petersen = crate::constructions::kneser(5, 2).unwrap();
        let round = parse_graph6(&write_graph6(&petersen)).unwrap();
        assert_eq!(round, petersen);
    }

    #[test]
    fn graph6_rejects_noncanonical_input() {
        // n = 2 encoded with the 18-bit prefix
        assert!(parse_graph6("~??A_").is_err());
        assert!(parse_graph6("A").is_err());
        assert!(parse_graph6("A__").is_err());
        // padding bit set: n = 2 has one data bit
        assert!(matches!(parse_graph6("A`"), Err(Error::Parse { offset: 1, .. })));
        assert!(parse_graph6("A\x01").is_err());
    }

    #[test]
    fn graph6_medium_prefix_round_trips() {
        let g = Graph::path(70);
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
