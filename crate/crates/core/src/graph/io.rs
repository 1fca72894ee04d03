//! graph6 and JSON edge-list forms.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.extend_from_slice(b"~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

/// Encodes `g` in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.is_adjacent(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

/// Decodes a graph6 string. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |msg: &str| Error::Parse(format!("graph6: {msg}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let sextet = |i: usize| -> Result<usize> {
        bytes.get(i).map(|&b| (b - 63) as usize).ok_or_else(|| bad("truncated size"))
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(bad("empty input")),
        Some(b'~') if bytes.get(1) == Some(&b'~') => {
            let mut n = 0;
            for i in 2..8 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 8)
        }
        Some(b'~') => {
            let mut n = 0;
            for i in 1..4 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if bytes.len() - pos != expected {
        return Err(bad(&format!(
            "expected {expected} data bytes for n={n}, found {}",
            bytes.len() - pos
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            if k == bits {
                break 'outer;
            }
            let byte = (bytes[pos + k / 6] - 63) as usize;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.adj[i].insert(j);
                g.adj[j].insert(i);
            }
            k += 1;
        }
    }
    pos += expected;
    debug_assert_eq!(pos, bytes.len());
    Ok(g)
}

/// `{ "n": .., "edges": [[u, v], ..] }` with `u < v`, edges sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        EdgeListJson {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<&EdgeListJson> for Graph {
    type Error = Error;

    fn try_from(e: &EdgeListJson) -> Result<Graph> {
        let edges: Vec<_> = e.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(e.n, &edges)
    }
}
