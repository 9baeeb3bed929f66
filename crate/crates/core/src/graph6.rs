//! graph6 encoding of undirected simple graphs.
//!
//! A graph6 string is `N(n) R(x)`: the order `n` in one, four or eight bytes,
//! followed by the upper triangle of the adjacency matrix read column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), packed big-endian six bits per byte.
//! Every byte is offset by 63, so the alphabet is `?` (63) to `~` (126).

use thiserror::Error;

use crate::graph::Graph;

/// Largest order representable by the eight-byte size prefix.
pub const MAX_ORDER: u64 = 68_719_476_735;

const BIAS: u8 = 63;
const MAX_BYTE: u8 = 126;
const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("bad graph6 length: expected {expected} bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("trailing bytes after graph6 data at offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("graph order {0} exceeds the graph6 limit")]
    TooLarge(u64),
}

impl Graph6Error {
    /// Byte offset the error points at, when it has one.
    pub fn offset(&self) -> Option<usize> {
        match *self {
            Graph6Error::InvalidByte { offset, .. } | Graph6Error::TrailingBytes { offset } => {
                Some(offset)
            }
            Graph6Error::BadLength { found, .. } => Some(found),
            _ => None,
        }
    }
}

fn encode_order(n: u64, out: &mut Vec<u8>) -> Result<(), Graph6Error> {
    let push_bits = |out: &mut Vec<u8>, count: u32| {
        for k in (0..count).rev() {
            out.push(((n >> (6 * k)) & 0x3f) as u8 + BIAS);
        }
    };
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(MAX_BYTE);
        push_bits(out, 3);
    } else if n <= MAX_ORDER {
        out.push(MAX_BYTE);
        out.push(MAX_BYTE);
        push_bits(out, 6);
    } else {
        return Err(Graph6Error::TooLarge(n));
    }
    Ok(())
}

/// Encodes `g` with the shortest size prefix.
pub fn write_graph6(g: &Graph) -> Result<Vec<u8>, Graph6Error> {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n as u64, &mut out)?;
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    Ok(out)
}

/// [`write_graph6`] as a `String`; graph6 output is always ASCII.
pub fn to_graph6_string(g: &Graph) -> Result<String, Graph6Error> {
    write_graph6(g).map(|b| String::from_utf8(b).expect("graph6 is ASCII"))
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (BIAS..=MAX_BYTE).contains(&b) => Ok((b - BIAS) as u64),
        Some(&b) => Err(Graph6Error::InvalidByte { offset, byte: b }),
        None => Err(Graph6Error::BadLength { expected: offset + 1, found: bytes.len() }),
    }
}

/// Parses one graph6 record. An optional `>>graph6<<` header and a single
/// trailing newline are accepted.
pub fn parse_graph6(input: &[u8]) -> Result<Graph, Graph6Error> {
    let mut bytes = input;
    if let Some(rest) = bytes.strip_suffix(b"\n") {
        bytes = rest.strip_suffix(b"\r").unwrap_or(rest);
    }
    let start = if bytes.starts_with(HEADER) { HEADER.len() } else { 0 };
    if bytes.len() == start {
        return Err(Graph6Error::Empty);
    }

    let mut pos = start;
    let first = sextet(bytes, pos)?;
    let n = if bytes[pos] != MAX_BYTE {
        pos += 1;
        first
    } else if bytes.get(pos + 1) != Some(&MAX_BYTE) {
        let mut n = 0;
        for k in 1..=3 {
            n = n << 6 | sextet(bytes, pos + k)?;
        }
        pos += 4;
        n
    } else {
        let mut n = 0;
        for k in 2..=7 {
            n = n << 6 | sextet(bytes, pos + k)?;
        }
        pos += 8;
        n
    };

    let bits = n.checked_mul(n.saturating_sub(1)).ok_or(Graph6Error::TooLarge(n))? / 2;
    let expected = pos + bits.div_ceil(6) as usize;
    if bytes.len() < expected {
        // report the first bad byte before complaining about length
        for off in pos..bytes.len() {
            sextet(bytes, off)?;
        }
        return Err(Graph6Error::BadLength { expected, found: bytes.len() });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingBytes { offset: expected });
    }

    let n = n as usize;
    let mut g = Graph::edgeless(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let word = sextet(bytes, pos + k / 6)?;
            if word >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    // validate padding bytes beyond the last full sextet consumed in the loop
    for off in pos + k / 6..expected {
        sextet(bytes, off)?;
    }
    Ok(g)
}

/// Parses newline-separated graph6 records, skipping blank lines. Each item
/// carries its 1-based line number.
pub fn parse_graph6_lines(text: &[u8]) -> Vec<(usize, Result<Graph, Graph6Error>)> {
    text.split(|&b| b == b'\n')
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            (!line.is_empty()).then(|| (i + 1, parse_graph6(line)))
        })
        .collect()
}
