//! graph6 encoding and decoding, header-less variant for orders up to 62:
//! one size byte `n + 63`, then the upper triangle of the adjacency matrix
//! read column by column ((0,1), (0,2), (1,2), (0,3), ...), packed into
//! 6-bit groups most significant bit first, zero-padded, each group offset
//! by 63 into the printable range.

use decycle_core::Graph;
use thiserror::Error;

/// Largest order a single-byte graph6 header can carry.
pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Debug, Error, PartialEq)]
pub enum Graph6Error {
    #[error("graph order {0} exceeds the graph6 single-byte limit of 62")]
    TooLarge(usize),
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6 string truncated: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("unexpected trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bit at offset {offset}")]
    NonZeroPadding { offset: usize },
    #[error("graph construction failed: {0}")]
    Graph(decycle_core::Error),
}

fn data_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Encodes a graph of order at most 62.
pub fn encode_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut bytes = Vec::with_capacity(1 + data_len(n));
    bytes.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            group <<= 1;
            if g.has_edge(row, col) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                bytes.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
}

/// Decodes a header-less graph6 string, reporting the byte offset of any
/// malformed input.
pub fn decode_graph6(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.as_bytes();
    let Some(&size_byte) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    if !(63..=126).contains(&size_byte) {
        return Err(Graph6Error::InvalidByte {
            offset: 0,
            byte: size_byte,
        });
    }
    let n = (size_byte - 63) as usize;
    if n > GRAPH6_MAX_VERTICES {
        // 126 introduces the multi-byte size forms, which this variant
        // does not accept.
        return Err(Graph6Error::TooLarge(n));
    }
    if n == 0 {
        return Err(Graph6Error::Graph(decycle_core::Error::ZeroOrder));
    }
    let expected = 1 + data_len(n);
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            got: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingData { offset: expected });
    }
    let total_bits = n * (n - 1) / 2;
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    let mut pair = (0usize, 1usize); // (row, col)
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { offset: i, byte: b });
        }
        let group = b - 63;
        for k in 0..6 {
            let bit = (group >> (5 - k)) & 1;
            if bit_index >= total_bits {
                if bit != 0 {
                    return Err(Graph6Error::NonZeroPadding { offset: i });
                }
            } else if bit == 1 {
                edges.push(pair);
            }
            bit_index += 1;
            if bit_index < total_bits {
                pair = if pair.0 + 1 < pair.1 {
                    (pair.0 + 1, pair.1)
                } else {
                    (0, pair.1 + 1)
                };
            }
        }
    }
    Graph::from_edges(n, edges).map_err(Graph6Error::Graph)
}
