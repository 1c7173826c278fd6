//! graph6 encoding: `N(n)` followed by the upper triangle of the adjacency
//! matrix read column by column (`(0,1),(0,2),(1,2),(0,3),...`), packed
//! big-endian into 6-bit groups offset by 63.

use crate::error::GraphError;
use crate::graph::Graph;

/// Largest order representable with the 4-byte `N(n)` form.
pub const GRAPH6_MAX_N: usize = 258_047;

pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(GraphError::Graph6TooLarge {
            n,
            max: GRAPH6_MAX_N,
        });
    }
    let mut out: Vec<u8> = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

pub fn decode_graph6(s: &str) -> Result<Graph, GraphError> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let bad = |offset: usize, reason: &str| GraphError::Graph6 {
        offset,
        reason: reason.to_string(),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(i, "byte outside the printable range 63..=126"));
        }
    }
    let first = *bytes.first().ok_or_else(|| bad(0, "empty string"))?;
    let (n, header) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(bad(bytes.len(), "truncated long-form vertex count"));
        }
        if bytes[1] == 126 {
            return Err(bad(1, "8-byte vertex counts are not supported"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() != needed {
        return Err(bad(
            header + body.len().min(needed),
            &format!(
                "expected {needed} data bytes for n = {n}, found {}",
                body.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    if let Some(&last) = body.last() {
        let pad = needed * 6 - bits;
        if (last - 63) & ((1u8 << pad) - 1) != 0 {
            return Err(bad(header + needed - 1, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}
