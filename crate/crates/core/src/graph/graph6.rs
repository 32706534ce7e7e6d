//! The graph6 text format.
//!
//! Header: `n + 63` as one byte for `n < 63`, otherwise `~` followed by three
//! bytes of 6 bits each. Body: the upper triangle in column order
//! `(0,1), (0,2), (1,2), (0,3), ...`, packed big-endian into 6-bit groups,
//! zero padded, each group offset by 63.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const OPTIONAL_HEADER: &str = ">>graph6<<";

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn parse_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        msg: msg.into(),
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header is accepted; any
/// other extra byte, including a newline, is rejected.
pub fn graph6_decode(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let start = if text.starts_with(OPTIONAL_HEADER) {
        OPTIONAL_HEADER.len()
    } else {
        0
    };
    let data = &bytes[start..];
    let value = |k: usize| -> Result<u8> {
        let b = data[k];
        if (63..=126).contains(&b) {
            Ok(b - 63)
        } else {
            Err(parse_err(
                start + k,
                format!("byte {b:#04x} outside 63..=126"),
            ))
        }
    };

    if data.is_empty() {
        return Err(parse_err(start, "empty input"));
    }
    let (n, mut pos) = if data[0] != 126 {
        (value(0)? as usize, 1)
    } else {
        if data.len() < 4 {
            return Err(parse_err(start + data.len(), "truncated size header"));
        }
        if data[1] == 126 {
            return Err(parse_err(
                start + 1,
                "8-byte size headers are not supported",
            ));
        }
        let n = (0..3).try_fold(0usize, |acc, k| {
            Ok::<_, Error>(acc << 6 | value(1 + k)? as usize)
        })?;
        if n < 63 {
            return Err(parse_err(
                start + 1,
                format!("non-canonical long header for n = {n}"),
            ));
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "vertex count",
            got: n,
            limit: MAX_VERTICES,
        });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if data.len() < pos + need {
        return Err(parse_err(
            start + data.len(),
            format!(
                "expected {need} body bytes for n = {n}, found {}",
                data.len() - pos
            ),
        ));
    }
    if data.len() > pos + need {
        return Err(parse_err(
            start + pos + need,
            "trailing bytes after graph body",
        ));
    }

    let mut rows = vec![0u64; n];
    let mut bit = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let chunk = value(pos + bit / 6)?;
            if chunk >> (5 - bit % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    pos += need;
    if nbits % 6 != 0 {
        let last = value(pos - 1)?;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(start + pos - 1, "non-zero padding bits"));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, k_minus, path, with_isolated};

    #[test]
    fn small_known_strings() {
        assert_eq!(graph6_encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(graph6_encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(graph6_encode(&complete_bipartite(1, 2).unwrap()), "Bo");
        assert_eq!(graph6_encode(&path(3).unwrap()), "Bg");
        assert_eq!(graph6_encode(&complete(3).unwrap()), "Bw");
        // A five vertex example used by other graph6 implementations.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(graph6_encode(&g), "DQc");
    }

    #[test]
    fn long_header() {
        let g = complete(64).unwrap();
        let s = graph6_encode(&g);
        assert!(s.starts_with("~?@?~~~~~~"));
        assert_eq!(graph6_decode(&s).unwrap(), g);
        let g = with_isolated(&k_minus(30, 31).unwrap(), 2).unwrap();
        assert_eq!(graph6_decode(&graph6_encode(&g)).unwrap(), g);
    }

    #[test]
    fn decode_errors_carry_offsets() {
        match graph6_decode("Bo!") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match graph6_decode("B") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match graph6_decode("B\x7f") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match graph6_decode("Bo\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        // 3 vertices use 3 of the 6 body bits, the rest must be zero
        match graph6_decode("Bp") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            graph6_decode(""),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(graph6_decode("~?A?"), Err(Error::Capacity { .. })));
    }

    #[test]
    fn optional_header() {
        assert_eq!(graph6_decode(">>graph6<<Bw").unwrap(), complete(3).unwrap());
        assert!(matches!(
            graph6_decode(">>graph6<<"),
            Err(Error::Parse { offset: 10, .. })
        ));
    }
}
