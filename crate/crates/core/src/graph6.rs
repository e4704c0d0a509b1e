//! graph6 encoding for graphs with at most 64 vertices.
//!
//! Edge bits are the upper triangle of the adjacency matrix taken column by
//! column: `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte, most
//! significant bit first, each byte offset by 63.

use crate::error::Graph6Error;
use crate::graph::{bit, Graph, MAX_VERTICES};

const BIAS: u8 = 63;

/// Decodes one graph6 line. A trailing `\n` / `\r\n` is tolerated; a `>>graph6<<` header is not.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(Graph6Error::BadByte { offset, byte: b });
        }
    }

    let (n, data_start) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        // 8-byte form, n >= 258047: always beyond the cap
        if bytes.len() < 8 {
            return Err(Graph6Error::BadLength { offset: 1 });
        }
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n <= MAX_VERTICES {
            return Err(Graph6Error::BadLength { offset: 1 });
        }
        return Err(Graph6Error::TooLarge { offset: 0, n });
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::BadLength { offset: bytes.len() });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n < 63 {
            // the long form is only valid for n >= 63
            return Err(Graph6Error::BadLength { offset: 1 });
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge { offset: 0, n });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let data = &bytes[data_start..];
    if data.len() != expected {
        return Err(Graph6Error::WrongLength {
            offset: data_start,
            n,
            expected,
            found: data.len(),
        });
    }

    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - BIAS;
            if byte & (0x20 >> (k % 6)) != 0 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = data[expected - 1] - BIAS;
        let pad_mask = (1u8 << (6 - nbits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Graph6Error::NonzeroPadding {
                offset: data_start + expected - 1,
            });
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Encodes `g` as a graph6 string without a trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + nbits.div_ceil(6));
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + BIAS);
        out.push(((n >> 6) & 0x3f) as u8 + BIAS);
        out.push((n & 0x3f) as u8 + BIAS);
    }
    let rows = g.rows();
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for row in rows.iter().take(j) {
            acc <<= 1;
            if row & bit(j) != 0 {
                acc |= 1;
            }
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + BIAS);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        acc <<= 6 - k % 6;
        out.push(acc + BIAS);
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_round_trip() {
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(write_graph6(&k3), "Bw");
    }

    #[test]
    fn empty_five() {
        assert_eq!(parse_graph6("D??").unwrap(), Graph::empty(5));
        assert_eq!(write_graph6(&Graph::empty(5)), "D??");
    }

    #[test]
    fn five_cycle() {
        let g = parse_graph6("Dhc").unwrap();
        let expected = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(g, expected);
        assert_eq!(write_graph6(&Graph::cycle(5)), "Dhc");
    }

    #[test]
    fn small_orders() {
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
    }

    #[test]
    fn trailing_newline_is_tolerated() {
        assert_eq!(parse_graph6("Bw\n").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph6("Bw\r\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn long_form_for_63_and_64() {
        for n in [62, 63, 64] {
            let g = Graph::cycle(n);
            let s = write_graph6(&g);
            if n >= 63 {
                assert!(s.starts_with('~'));
            }
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn rejects_oversized() {
        // n = 65 in the 4-byte form
        let err = parse_graph6("~?@@").unwrap_err();
        assert!(matches!(err, Graph6Error::TooLarge { n: 65, offset: 0 }));
        let err = parse_graph6("~~?@????").unwrap_err();
        assert!(matches!(err, Graph6Error::TooLarge { .. }));
        let err = parse_graph6("~~??????").unwrap_err();
        assert!(matches!(err, Graph6Error::BadLength { offset: 1 }));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(
            parse_graph6("B w"),
            Err(Graph6Error::BadByte { offset: 1, byte: b' ' })
        ));
        assert!(matches!(
            parse_graph6("Bww"),
            Err(Graph6Error::WrongLength { offset: 1, expected: 1, found: 2, .. })
        ));
        assert!(matches!(parse_graph6("D?"), Err(Graph6Error::WrongLength { .. })));
        // K3 uses three of six bits; setting a padding bit must fail
        assert!(matches!(
            parse_graph6("Bx"),
            Err(Graph6Error::NonzeroPadding { offset: 1 })
        ));
        assert!(matches!(parse_graph6("~?"), Err(Graph6Error::BadLength { .. })));
        assert!(matches!(parse_graph6("~??A"), Err(Graph6Error::BadLength { .. })));
    }
}
