//! graph6 encoding (short form for n ≤ 62, long forms up to 2^36 - 1).

use super::{Graph, GraphError};

const BIAS: u8 = 63;
const LONG: u8 = 126;
const HEADER: &str = ">>graph6<<";

fn err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6 { offset, message: message.into() }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, GraphError> {
    let b = *bytes.get(offset).ok_or_else(|| err(offset, "truncated input"))?;
    if !(BIAS..=LONG).contains(&b) {
        return Err(err(offset, format!("byte {b} outside the printable range 63..=126")));
    }
    Ok(u64::from(b - BIAS))
}

fn read_size(bytes: &[u8], start: usize) -> Result<(usize, usize), GraphError> {
    let first = *bytes.get(start).ok_or_else(|| err(start, "empty input"))?;
    if first != LONG {
        return Ok((sextet(bytes, start)? as usize, start + 1));
    }
    let (digits, from) = if bytes.get(start + 1) == Some(&LONG) { (6, start + 2) } else { (3, start + 1) };
    let mut n = 0u64;
    for i in 0..digits {
        let off = from + i;
        if off >= bytes.len() {
            return Err(err(off, "malformed header: size field truncated"));
        }
        n = (n << 6) | sextet(bytes, off)?;
    }
    Ok((n as usize, from + digits))
}

/// Decode one graph6 string. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let trimmed = text.trim_end();
    let lead = trimmed.len() - trimmed.trim_start().len();
    let mut start = lead;
    if trimmed[lead..].starts_with(HEADER) {
        start += HEADER.len();
    }
    let bytes = trimmed.as_bytes();
    let (n, body) = read_size(bytes, start)?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() < body + need {
        return Err(err(
            bytes.len(),
            format!("truncated bit stream: {n} vertices need {need} data bytes, found {}", bytes.len() - body),
        ));
    }
    if bytes.len() > body + need {
        return Err(err(body + need, "unexpected trailing bytes"));
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    let mut word = 0u64;
    for j in 1..n {
        for i in 0..j {
            if k.is_multiple_of(6) {
                word = sextet(bytes, body + k / 6)?;
            }
            if (word >> (5 - k % 6)) & 1 == 1 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    // Validate the padding bytes' range even when no bits are read from them.
    for off in body..body + need {
        sextet(bytes, off)?;
    }
    Ok(g)
}

/// Encode `g` as graph6, without header or trailing newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(8 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(LONG);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([LONG, LONG]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + BIAS);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        out.push((acc << (6 - k % 6)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_and_empty() {
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        let g = parse_graph6("@").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn known_strings() {
        // star K_{1,4} with centre 4
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(emit_graph6(&Graph::cycle(4)), "Cl");
        assert_eq!(emit_graph6(&Graph::path(4)), "Ch");
        assert_eq!(parse_graph6(">>graph6<<Cl\n").unwrap(), Graph::cycle(4));
    }

    #[test]
    fn short_form_uses_one_size_byte() {
        for n in [0, 1, 17, 62] {
            let s = emit_graph6(&Graph::complete(n));
            assert_eq!(s.as_bytes()[0], n as u8 + 63);
        }
        let s = emit_graph6(&Graph::empty(63));
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(parse_graph6(&s).unwrap().n(), 63);
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_graph6("C") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match parse_graph6("C\x20") {
            Err(GraphError::Graph6 { .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph6("Cl?") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph6("~?") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph6("C\x7f") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph6("").is_err());
    }
}
