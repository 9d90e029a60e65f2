//! Plain edge-list text: a header line `n m`, then `m` lines `u v` with
//! 0-based endpoints. Blank lines and lines starting with `#` are skipped.

use super::{Graph, GraphError};

fn err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::EdgeList { line, message: message.into() }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| err(line_no, "expected two integers"))?;
        tok.parse().map_err(|_| err(line_no, format!("not a non-negative integer: {tok:?}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(err(line_no, "trailing tokens"));
    }
    Ok(pair)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header"))?;
    let (n, m) = two_numbers(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let (u, v) = two_numbers(no, line)?;
        if u >= n || v >= n {
            return Err(err(no, format!("endpoint out of range for n = {n}")));
        }
        if u == v {
            return Err(err(no, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(hline, format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.m() != m {
        return Err(err(hline, "repeated edges"));
    }
    Ok(g)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::petersen();
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        let text = "# a comment\n3 2\n\n0 1\n2 1\n";
        assert_eq!(parse_edge_list(text).unwrap(), Graph::path(3));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "3", "3 1\n0 3\n", "3 1\n1 1\n", "3 2\n0 1\n", "3 2\n0 1\n1 0\n", "2 1\n0 x\n"] {
            assert!(parse_edge_list(bad).is_err(), "{bad:?}");
        }
        match parse_edge_list("3 1\n0 5\n") {
            Err(GraphError::EdgeList { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
