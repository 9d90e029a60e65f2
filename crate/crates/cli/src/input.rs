use std::fs;
use std::path::Path;

use dcut::graph::{parse_edge_list, parse_graph6, Graph};

/// One graph from a file: an edge list if the first content line is two
/// integers, otherwise graph6 (first line only).
pub fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).ok_or("empty input")?;
    let tokens: Vec<&str> = first.split_whitespace().collect();
    if tokens.len() == 2 && tokens.iter().all(|t| t.parse::<usize>().is_ok()) {
        parse_edge_list(text).map_err(|e| e.to_string())
    } else {
        parse_graph6(first).map_err(|e| e.to_string())
    }
}

/// Every graph in a graph6 file, with its 1-based line number.
pub fn read_graph6_lines(path: &Path) -> Result<Vec<(usize, Graph)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l).map(|g| (i + 1, g)).map_err(|e| format!("{} line {}: {e}", path.display(), i + 1))
        })
        .collect()
}
