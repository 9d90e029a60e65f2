use super::{Graph, Vertex};

/// Line graph of `g`. Vertex `i` of the result is `edges[i]`, where `edges`
/// (also returned) lists the edges of `g` in lexicographic order.
pub fn line_graph(g: &Graph) -> (Graph, Vec<(Vertex, Vertex)>) {
    let edges: Vec<_> = g.edges().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut l = Graph::empty(edges.len());
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                l.insert_edge(i, j);
            }
        }
    }
    (l, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_line_graphs() {
        assert_eq!(line_graph(&Graph::path(3)).0, Graph::path(2));
        assert_eq!(line_graph(&Graph::star(3)).0, Graph::complete(3));
        let (l, edges) = line_graph(&Graph::cycle(5));
        assert_eq!(edges, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(l.m(), 5);
        assert!(l.vertices().all(|v| l.degree(v) == 2));
        assert!(l.is_connected());
    }

    #[test]
    fn degree_identity() {
        let g = Graph::petersen().disjoint_union(&Graph::wheel(6));
        let (l, edges) = line_graph(&g);
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert_eq!(l.degree(i), g.degree(u) + g.degree(v) - 2);
        }
    }
}
