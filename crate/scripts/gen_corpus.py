#!/usr/bin/env python3
"""Write every connected graph on n vertices (up to isomorphism) as graph6.

Equivalent to `geng -c n` from nauty. Graphs on up to 7 vertices come from
the networkx atlas; 8-vertex graphs are produced by adding a vertex to every
7-vertex graph in all possible ways and removing isomorphic duplicates.

usage: gen_corpus.py MIN_N MAX_N > corpus.g6
"""
import itertools
import sys

import networkx as nx


def by_order(max_n):
    atlas = nx.graph_atlas_g()
    out = {n: [g for g in atlas if g.number_of_nodes() == n] for n in range(max_n + 1)}
    for n in range(8, max_n + 1):
        buckets = {}
        for parent in out[n - 1]:
            for k in range(0, n):
                for nbrs in itertools.combinations(range(n - 1), k):
                    g = nx.Graph(parent)
                    g.add_node(n - 1)
                    g.add_edges_from((n - 1, u) for u in nbrs)
                    key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
                    bucket = buckets.setdefault(key, [])
                    if not any(nx.is_isomorphic(g, h) for h in bucket):
                        bucket.append(g)
        out[n] = [g for b in buckets.values() for g in b]
    return out


def main():
    lo, hi = int(sys.argv[1]), int(sys.argv[2])
    graphs = by_order(hi)
    for n in range(lo, hi + 1):
        conn = [g for g in graphs[n] if nx.is_connected(g)]
        lines = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in conn)
        print(f"n={n}: {len(conn)} connected graphs", file=sys.stderr)
        for line in lines:
            print(line)


if __name__ == "__main__":
    main()
