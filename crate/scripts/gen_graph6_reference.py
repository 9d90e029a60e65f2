#!/usr/bin/env python3
"""Emit graph6 strings with their networkx-decoded edge lists.

Each line: <graph6> TAB <n> TAB <u-v,u-v,...> (edges with u < v, sorted).
Used as an independent reference for the Rust decoder.
"""
import random

import networkx as nx

rng = random.Random(20240611)
sizes = [1, 2, 3, 5, 8, 13, 30, 62, 63, 64, 70, 100]
for i in range(160):
    n = sizes[i % len(sizes)] if i < 2 * len(sizes) else rng.randint(0, 40)
    p = rng.choice([0.0, 0.1, 0.2, 0.5, 0.9])
    g = nx.gnp_random_graph(n, p, seed=rng.randint(0, 10**9))
    s = nx.to_graph6_bytes(g, header=False).decode().strip()
    h = nx.from_graph6_bytes(s.encode())
    edges = sorted((min(u, v), max(u, v)) for u, v in h.edges())
    print(f"{s}\t{h.number_of_nodes()}\t" + ",".join(f"{u}-{v}" for u, v in edges))
