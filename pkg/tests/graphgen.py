"""Deterministic graph corpora for the test suite.

The email-Eu-core dataset itself is not redistributable inside this repo,
so ``eu_core_like_edges`` synthesizes a stand-in with exactly the same
dimensions (1,005 vertices, 25,571 directed edges), a skewed out-degree
profile, and every vertex present.  Everything is seeded, so the corpus
is byte-stable across runs and machines.
"""

from __future__ import annotations

import functools
import random

EU_CORE_VERTICES = 1005
EU_CORE_EDGES = 25571


def random_edge_list(seed: int, max_vertices: int = 200, weighted: bool = True):
    """One seeded random directed graph as an edge list.

    Returns (n, edges) where edges are (src, dst, weight) with weights in
    1..10 (1 when unweighted); duplicates and self-loops are allowed and
    every vertex 0..n-1 appears as a source at least once.
    """
    rng = random.Random(seed)
    n = rng.randint(2, max_vertices)
    m_extra = rng.randint(0, 3 * n)
    edges = []
    for v in range(n):
        w = rng.randint(1, 10) if weighted else 1
        edges.append((v, rng.randrange(n), w))
    for _ in range(m_extra):
        w = rng.randint(1, 10) if weighted else 1
        edges.append((rng.randrange(n), rng.randrange(n), w))
    return n, edges


@functools.lru_cache(maxsize=1)
def eu_core_like_edges():
    """Synthetic email-Eu-core stand-in: 1,005 vertices, 25,571 edges."""
    n = EU_CORE_VERTICES
    rng = random.Random(0xEC0FE)
    edges = []
    # a scrambled ring so every vertex occurs as both source and target
    ids = list(range(n))
    rng.shuffle(ids)
    for i in range(n):
        edges.append((ids[i], ids[(i + 1) % n], 1))
    # skewed bulk: quadratic bias toward low source ids, like a hub-heavy
    # communication graph
    while len(edges) < EU_CORE_EDGES:
        src = int(n * rng.random() ** 2.5)
        dst = rng.randrange(n)
        edges.append((src, dst, 1))
    assert len(edges) == EU_CORE_EDGES
    assert len({v for e in edges for v in e[:2]}) == n
    return n, edges


def write_edge_list(path, edges, weighted=False, header=True):
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write("# synthetic test graph\n")
        for s, d, w in edges:
            fh.write(f"{s} {d} {w}\n" if weighted else f"{s} {d}\n")
