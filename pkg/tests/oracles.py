"""Independent reference implementations used as test oracles.

Everything here is deliberately plain Python over edge lists: no imports
from the package's engine or graph machinery, so these stay independent
of the code paths they check.
"""

from __future__ import annotations

import heapq
from collections import deque

INT_INF = 2**63 - 1


def hand_csr(n: int, edges):
    """Brute-force CSR construction: bucket by source, stable input order.

    Returns (offsets, targets, weights) as plain lists.
    """
    buckets = [[] for _ in range(n)]
    for s, d, w in edges:
        buckets[s].append((d, w))
    offsets = [0]
    targets, weights = [], []
    for v in range(n):
        for d, w in buckets[v]:
            targets.append(d)
            weights.append(w)
        offsets.append(len(targets))
    return offsets, targets, weights


def hand_csc(n: int, edges):
    """Brute-force CSC construction: bucket by destination."""
    buckets = [[] for _ in range(n)]
    for s, d, w in edges:
        buckets[d].append((s, w))
    offsets = [0]
    sources, weights = [], []
    for v in range(n):
        for s, w in buckets[v]:
            sources.append(s)
            weights.append(w)
        offsets.append(len(sources))
    return offsets, sources, weights


def reference_bfs(n: int, edges, root: int):
    """Classic queue BFS distances over out-edges; INT_INF for unreached."""
    adj = [[] for _ in range(n)]
    for s, d, _ in edges:
        adj[s].append(d)
    dist = [INT_INF] * n
    dist[root] = 0
    q = deque([root])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] == INT_INF:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def reference_sssp(n: int, edges, root: int):
    """Dijkstra with a binary heap; weights must be non-negative."""
    adj = [[] for _ in range(n)]
    for s, d, w in edges:
        adj[s].append((d, w))
    dist = [INT_INF] * n
    dist[root] = 0
    heap = [(0, root)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for v, w in adj[u]:
            alt = du + w
            if alt < dist[v]:
                dist[v] = alt
                heapq.heappush(heap, (alt, v))
    return dist


def reference_pagerank(n: int, edges, damping=0.85, epsilon=1e-12, max_iter=200):
    """Synchronous gather-style pagerank with per-vertex convergence.

    Every vertex starts at 1/n and active.  Each round, an active vertex
    with in-edges recomputes (1-d)/n + d * sum(rank[u]/outdeg(u)) over its
    in-neighbors (previous round's ranks, in-edge input order) and stays
    active while its change is >= epsilon.  Vertices without in-edges
    keep their value, mirroring the apply-only-on-received contract.
    """
    in_lists = [[] for _ in range(n)]
    outdeg = [0] * n
    for s, d, _ in edges:
        in_lists[d].append(s)
        outdeg[s] += 1
    fn = float(n)
    ranks = [1.0 / fn] * n
    active = set(range(n))
    it = 0
    while active and it < max_iter:
        it += 1
        nxt = list(ranks)
        staged = set()
        for v in active:
            srcs = in_lists[v]
            if not srcs:
                continue
            acc = ranks[srcs[0]] / float(outdeg[srcs[0]])
            for u in srcs[1:]:
                acc = acc + ranks[u] / float(outdeg[u])
            new = (1.0 - damping) / fn + damping * acc
            if max(new - ranks[v], ranks[v] - new) >= epsilon:
                staged.add(v)
            nxt[v] = new
        ranks = nxt
        active = staged
    return ranks


def reference_pagerank_power(n: int, edges, damping=0.85, iters=100):
    """Textbook global power iteration (all vertices update every round);
    loose cross-check only, for graphs where every vertex has in-edges."""
    in_lists = [[] for _ in range(n)]
    outdeg = [0] * n
    for s, d, _ in edges:
        in_lists[d].append(s)
        outdeg[s] += 1
    fn = float(n)
    ranks = [1.0 / fn] * n
    for _ in range(iters):
        nxt = []
        for v in range(n):
            acc = sum(ranks[u] / outdeg[u] for u in in_lists[v])
            nxt.append((1.0 - damping) / fn + damping * acc)
        ranks = nxt
    return ranks


def count_bfs_traversed(n: int, edges, root: int):
    """Edges streamed by a bulk-synchronous BFS: the sum of out-degrees of
    every vertex over each super-step in which it is active."""
    adj = [[] for _ in range(n)]
    for s, d, _ in edges:
        adj[s].append(d)
    dist = [INT_INF] * n
    dist[root] = 0
    level = [root]
    traversed = 0
    while level:
        nxt_set = {}
        for u in level:
            traversed += len(adj[u])
            for v in adj[u]:
                if dist[u] + 1 < dist[v]:
                    dist[v] = dist[u] + 1
                    nxt_set[v] = None
        level = list(nxt_set)
    return traversed
