"""Preprocessing passes: file I/O, layout conversion, partitioning, reordering.

Input is SNAP-style edge-list text: one ``src dst [weight]`` per line,
whitespace separated, ``#`` starting a comment line.  Original ids may be
sparse; layout conversion compacts them to dense 0..n-1 in first-appearance
order and remembers the mapping on the graph.

The on-disk graph container is the "JGR1" format:

    magic   4 bytes  ASCII "JGR1"
    u64 LE  num_vertices
    u64 LE  num_edges
    u64 LE  direction   0 = CSR, 1 = CSC
    u64 LE  domain      0 = int, 1 = float
    arrays, back to back, little endian:
        vertex_values   num_vertices   * 8 bytes (i64 or f64 per domain)
        edge_offset     num_vertices+1 * 8 bytes (u64)
        edge_targets    num_edges      * 8 bytes (u64)
        edge_weights    num_edges      * 8 bytes (i64 or f64 per domain)
        id_map          num_vertices   * 8 bytes (u64), present iff bytes remain

All operations are pure: they build fresh outputs and never mutate inputs.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DirectionError, InvalidK, ParseError
from .graph import Direction, Graph, edge_triples
from .values import Domain

MAGIC = b"JGR1"


@dataclass
class EdgeList:
    """Raw parsed edges with original (possibly gappy) ids."""

    edges: list[tuple[int, int, object]]
    weighted: bool
    domain: Domain = Domain.INT

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class Partitioning:
    """Vertex -> part assignment; metadata only, the graph is not split."""

    k: int
    part_of: np.ndarray

    def sizes(self) -> list[int]:
        return np.bincount(self.part_of, minlength=self.k).tolist()


@dataclass
class Permutation:
    """Vertex relabeling: forward[old] = new, inverse[new] = old."""

    forward: np.ndarray
    inverse: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.forward = np.asarray(self.forward, dtype=np.int64)
        n = self.forward.shape[0]
        if sorted(self.forward.tolist()) != list(range(n)):
            raise ValueError("forward map is not a bijection on 0..n-1")
        inv = np.empty(n, dtype=np.int64)
        inv[self.forward] = np.arange(n, dtype=np.int64)
        self.inverse = inv

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64))


def read_edge_list(path, domain: Domain = Domain.INT) -> EdgeList:
    """Parse a SNAP-style edge-list file.

    Comment lines start with '#'.  Every data line must have two or three
    fields; weights must be present on all lines or on none.
    """
    edges: list[tuple[int, int, object]] = []
    weighted: Optional[bool] = None
    parse_w = int if domain is Domain.INT else float
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) not in (2, 3):
                raise ParseError(f"expected 'src dst [weight]', got {line!r}", lineno)
            try:
                src, dst = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
            if src < 0 or dst < 0:
                raise ParseError(f"negative vertex id in {line!r}", lineno)
            has_w = len(fields) == 3
            if weighted is None:
                weighted = has_w
            elif weighted != has_w:
                raise ParseError("weight present on some lines but not all", lineno)
            if has_w:
                try:
                    w = parse_w(fields[2])
                except ValueError:
                    raise ParseError(f"bad weight in {line!r}", lineno) from None
            else:
                w = 1 if domain is Domain.INT else 1.0
            edges.append((src, dst, w))
    return EdgeList(edges=edges, weighted=bool(weighted), domain=domain)


def _compact_ids(el: EdgeList) -> tuple[dict[int, int], np.ndarray]:
    dense: dict[int, int] = {}
    for src, dst, _ in el.edges:
        if src not in dense:
            dense[src] = len(dense)
        if dst not in dense:
            dense[dst] = len(dense)
    id_map = np.fromiter(dense.keys(), dtype=np.int64, count=len(dense))
    return dense, id_map


def layout_convert(el: EdgeList, target: Direction) -> Graph:
    """Build a CSR or CSC graph from an edge list.

    Ids are compacted in first-appearance order; within a bucket edges
    keep their input order; vertex values start at INF.  The id map is
    attached only when compaction actually renamed something.
    """
    dense, id_map = _compact_ids(el)
    n = len(dense)
    m = len(el.edges)
    wdtype = np.int64 if el.domain is Domain.INT else np.float64

    key_of = (lambda s, d: s) if target is Direction.CSR else (lambda s, d: d)
    counts = np.zeros(n + 1, dtype=np.int64)
    for src, dst, _ in el.edges:
        counts[key_of(dense[src], dense[dst]) + 1] += 1
    offsets = np.cumsum(counts)

    targets = np.zeros(m, dtype=np.int64)
    weights = np.zeros(m, dtype=wdtype)
    cursor = offsets[:-1].copy()
    for src, dst, w in el.edges:
        s, d = dense[src], dense[dst]
        bucket = key_of(s, d)
        pos = cursor[bucket]
        targets[pos] = d if target is Direction.CSR else s
        weights[pos] = w
        cursor[bucket] += 1

    trivial = bool(np.array_equal(id_map, np.arange(n)))
    return Graph(
        num_vertices=n,
        edge_offset=offsets,
        edge_targets=targets,
        edge_weights=weights,
        domain=el.domain,
        direction=target,
        id_map=None if trivial else id_map,
    )


def convert_graph(g: Graph, target: Direction) -> Graph:
    """Re-bucket an existing graph into the other layout.

    Unlike layout_convert this never recompacts ids, so isolated vertices
    survive; values and the id map are carried over.
    """
    if g.direction is target:
        out = g.copy()
        return out
    n, m = g.num_vertices, g.num_edges
    counts = np.zeros(n + 1, dtype=np.int64)
    triples = edge_triples(g)
    key = (lambda s, d: s) if target is Direction.CSR else (lambda s, d: d)
    for s, d, _ in triples:
        counts[key(s, d) + 1] += 1
    offsets = np.cumsum(counts)
    targets = np.zeros(m, dtype=np.int64)
    wdtype = np.int64 if g.domain is Domain.INT else np.float64
    weights = np.zeros(m, dtype=wdtype)
    cursor = offsets[:-1].copy()
    for s, d, w in triples:
        bucket = key(s, d)
        pos = cursor[bucket]
        targets[pos] = d if target is Direction.CSR else s
        weights[pos] = w
        cursor[bucket] += 1
    return Graph(
        num_vertices=n,
        edge_offset=offsets,
        edge_targets=targets,
        edge_weights=weights,
        domain=g.domain,
        direction=target,
        vertex_values=g.vertex_values,
        id_map=g.id_map,
    )


def partition(g: Graph, k: int, strategy: str = "contiguous") -> Partitioning:
    """Assign every vertex to one of k parts.

    contiguous: equal ranges, remainder spread over the earlier parts.
    round_robin: vertex v goes to part v mod k.
    """
    n = g.num_vertices
    if k < 1 or (n > 0 and k > n) or (n == 0 and k != 1):
        raise InvalidK(f"k={k} invalid for {n} vertices")
    part_of = np.zeros(n, dtype=np.int64)
    if strategy == "contiguous":
        base, extra = divmod(n, k)
        start = 0
        for p in range(k):
            size = base + (1 if p < extra else 0)
            part_of[start : start + size] = p
            start += size
    elif strategy == "round_robin":
        part_of = np.arange(n, dtype=np.int64) % k
    else:
        raise ValueError(f"unknown partition strategy {strategy!r}")
    return Partitioning(k=k, part_of=part_of)


def _apply_permutation(g: Graph, perm: Permutation) -> Graph:
    # relabel edge (u,v) -> (pi(u), pi(v)); bucket order by new source,
    # edges of one old vertex keeping their original relative order
    n, m = g.num_vertices, g.num_edges
    fwd = perm.forward
    counts = np.zeros(n + 1, dtype=np.int64)
    counts[fwd + 1] = np.diff(g.edge_offset)
    offsets = np.cumsum(counts)
    targets = np.zeros(m, dtype=np.int64)
    weights = np.zeros_like(g.edge_weights)
    for old in range(n):
        begin, end = int(g.edge_offset[old]), int(g.edge_offset[old + 1])
        pos = offsets[fwd[old]]
        for e in range(begin, end):
            targets[pos] = fwd[g.edge_targets[e]]
            weights[pos] = g.edge_weights[e]
            pos += 1
    values = np.empty_like(g.vertex_values)
    values[fwd] = g.vertex_values
    id_map = None
    if g.id_map is not None:
        id_map = np.empty_like(g.id_map)
        id_map[fwd] = g.id_map
    return Graph(
        num_vertices=n,
        edge_offset=offsets,
        edge_targets=targets,
        edge_weights=weights,
        domain=g.domain,
        direction=g.direction,
        vertex_values=values,
        id_map=id_map,
    )


def reorder(g: Graph, strategy: str = "identity") -> tuple[Graph, Permutation]:
    """Relabel vertices to improve locality.

    degree_desc: new ids by out-degree descending, old id ascending on
    ties.  dfs_locality: DFS preorder starting at vertex 0 (restarting at
    the smallest unvisited id, neighbors in offset order).  identity:
    relabel by the identity map.
    """
    if g.direction is not Direction.CSR:
        raise DirectionError("reorder needs a CSR graph")
    n = g.num_vertices
    if strategy == "identity":
        perm = Permutation.identity(n)
    elif strategy == "degree_desc":
        degrees = np.diff(g.edge_offset)
        order = sorted(range(n), key=lambda v: (-int(degrees[v]), v))
        fwd = np.empty(n, dtype=np.int64)
        for new, old in enumerate(order):
            fwd[old] = new
        perm = Permutation(fwd)
    elif strategy == "dfs_locality":
        fwd = np.full(n, -1, dtype=np.int64)
        counter = 0
        for root in range(n):
            if fwd[root] != -1:
                continue
            stack = [root]
            while stack:
                v = stack.pop()
                if fwd[v] != -1:
                    continue
                fwd[v] = counter
                counter += 1
                begin, end = int(g.edge_offset[v]), int(g.edge_offset[v + 1])
                for e in range(end - 1, begin - 1, -1):
                    t = int(g.edge_targets[e])
                    if fwd[t] == -1:
                        stack.append(t)
        perm = Permutation(fwd)
    else:
        raise ValueError(f"unknown reorder strategy {strategy!r}")
    return _apply_permutation(g, perm), perm


# ---- container I/O ------------------------------------------------------


def write_graph(g: Graph, path) -> None:
    """Serialize to the JGR1 container (layout documented at module top)."""
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(
            struct.pack(
                "<QQQQ",
                g.num_vertices,
                g.num_edges,
                0 if g.direction is Direction.CSR else 1,
                0 if g.domain is Domain.INT else 1,
            )
        )
        vdtype = "<i8" if g.domain is Domain.INT else "<f8"
        fh.write(g.vertex_values.astype(vdtype).tobytes())
        fh.write(g.edge_offset.astype("<u8").tobytes())
        fh.write(g.edge_targets.astype("<u8").tobytes())
        fh.write(g.edge_weights.astype(vdtype).tobytes())
        if g.id_map is not None:
            fh.write(g.id_map.astype("<u8").tobytes())


def read_graph(path) -> Graph:
    """Load a JGR1 container written by write_graph."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != MAGIC:
        raise ParseError(f"{path}: not a JGR1 container", 0)
    n, m, dirflag, domflag = struct.unpack_from("<QQQQ", blob, 4)
    domain = Domain.INT if domflag == 0 else Domain.FLOAT
    direction = Direction.CSR if dirflag == 0 else Direction.CSC
    vdtype = "<i8" if domain is Domain.INT else "<f8"
    pos = 4 + 32
    values = np.frombuffer(blob, dtype=vdtype, count=n, offset=pos)
    pos += 8 * n
    offsets = np.frombuffer(blob, dtype="<u8", count=n + 1, offset=pos).astype(np.int64)
    pos += 8 * (n + 1)
    targets = np.frombuffer(blob, dtype="<u8", count=m, offset=pos).astype(np.int64)
    pos += 8 * m
    weights = np.frombuffer(blob, dtype=vdtype, count=m, offset=pos)
    pos += 8 * m
    id_map = None
    if len(blob) - pos >= 8 * n and n > 0:
        id_map = np.frombuffer(blob, dtype="<u8", count=n, offset=pos).astype(np.int64)
    return Graph(
        num_vertices=n,
        edge_offset=offsets,
        edge_targets=targets,
        edge_weights=weights,
        domain=domain,
        direction=direction,
        vertex_values=values,
        id_map=id_map,
    )


def write_values(g: Graph, path, values=None) -> None:
    """Write an "original_id value" line per vertex.

    ``values`` overrides the graph's stored values (used to report engine
    results); the INF sentinel prints symbolically.
    """
    vals = g.vertex_values if values is None else values
    from .values import is_inf

    with open(path, "w", encoding="utf-8") as fh:
        for v in range(g.num_vertices):
            orig = int(g.id_map[v]) if g.id_map is not None else v
            x = vals[v]
            x = int(x) if g.domain is Domain.INT else float(x)
            fh.write(f"{orig} {'INF' if is_inf(g.domain, x) else x}\n")
