"""Compressed-adjacency graph container and active-vertex frontier.

The graph is the classic three-array layout: a vertex-value array indexed
by vertex id, an offset array of length num_vertices+1, and packed arrays
of neighbor ids and edge weights.  ``direction`` says what an offset
window means: CSR windows hold a vertex's out-edges, CSC windows hold its
in-edges.  Topology (offsets / targets / weights) is immutable after
construction; only vertex values and the frontier mutate, and those are
only ever touched by a single engine thread.

Iteration semantics are bulk-synchronous.  ``set_vertex_value`` writes
the live array immediately, but the value a *neighbor* observes is the
committed snapshot, which advances only at ``commit_superstep``.
``update_vertex`` is the Algorithm-style helper that stages a vertex for
the next super-step when (and only when) its live value has drifted from
the committed one.
"""

from __future__ import annotations

import enum
from collections import deque
from typing import Optional

import numpy as np

from .errors import DirectionError
from .values import Domain, check_value, inf_value


class Direction(enum.Enum):
    CSR = "csr"  # offset windows enumerate out-edges
    CSC = "csc"  # offset windows enumerate in-edges

    @classmethod
    def from_tag(cls, tag: str) -> "Direction":
        for d in cls:
            if d.value == tag:
                return d
        raise ValueError(f"unknown layout direction {tag!r}")


class Frontier:
    """Active-vertex set with FIFO pop order and a staging set.

    The current iteration's active vertices live in a queue (popped in
    activation order); ``activate`` only ever touches the *staging* set,
    which becomes the queue at ``swap``.  Staged activations are invisible
    until then, and activating a vertex twice stages it once.
    """

    def __init__(self, num_vertices: int):
        self.num_vertices = num_vertices
        self._active = bytearray(num_vertices)
        self._queue: deque[int] = deque()
        self._staged: dict[int, None] = {}

    def activate(self, v: int) -> None:
        """Stage v for the next iteration (set semantics)."""
        if not 0 <= v < self.num_vertices:
            raise IndexError(f"vertex {v} out of range 0..{self.num_vertices - 1}")
        self._staged.setdefault(v)

    def get_active_vertex(self) -> Optional[int]:
        """Pop the next active vertex in FIFO order; None when drained."""
        if not self._queue:
            return None
        v = self._queue.popleft()
        self._active[v] = 0
        return v

    def swap(self) -> None:
        """Promote staged activations to the active queue.

        Any vertices still unpopped from the current queue are dropped;
        the queue always mirrors the staged order exactly.
        """
        for v in self._queue:
            self._active[v] = 0
        self._queue = deque(self._staged)
        for v in self._queue:
            self._active[v] = 1
        self._staged.clear()

    def is_active(self, v: int) -> bool:
        return bool(self._active[v])

    def active_ids(self) -> list[int]:
        """Snapshot of the current queue without consuming it."""
        return list(self._queue)

    def staged_ids(self) -> list[int]:
        return list(self._staged)

    def __len__(self) -> int:
        return len(self._queue)

    def __repr__(self) -> str:
        return f"Frontier(active={len(self._queue)}, staged={len(self._staged)})"


class Graph:
    """Three-array compressed graph with one scalar value per vertex."""

    def __init__(
        self,
        num_vertices: int,
        edge_offset,
        edge_targets,
        edge_weights,
        domain: Domain = Domain.INT,
        direction: Direction = Direction.CSR,
        vertex_values=None,
        id_map=None,
    ):
        self.num_vertices = int(num_vertices)
        self.domain = domain
        self.direction = direction
        self.edge_offset = np.asarray(edge_offset, dtype=np.int64)
        self.edge_targets = np.asarray(edge_targets, dtype=np.int64)
        wdtype = np.int64 if domain is Domain.INT else np.float64
        self.edge_weights = np.asarray(edge_weights, dtype=wdtype)
        self.num_edges = int(self.edge_targets.shape[0])
        if vertex_values is None:
            vdtype = np.int64 if domain is Domain.INT else np.float64
            self.vertex_values = np.full(self.num_vertices, inf_value(domain), dtype=vdtype)
        else:
            vdtype = np.int64 if domain is Domain.INT else np.float64
            self.vertex_values = np.asarray(vertex_values, dtype=vdtype).copy()
        # id_map[dense] = original id from the input file, when preprocessing
        # compacted a gappy id space; None means dense ids are original ids.
        self.id_map = None if id_map is None else np.asarray(id_map, dtype=np.int64)
        self._committed = self.vertex_values.copy()
        self._dirty: set[int] = set()
        self.frontier = Frontier(self.num_vertices)
        self._validate()

    # ---- integrity ---------------------------------------------------

    def _validate(self) -> None:
        n, m = self.num_vertices, self.num_edges
        off = self.edge_offset
        if off.shape[0] != n + 1:
            raise ValueError(f"edge_offset length {off.shape[0]} != num_vertices+1 ={n + 1}")
        if n >= 0 and (off[0] != 0 or off[n] != m):
            raise ValueError("edge_offset sentinels must be 0 and num_edges")
        if np.any(np.diff(off) < 0):
            raise ValueError("edge_offset must be non-decreasing")
        if m and (self.edge_targets.min() < 0 or self.edge_targets.max() >= n):
            raise ValueError("edge target out of range")
        if self.edge_weights.shape[0] != m:
            raise ValueError("edge_weights length != num_edges")
        if self.vertex_values.shape[0] != n:
            raise ValueError("vertex_values length != num_vertices")
        if self.id_map is not None and self.id_map.shape[0] != n:
            raise ValueError("id_map length != num_vertices")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.num_vertices:
            raise IndexError(f"vertex {v} out of range 0..{self.num_vertices - 1}")

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < self.num_edges:
            raise IndexError(f"edge {e} out of range 0..{self.num_edges - 1}")

    # ---- vertex values ------------------------------------------------

    def get_vertex(self, v: int):
        """Current (live) value of v."""
        self._check_vertex(v)
        x = self.vertex_values[v]
        return int(x) if self.domain is Domain.INT else float(x)

    def get_vertex_committed(self, v: int):
        """Value of v as of the last super-step boundary — what a
        neighbor observes while the current super-step is in flight."""
        self._check_vertex(v)
        x = self._committed[v]
        return int(x) if self.domain is Domain.INT else float(x)

    def set_vertex_value(self, v: int, val) -> None:
        self._check_vertex(v)
        val = check_value(self.domain, val)
        self.vertex_values[v] = val
        self._dirty.add(v)

    def update_vertex(self, v: int) -> None:
        """Stage v's activation if its value changed this super-step.

        No-op when the live value still equals the committed one, so
        calling it on an untouched vertex changes nothing, and repeated
        calls stage a single activation.
        """
        self._check_vertex(v)
        if self.vertex_values[v] != self._committed[v]:
            self.frontier.activate(v)

    def commit_superstep(self) -> None:
        """Super-step boundary: publish written values and swap the frontier."""
        if self._dirty:
            idx = list(self._dirty)
            self._committed[idx] = self.vertex_values[idx]
            self._dirty.clear()
        self.frontier.swap()

    # ---- topology ------------------------------------------------------

    def get_edge_offset(self, v: int) -> tuple[int, int]:
        """(begin, end) window of v's edges in the packed arrays."""
        self._check_vertex(v)
        return int(self.edge_offset[v]), int(self.edge_offset[v + 1])

    def get_edge(self, off: int) -> tuple[int, object]:
        """(target vertex, weight) stored at packed offset ``off``."""
        self._check_edge(off)
        w = self.edge_weights[off]
        return int(self.edge_targets[off]), (int(w) if self.domain is Domain.INT else float(w))

    def get_edge_weight(self, e: int):
        self._check_edge(e)
        w = self.edge_weights[e]
        return int(w) if self.domain is Domain.INT else float(w)

    def get_out_edges_list(self, v: int) -> list[tuple[int, object]]:
        """[(edge id, weight)] for v's out-edges, in offset order."""
        if self.direction is not Direction.CSR:
            raise DirectionError("out-edges need a CSR graph")
        begin, end = self.get_edge_offset(v)
        return [(e, self.get_edge_weight(e)) for e in range(begin, end)]

    def get_in_edges_list(self, v: int) -> list[tuple[int, object]]:
        """[(edge id, weight)] for v's in-edges, in offset order."""
        if self.direction is not Direction.CSC:
            raise DirectionError("in-edges need a CSC graph")
        begin, end = self.get_edge_offset(v)
        return [(e, self.get_edge_weight(e)) for e in range(begin, end)]

    def get_dest_v_list(self, v: int) -> list[int]:
        """Out-neighbor ids of v in offset order (duplicates preserved)."""
        if self.direction is not Direction.CSR:
            raise DirectionError("out-neighbors need a CSR graph")
        begin, end = self.get_edge_offset(v)
        return [int(t) for t in self.edge_targets[begin:end]]

    def get_src_v_list(self, v: int) -> list[int]:
        """In-neighbor ids of v in offset order (duplicates preserved)."""
        if self.direction is not Direction.CSC:
            raise DirectionError("in-neighbors need a CSC graph")
        begin, end = self.get_edge_offset(v)
        return [int(t) for t in self.edge_targets[begin:end]]

    def _window_owner(self, e: int) -> int:
        # the vertex whose offset window contains e, by binary search
        return int(np.searchsorted(self.edge_offset, e, side="right")) - 1

    def get_src_v_id(self, e: int) -> int:
        """Source vertex of edge e."""
        self._check_edge(e)
        if self.direction is Direction.CSR:
            return self._window_owner(e)
        return int(self.edge_targets[e])

    def get_dest_v_id(self, e: int) -> int:
        """Destination vertex of edge e."""
        self._check_edge(e)
        if self.direction is Direction.CSR:
            return int(self.edge_targets[e])
        return self._window_owner(e)

    # ---- plumbing -------------------------------------------------------

    def out_degrees(self) -> np.ndarray:
        """Out-degree per vertex, whichever layout is stored."""
        if self.direction is Direction.CSR:
            return np.diff(self.edge_offset)
        return np.bincount(self.edge_targets, minlength=self.num_vertices).astype(np.int64)

    def copy(self) -> "Graph":
        """Fresh values/frontier over the same (shared) topology arrays."""
        g = Graph.__new__(Graph)
        g.num_vertices = self.num_vertices
        g.num_edges = self.num_edges
        g.domain = self.domain
        g.direction = self.direction
        g.edge_offset = self.edge_offset
        g.edge_targets = self.edge_targets
        g.edge_weights = self.edge_weights
        g.vertex_values = self.vertex_values.copy()
        g.id_map = self.id_map
        g._committed = self.vertex_values.copy()
        g._dirty = set()
        g.frontier = Frontier(self.num_vertices)
        return g

    def reset_values(self, fill) -> None:
        fill = check_value(self.domain, fill)
        self.vertex_values[:] = fill
        self._committed[:] = fill
        self._dirty.clear()

    def __repr__(self) -> str:
        return (
            f"Graph(n={self.num_vertices}, m={self.num_edges}, "
            f"{self.direction.value}, {self.domain.value})"
        )


def edge_triples(g: Graph) -> list[tuple[int, int, object]]:
    """Extract the (src, dst, weight) list in edge-id order.

    The inverse of layout construction; used by layout conversion and by
    every multiset-equality check.
    """
    out = []
    to_scalar = int if g.domain is Domain.INT else float
    for v in range(g.num_vertices):
        begin, end = int(g.edge_offset[v]), int(g.edge_offset[v + 1])
        for e in range(begin, end):
            t = int(g.edge_targets[e])
            w = to_scalar(g.edge_weights[e])
            if g.direction is Direction.CSR:
                out.append((v, t, w))
            else:
                out.append((t, v, w))
    return out
