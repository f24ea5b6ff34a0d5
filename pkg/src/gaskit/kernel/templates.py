"""Algorithm-layer kernel library: bfs, sssp, pagerank.

Each template is ordinary kernel source.  bfs/sssp take a ``root``
parameter, recorded on the spec as a run-time init binding; pagerank
substitutes damping and epsilon into the source text and carries its
iteration cap as the engine's default.
"""

from __future__ import annotations

import dataclasses

from ..errors import MissingParam, UnknownAlgorithm
from .ast import KernelSpec
from .parser import parse_kernel

BFS_SOURCE = """\
kernel bfs {
  domain int;
  prop dist = INF;
  init(root) {
    dist[root] = 0;
    activate(root);
  }
  receive(u, w, v) -> m {
    m = dist[u] + 1;
  }
  reduce(a, b) -> r {
    r = min(a, b);
  }
  apply(v, m) {
    if m < dist[v] {
      dist[v] = m;
      activate(v);
    }
  }
}
"""

SSSP_SOURCE = """\
kernel sssp {
  domain int;
  prop dist = INF;
  init(root) {
    dist[root] = 0;
    activate(root);
  }
  receive(u, w, v) -> m {
    m = dist[u] + w;
  }
  reduce(a, b) -> r {
    r = min(a, b);
  }
  apply(v, m) {
    if m < dist[v] {
      dist[v] = m;
      activate(v);
    }
  }
}
"""

# pull-style: run this one on a CSC layout so every vertex gathers the
# full rank sum of its in-neighbors each super-step
PAGERANK_SOURCE = """\
kernel pagerank {{
  domain float;
  prop rank = 1.0 / N;
  init(v) {{
    activate(v);
  }}
  receive(u, w, v) -> m {{
    m = rank[u] / outdeg(u);
  }}
  reduce(a, b) -> r {{
    r = a + b;
  }}
  apply(v, m) {{
    next = (1.0 - {d}) / N + {d} * m;
    if max(next - rank[v], rank[v] - next) >= {eps} {{
      activate(v);
    }}
    rank[v] = next;
  }}
}}
"""

PAGERANK_DAMPING = 0.85
PAGERANK_EPSILON = 1e-12
PAGERANK_MAX_ITER = 200

ALGORITHMS = ("bfs", "sssp", "pagerank")


def _take(params: dict, *names):
    for n in names:
        if n in params:
            return params.pop(n)
    return None


def template(algorithm: str, params: dict | None = None, **kwargs) -> KernelSpec:
    """Instantiate a library kernel with parameters filled in."""
    merged = dict(params or {})
    merged.update(kwargs)

    if algorithm in ("bfs", "sssp"):
        root = _take(merged, "root")
        if root is None:
            raise MissingParam(f"{algorithm} needs a root vertex")
        if merged:
            raise ValueError(f"unexpected parameters for {algorithm}: {sorted(merged)}")
        src = BFS_SOURCE if algorithm == "bfs" else SSSP_SOURCE
        spec = parse_kernel(src)
        return dataclasses.replace(spec, init_args={"root": int(root)})

    if algorithm == "pagerank":
        d = _take(merged, "damping", "d")
        eps = _take(merged, "epsilon", "eps")
        max_iter = _take(merged, "max_iter")
        if merged:
            raise ValueError(f"unexpected parameters for pagerank: {sorted(merged)}")
        d = PAGERANK_DAMPING if d is None else float(d)
        eps = PAGERANK_EPSILON if eps is None else float(eps)
        max_iter = PAGERANK_MAX_ITER if max_iter is None else int(max_iter)
        if not 0.0 < d < 1.0:
            raise MissingParam(f"damping must be in (0, 1), got {d}")
        if max_iter < 1:
            raise MissingParam(f"max_iter must be >= 1, got {max_iter}")
        src = PAGERANK_SOURCE.format(d=repr(d), eps=repr(eps))
        spec = parse_kernel(src)
        return dataclasses.replace(spec, init_args={}, default_max_iterations=max_iter)

    raise UnknownAlgorithm(f"no template named {algorithm!r}; have {ALGORITHMS}")
