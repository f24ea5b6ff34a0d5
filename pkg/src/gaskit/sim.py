"""Deterministic cycle-approximate executor and its functional oracle.

Execution is bulk-synchronous.  Each super-step streams the edges of the
active vertices through the pipeline: on a CSR graph the active vertex is
the message *source* (push), on a CSC graph it is the *destination*
pulling from its in-edges.  Messages are folded per destination with the
kernel's reduce expression in one canonical order (ascending destination,
then ascending edge id), apply runs once per message-receiving vertex,
and activations stage until the super-step boundary.  Reads during the
message phase therefore always observe the previous super-step's values.

The cycle model is a documented first-order approximation:

    cycles(iter) = ceil(edges / (P*K))            -- streaming throughput
                 + stage_count                     -- pipeline fill
                 + dram_latency * ceil(cold / burst_edges)

where a vertex-value read is cold when it misses an LRU cache of
``bram_capacity`` vertex ids (the modeled BRAM residency; reads are one
per active vertex plus one per streamed edge endpoint).  Transfer cycles
are per-command ceilings of bytes over PCIe bandwidth.  Parallelism is
modeled arithmetic, not host threads; identical inputs give bit-identical
reports.

K PEs own disjoint contiguous vertex ranges.  Under the uniform
throughput term above their assignment cannot change cycle counts, so a
partitioning is not an input here; it stays preprocessing metadata.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError, DomainMismatch
from .graph import Direction, Frontier, Graph
from .kernel.ast import KernelSpec
from .kernel.evaluator import compile_block, compile_expr
from .translate import PipelinePlan, default_iterations, emit_host_program
from .values import Domain

CONFIG_KEYS = (
    "pipelines",
    "pes",
    "clock_hz",
    "dram_latency",
    "burst_edges",
    "bram_capacity",
    "pcie_bytes_per_cycle",
    "max_iterations",
)


@dataclass
class SchedulerConfig:
    """Pipeline/PE counts and the memory-system parameters of the model."""

    pipelines: int = 8
    pes: int = 1
    clock_hz: int = 250_000_000
    dram_latency: int = 16
    burst_edges: int = 32
    bram_capacity: int = 8192
    pcie_bytes_per_cycle: int = 16
    max_iterations: Optional[int] = None

    def __post_init__(self):
        if self.pipelines < 1:
            raise ConfigError(f"pipelines must be >= 1, got {self.pipelines}")
        if self.pes < 1:
            raise ConfigError(f"pes must be >= 1, got {self.pes}")
        if self.clock_hz <= 0:
            raise ConfigError(f"clock_hz must be > 0, got {self.clock_hz}")
        if self.dram_latency < 0:
            raise ConfigError(f"dram_latency must be >= 0, got {self.dram_latency}")
        if self.burst_edges < 1:
            raise ConfigError(f"burst_edges must be >= 1, got {self.burst_edges}")
        if self.bram_capacity < 0:
            raise ConfigError(f"bram_capacity must be >= 0, got {self.bram_capacity}")
        if self.pcie_bytes_per_cycle < 1:
            raise ConfigError(
                f"pcie_bytes_per_cycle must be >= 1, got {self.pcie_bytes_per_cycle}"
            )
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be >= 1, got {self.max_iterations}")


def load_config(path) -> SchedulerConfig:
    """Read a plain "key=value" config file; unknown keys are rejected."""
    fields: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                fields[key] = int(value.strip())
            except ValueError:
                raise ConfigError(
                    f"{path}:{lineno}: {key} needs an integer, got {value.strip()!r}"
                ) from None
    return SchedulerConfig(**fields)


@dataclass(frozen=True)
class DeviceModel:
    identity: str
    pipelines: int
    pes: int
    clock_hz: int
    bram_bytes: int


def query_device(cfg: SchedulerConfig) -> DeviceModel:
    """Deterministic descriptor of the modeled device; never fails."""
    bram = 8 * cfg.bram_capacity
    return DeviceModel(
        identity=(
            f"gaskit-model pipelines={cfg.pipelines} pes={cfg.pes}"
            f" clock_hz={cfg.clock_hz} bram_bytes={bram}"
        ),
        pipelines=cfg.pipelines,
        pes=cfg.pes,
        clock_hz=cfg.clock_hz,
        bram_bytes=bram,
    )


def transport(program, cfg: SchedulerConfig) -> int:
    """Cycles to move every Transport/ReadBack payload over PCIe,
    each command rounded up to whole cycles."""
    bw = cfg.pcie_bytes_per_cycle
    total = 0
    for c in program.commands:
        nbytes = getattr(c, "nbytes", None)
        if nbytes is not None and c.op in ("transport", "read_back"):
            total += -(-nbytes // bw)
    return total


@dataclass(frozen=True)
class TraceRow:
    frontier_size: int
    edges_processed: int
    cycles: int


@dataclass(frozen=True)
class SimReport:
    traversed_edges: int
    iterations: int
    compute_cycles: int
    transfer_cycles: int
    total_cycles: int
    teps: float
    clock_hz: int
    iteration_cap_reached: bool
    trace: tuple[TraceRow, ...] = field(default=())


def compute_teps(report: SimReport) -> float:
    """Traversed edges divided by execution time; the one throughput path."""
    if report.total_cycles == 0:
        return 0.0
    return report.traversed_edges * report.clock_hz / report.total_cycles


def report_to_json(report: SimReport) -> str:
    payload = dataclasses.asdict(report)
    payload["trace"] = [dataclasses.asdict(r) for r in report.trace]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


class _Lru:
    """Fixed-capacity LRU over vertex ids; capacity 0 never holds anything."""

    __slots__ = ("cap", "entries")

    def __init__(self, cap: int):
        self.cap = cap
        self.entries: dict = {}

    def probe(self, key) -> bool:
        d = self.entries
        if key in d:
            del d[key]
            d[key] = None
            return True
        if self.cap > 0:
            if len(d) >= self.cap:
                del d[next(iter(d))]
            d[key] = None
        return False


def _setup(kernel: KernelSpec, g: Graph, init_params, activate):
    """Shared engine prologue: arrays, compiled sections, init execution."""
    n = g.num_vertices
    domain = kernel.domain
    n_scalar = n if domain is Domain.INT else float(n)
    outdegs = g.out_degrees().tolist()

    const_env = {"N": n_scalar}
    props: dict[str, list] = {}
    for pname, pexpr in kernel.props:
        fill = compile_expr(pexpr, domain)(const_env)
        props[pname] = [fill] * n

    recv_fn = compile_expr(kernel.receive.expr, domain, props, outdegs, n)
    red_fn = compile_expr(kernel.reduce.expr, domain, props, outdegs, n)
    apply_fn = compile_block(kernel.apply.body, domain, props, activate, outdegs, n)
    init_fn = compile_block(kernel.init.body, domain, props, activate, outdegs, n)

    params = init_params if init_params is not None else (kernel.init_args or {})
    pname = kernel.init.param
    root = params.get(pname, params.get("root"))
    if root is not None:
        root = int(root)
        if not 0 <= root < n:
            raise IndexError(f"root {root} out of range 0..{n - 1}")
        init_fn({pname: root})
    else:
        # no root binding: the init block runs once per vertex, which is
        # how whole-graph kernels (pagerank) seed full activation
        env = {}
        for v in range(n):
            env[pname] = v
            init_fn(env)
    return props, recv_fn, red_fn, apply_fn, outdegs


def _final_array(kernel: KernelSpec, props: dict, n: int) -> np.ndarray:
    first = kernel.props[0][0] if kernel.props else None
    dtype = np.int64 if kernel.domain is Domain.INT else np.float64
    if first is None:
        return np.zeros(n, dtype=dtype)
    return np.asarray(props[first], dtype=dtype)


def run(
    plan: PipelinePlan,
    g: Graph,
    cfg: SchedulerConfig,
    init_params: Optional[dict] = None,
) -> tuple[np.ndarray, SimReport]:
    """Execute a plan over a graph under the cycle model.

    Returns the final values of the kernel's first property and the
    report.  Hitting the iteration cap is success-with-flag: values are
    whatever the last completed super-step left.  The input graph is
    never mutated.
    """
    kernel = plan.kernel
    if kernel.domain is not g.domain:
        raise DomainMismatch(
            f"plan domain {kernel.domain.value} != graph domain {g.domain.value}"
        )
    n = g.num_vertices
    frontier = Frontier(n)
    props, recv_fn, red_fn, apply_fn, _ = _setup(kernel, g, init_params, frontier.activate)
    frontier.swap()

    offs = g.edge_offset.tolist()
    targets = g.edge_targets.tolist()
    weights = g.edge_weights.tolist()
    push = g.direction is Direction.CSR
    p_src, p_w, p_dst = kernel.receive.params
    r_a, r_b = kernel.reduce.params
    a_v, a_m = kernel.apply.params

    max_iter = cfg.max_iterations or default_iterations(kernel, n)
    lanes = cfg.pipelines * cfg.pes
    depth = len(plan.stages)
    dram = cfg.dram_latency
    burst = cfg.burst_edges
    lru = _Lru(cfg.bram_capacity)

    iterations = 0
    traversed = 0
    compute_cycles = 0
    trace: list[TraceRow] = []
    env: dict = {}

    while len(frontier) and iterations < max_iter:
        iterations += 1
        frontier_size = len(frontier)
        active = []
        while True:
            v = frontier.get_active_vertex()
            if v is None:
                break
            active.append(v)

        edges_iter = 0
        cold = 0
        if push:
            inbox: dict[int, list] = {}
            for a in active:
                if not lru.probe(a):
                    cold += 1
                begin, end = offs[a], offs[a + 1]
                env[p_src] = a
                for e in range(begin, end):
                    t = targets[e]
                    if not lru.probe(t):
                        cold += 1
                    env[p_w] = weights[e]
                    env[p_dst] = t
                    m = recv_fn(env)
                    box = inbox.get(t)
                    if box is None:
                        inbox[t] = [(e, m)]
                    else:
                        box.append((e, m))
                edges_iter += end - begin
            for dst in sorted(inbox):
                msgs = inbox[dst]
                msgs.sort()
                acc = msgs[0][1]
                for i in range(1, len(msgs)):
                    env[r_a] = acc
                    env[r_b] = msgs[i][1]
                    acc = red_fn(env)
                env[a_v] = dst
                env[a_m] = acc
                apply_fn(env)
        else:
            folded: list = []
            for a in sorted(active):
                if not lru.probe(a):
                    cold += 1
                begin, end = offs[a], offs[a + 1]
                env[p_dst] = a
                acc = None
                got = False
                for e in range(begin, end):
                    s = targets[e]
                    if not lru.probe(s):
                        cold += 1
                    env[p_src] = s
                    env[p_w] = weights[e]
                    m = recv_fn(env)
                    if got:
                        env[r_a] = acc
                        env[r_b] = m
                        acc = red_fn(env)
                    else:
                        acc = m
                        got = True
                edges_iter += end - begin
                if got:
                    folded.append((a, acc))
            for dst, acc in folded:
                env[a_v] = dst
                env[a_m] = acc
                apply_fn(env)

        traversed += edges_iter
        cycles = -(-edges_iter // lanes) + depth + dram * (-(-cold // burst))
        compute_cycles += cycles
        trace.append(TraceRow(frontier_size, edges_iter, cycles))
        frontier.swap()

    capped = len(frontier) > 0
    program = emit_host_program(plan, g, max_iter)
    transfer_cycles = transport(program, cfg)
    total = compute_cycles + transfer_cycles
    report = SimReport(
        traversed_edges=traversed,
        iterations=iterations,
        compute_cycles=compute_cycles,
        transfer_cycles=transfer_cycles,
        total_cycles=total,
        teps=0.0,
        clock_hz=cfg.clock_hz,
        iteration_cap_reached=capped,
        trace=tuple(trace),
    )
    report = dataclasses.replace(report, teps=compute_teps(report))
    return _final_array(kernel, props, n), report


def functional_execute(
    kernel: KernelSpec,
    g: Graph,
    init_params: Optional[dict] = None,
    max_iterations: Optional[int] = None,
) -> np.ndarray:
    """Scheduler-free bulk-synchronous evaluation.

    Same visible semantics and canonical fold order as ``run`` but written
    as a plain super-step loop with its own frontier bookkeeping and no
    cycle accounting; ``run`` is checked against it.
    """
    n = g.num_vertices
    staged: dict[int, None] = {}
    props, recv_fn, red_fn, apply_fn, _ = _setup(
        kernel, g, init_params, lambda v: staged.setdefault(v)
    )
    offs = g.edge_offset.tolist()
    targets = g.edge_targets.tolist()
    weights = g.edge_weights.tolist()
    push = g.direction is Direction.CSR
    p_src, p_w, p_dst = kernel.receive.params
    r_a, r_b = kernel.reduce.params
    a_v, a_m = kernel.apply.params
    cap = max_iterations or default_iterations(kernel, n)

    current = list(staged)
    staged.clear()
    iterations = 0
    env: dict = {}
    while current and iterations < cap:
        iterations += 1
        inbox: dict[int, list] = {}
        for a in current:
            for e in range(offs[a], offs[a + 1]):
                t = targets[e]
                src, dst = (a, t) if push else (t, a)
                env[p_src] = src
                env[p_w] = weights[e]
                env[p_dst] = dst
                m = recv_fn(env)
                inbox.setdefault(dst, []).append((e, m))
        for dst in sorted(inbox):
            msgs = sorted(inbox[dst])
            acc = msgs[0][1]
            for _, m in msgs[1:]:
                env[r_a] = acc
                env[r_b] = m
                acc = red_fn(env)
            env[a_v] = dst
            env[a_m] = acc
            apply_fn(env)
        current = list(staged)
        staged.clear()
    return _final_array(kernel, props, n)
