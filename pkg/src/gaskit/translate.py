"""Kernel -> pipeline-stage plan, host program, resource estimate, HDL sketch.

Translation is deliberately not a compiler: the stage vocabulary is a
fixed nine-slot pipeline mirroring the accelerator module decomposition,
and a kernel selects the minimal dependency-closed subset.  Everything
here is a pure function of its inputs; identical inputs give byte-identical
serializations and fingerprints.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError
from .graph import Graph
from .kernel import ast, parse_kernel
from .kernel.ast import KernelSpec, count_block_nodes, count_nodes
from .kernel.printer import format_block, format_expr, pretty_print
from .values import Domain

STAGES = (
    "LoadFrontier",
    "ReadVertex",
    "FetchOffsets",
    "StreamEdges",
    "Receive",
    "Reduce",
    "Apply",
    "WriteBack",
    "UpdateFrontier",
)

# fixed dependency relation: stage -> stages it cannot run without
PREREQ = {
    "LoadFrontier": (),
    "ReadVertex": ("LoadFrontier",),
    "FetchOffsets": ("ReadVertex",),
    "StreamEdges": ("FetchOffsets",),
    "Receive": ("StreamEdges",),
    "Reduce": ("Receive",),
    "Apply": ("Reduce",),
    "WriteBack": ("Apply",),
    "UpdateFrontier": ("Apply",),
}

# resource heuristic constants (documented proxies, all monotone)
REG_PER_STAGE = 64
REG_PER_EXPR_NODE = 32
LUT_PER_EXPR_NODE = 16
BRAM_BYTES_PER_VALUE = 8


def _block_writes_props(body) -> bool:
    for s in body:
        if isinstance(s, ast.Assign) and s.index is not None:
            return True
        if isinstance(s, ast.If) and _block_writes_props(s.body):
            return True
    return False


def seed_stages(kernel: KernelSpec) -> frozenset:
    """Stages the kernel's sections directly demand."""
    seeds = {"Receive", "Reduce", "Apply", "UpdateFrontier"}
    if _block_writes_props(kernel.apply.body):
        seeds.add("WriteBack")
    return frozenset(seeds)


def required_stages(kernel: KernelSpec) -> tuple[str, ...]:
    """Dependency closure of the seeds, in pipeline order."""
    needed = set(seed_stages(kernel))
    changed = True
    while changed:
        changed = False
        for s in tuple(needed):
            for p in PREREQ[s]:
                if p not in needed:
                    needed.add(p)
                    changed = True
    return tuple(s for s in STAGES if s in needed)


def check_dependency_closure(stages, kernel: KernelSpec) -> bool:
    """True iff the stage list is dependency-closed, seeded, and ordered."""
    present = set(stages)
    if not seed_stages(kernel) <= present:
        return False
    for s in stages:
        if any(p not in present for p in PREREQ[s]):
            return False
    order = [STAGES.index(s) for s in stages]
    return order == sorted(order) and len(present) == len(list(stages))


def expr_node_count(kernel: KernelSpec) -> int:
    return (
        count_nodes(kernel.receive.expr)
        + count_nodes(kernel.reduce.expr)
        + count_block_nodes(kernel.apply.body)
    )


@dataclass(frozen=True)
class PipelinePlan:
    kernel: KernelSpec
    stages: tuple[str, ...]
    pipelines: int
    pes: int
    bram_capacity: int
    fingerprint: str

    @property
    def domain(self) -> Domain:
        return self.kernel.domain

    @property
    def exprs(self) -> dict:
        return {
            "receive": format_expr(self.kernel.receive.expr),
            "reduce": format_expr(self.kernel.reduce.expr),
            "apply": format_block(self.kernel.apply.body),
        }


def _plan_payload(kernel, stages, pipelines, pes, bram_capacity) -> dict:
    plan_view = PipelinePlan(kernel, stages, pipelines, pes, bram_capacity, "")
    return {
        "name": kernel.name,
        "domain": kernel.domain.value,
        "stages": list(stages),
        "exprs": plan_view.exprs,
        "pipelines": pipelines,
        "pes": pes,
        "bram_capacity": bram_capacity,
        "kernel": pretty_print(kernel),
        "init_args": kernel.init_args,
        "max_iterations": kernel.default_max_iterations,
    }


def _fingerprint(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def translate(kernel: KernelSpec, cfg) -> PipelinePlan:
    """Map a validated kernel onto the accelerator stage pipeline."""
    pipelines = int(cfg.pipelines)
    pes = int(cfg.pes)
    bram_capacity = int(cfg.bram_capacity)
    if pipelines < 1:
        raise ConfigError(f"pipelines must be >= 1, got {pipelines}")
    if pes < 1:
        raise ConfigError(f"pes must be >= 1, got {pes}")
    if bram_capacity < 0:
        raise ConfigError(f"bram_capacity must be >= 0, got {bram_capacity}")
    stages = required_stages(kernel)
    payload = _plan_payload(kernel, stages, pipelines, pes, bram_capacity)
    return PipelinePlan(
        kernel=kernel,
        stages=stages,
        pipelines=pipelines,
        pes=pes,
        bram_capacity=bram_capacity,
        fingerprint=_fingerprint(payload),
    )


def plan_to_json(plan: PipelinePlan) -> str:
    payload = _plan_payload(
        plan.kernel, plan.stages, plan.pipelines, plan.pes, plan.bram_capacity
    )
    payload["fingerprint"] = plan.fingerprint
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def plan_from_json(text: str) -> PipelinePlan:
    """Reload a serialized plan, refusing anything whose fingerprint
    does not match a fresh translation of the embedded kernel."""
    payload = json.loads(text)
    kernel = parse_kernel(payload["kernel"])
    import dataclasses

    kernel = dataclasses.replace(
        kernel,
        init_args=payload.get("init_args"),
        default_max_iterations=payload.get("max_iterations"),
    )
    stages = tuple(payload["stages"])
    rebuilt = _plan_payload(
        kernel, stages, payload["pipelines"], payload["pes"], payload["bram_capacity"]
    )
    if _fingerprint(rebuilt) != payload.get("fingerprint"):
        raise ConfigError("plan fingerprint mismatch; file edited or corrupt")
    return PipelinePlan(
        kernel=kernel,
        stages=stages,
        pipelines=payload["pipelines"],
        pes=payload["pes"],
        bram_capacity=payload["bram_capacity"],
        fingerprint=payload["fingerprint"],
    )


# ---- host program ---------------------------------------------------------


@dataclass(frozen=True)
class QueryDevice:
    op: str = "query_device"


@dataclass(frozen=True)
class Transport:
    direction: str  # h2d | d2h
    payload: str  # topology | values
    nbytes: int
    op: str = "transport"


@dataclass(frozen=True)
class Launch:
    iterations: int
    op: str = "launch"


@dataclass(frozen=True)
class ReadBack:
    payload: str
    nbytes: int
    op: str = "read_back"


@dataclass(frozen=True)
class HostProgram:
    commands: tuple


def default_iterations(kernel: KernelSpec, num_vertices: int) -> int:
    """Iteration cap when the configuration leaves it unset: ten sweeps
    of the vertex set for int kernels, the kernel's own declared cap
    (pagerank's max_iter) for float kernels."""
    if kernel.default_max_iterations is not None:
        return kernel.default_max_iterations
    return 10 * max(num_vertices, 1)


def topology_bytes(g: Graph) -> int:
    return 8 * ((g.num_vertices + 1) + g.num_edges + g.num_edges)


def values_bytes(g: Graph) -> int:
    return 8 * g.num_vertices


def emit_host_program(
    plan: PipelinePlan, g: Graph, max_iterations: Optional[int] = None
) -> HostProgram:
    """Host-side command list: query, ship topology and values, launch,
    read the values back.  Byte counts are exact array sizes."""
    iters = max_iterations or default_iterations(plan.kernel, g.num_vertices)
    return HostProgram(
        commands=(
            QueryDevice(),
            Transport("h2d", "topology", topology_bytes(g)),
            Transport("h2d", "values", values_bytes(g)),
            Launch(iters),
            ReadBack("values", values_bytes(g)),
        )
    )


def validate_host_program(program: HostProgram) -> None:
    cmds = program.commands
    if not cmds or not isinstance(cmds[0], QueryDevice):
        raise ConfigError("host program must start with QueryDevice")
    if not isinstance(cmds[-1], ReadBack):
        raise ConfigError("host program must end with ReadBack")
    shipped = set()
    for c in cmds:
        if isinstance(c, Transport) and c.direction == "h2d":
            shipped.add(c.payload)
        if isinstance(c, Launch) and not {"topology", "values"} <= shipped:
            raise ConfigError("Launch before topology+values transport")


# ---- resource estimate ------------------------------------------------------


@dataclass(frozen=True)
class ResourceEstimate:
    registers: int
    lut_equivalents: int
    bram_bytes: int


def estimate_resources(
    plan: PipelinePlan, num_vertices: Optional[int] = None
) -> ResourceEstimate:
    """First-order resource proxy.

    Register and LUT terms replicate per lane (pipelines x PEs), so the
    estimate is strictly monotone in P and K and doubling either at least
    doubles it; BRAM covers the cached value working set.
    """
    lanes = plan.pipelines * plan.pes
    nodes = expr_node_count(plan.kernel)
    registers = (REG_PER_STAGE * len(plan.stages) + REG_PER_EXPR_NODE * nodes) * lanes
    lut = LUT_PER_EXPR_NODE * nodes * lanes
    cached = plan.bram_capacity if num_vertices is None else min(num_vertices, plan.bram_capacity)
    return ResourceEstimate(
        registers=registers,
        lut_equivalents=lut,
        bram_bytes=BRAM_BYTES_PER_VALUE * cached,
    )


# ---- HDL sketch -------------------------------------------------------------

_STAGE_EXPR_COMMENT = {
    "Receive": "receive",
    "Reduce": "reduce",
}


def emit_hdl_sketch(plan: PipelinePlan) -> str:
    """Deterministic module-per-stage text.

    Representational only: the sketch shows the stage wiring and the
    expressions each compute stage carries, and is not synthesizable.
    """
    k = plan.kernel
    exprs = plan.exprs
    lines = [
        f"// {k.name}: pipeline stage sketch (representational, not synthesizable)",
        f"// stages={len(plan.stages)} pipelines={plan.pipelines} pes={plan.pes}"
        f" domain={k.domain.value}",
        f"// fingerprint={plan.fingerprint}",
        "",
    ]
    prev = None
    for stage in plan.stages:
        lines.append(f"module {stage} #(")
        lines.append(f"    parameter LANES = {plan.pipelines * plan.pes}")
        lines.append(") (")
        lines.append("    input  wire clk,")
        lines.append("    input  wire rst,")
        if prev is not None:
            lines.append(f"    input  wire [63:0] {prev.lower()}_data,")
        lines.append(f"    output wire [63:0] {stage.lower()}_data")
        lines.append(");")
        if stage in _STAGE_EXPR_COMMENT:
            lines.append(f"    // computes: {exprs[_STAGE_EXPR_COMMENT[stage]]}")
        elif stage == "Apply":
            for ln in exprs["apply"].splitlines():
                lines.append(f"    // {ln}")
        lines.append("endmodule")
        lines.append("")
        prev = stage
    return "\n".join(lines)
