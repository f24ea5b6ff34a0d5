"""Batch CLI: preprocess -> compile -> run -> bench.

Every subcommand writes its artifacts as files under --out and prints a
single summary line; exit codes are 0 success, 2 parse/validation,
3 domain/config, 4 I/O.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .errors import (
    ConfigError,
    DirectionError,
    DivisionByZero,
    DomainError,
    DomainMismatch,
    GasKitError,
    InvalidK,
    KernelSyntaxError,
    KernelValidationError,
    MissingParam,
    ParseError,
    UnknownAlgorithm,
)
from .graph import Direction, Graph
from .kernel import parse_kernel, template
from .kernel.ast import KernelSpec
from .preprocess import (
    convert_graph,
    layout_convert,
    partition,
    read_edge_list,
    read_graph,
    reorder,
    write_graph,
    write_values,
)
from .sim import SchedulerConfig, compute_teps, load_config, report_to_json, run
from .translate import emit_hdl_sketch, emit_host_program, estimate_resources, plan_to_json, translate
from .values import Domain

_PARSE_ERRORS = (ParseError, KernelSyntaxError, KernelValidationError)
_DOMAIN_ERRORS = (
    ConfigError,
    DirectionError,
    DivisionByZero,
    DomainError,
    DomainMismatch,
    InvalidK,
    MissingParam,
    UnknownAlgorithm,
    IndexError,
)


@dataclass
class RunManifest:
    """Resolved inputs of a run/bench invocation."""

    input: str
    out: str
    kernel_path: Optional[str] = None
    template_name: Optional[str] = None
    root: Optional[int] = None
    config_path: Optional[str] = None

    def __post_init__(self):
        if (self.kernel_path is None) == (self.template_name is None):
            raise ConfigError("exactly one of --kernel / --template is required")
        for path in (self.input, self.kernel_path, self.config_path):
            if path is not None and not os.path.exists(path):
                raise OSError(f"no such file: {path}")

    def load_kernel(self) -> KernelSpec:
        if self.kernel_path is not None:
            with open(self.kernel_path, "r", encoding="utf-8") as fh:
                return parse_kernel(fh.read())
        params = {} if self.root is None else {"root": self.root}
        return template(self.template_name, params)

    def load_config(self) -> SchedulerConfig:
        return SchedulerConfig() if self.config_path is None else load_config(self.config_path)

    def init_params(self) -> Optional[dict]:
        return None if self.root is None else {"root": self.root}


def _outdir(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def cmd_preprocess(args) -> int:
    out = _outdir(args)
    domain = Domain.from_tag(args.domain)
    el = read_edge_list(args.input, domain)
    g = layout_convert(el, Direction.CSR)
    if args.reorder:
        g, perm = reorder(g, args.reorder)
        with open(os.path.join(out, "permutation.txt"), "w", encoding="utf-8") as fh:
            for old, new in enumerate(perm.forward.tolist()):
                fh.write(f"{old} {new}\n")
    if args.partition_k:
        parts = partition(g, args.partition_k, args.partition_strategy)
        with open(os.path.join(out, "partition.txt"), "w", encoding="utf-8") as fh:
            for v, p in enumerate(parts.part_of.tolist()):
                fh.write(f"{v} {p}\n")
    if args.layout == "csc":
        g = convert_graph(g, Direction.CSC)
    path = os.path.join(out, "graph.jgr")
    write_graph(g, path)
    print(f"preprocess: {g.num_vertices:,} vertices, {g.num_edges:,} edges -> {path}")
    return 0


def _host_program_json(program) -> str:
    rows = [dataclasses.asdict(c) for c in program.commands]
    return json.dumps(rows, sort_keys=True, indent=2) + "\n"


def cmd_compile(args) -> int:
    out = _outdir(args)
    if (args.kernel is None) == (args.template is None):
        raise ConfigError("exactly one of --kernel / --template is required")
    if args.kernel is not None:
        with open(args.kernel, "r", encoding="utf-8") as fh:
            kernel = parse_kernel(fh.read())
    else:
        params = {} if args.root is None else {"root": args.root}
        kernel = template(args.template, params)
    cfg = SchedulerConfig() if args.config is None else load_config(args.config)
    plan = translate(kernel, cfg)

    plan_path = os.path.join(out, "plan.json")
    with open(plan_path, "w", encoding="utf-8") as fh:
        fh.write(plan_to_json(plan))
    sketch_path = os.path.join(out, "hdl_sketch.v")
    with open(sketch_path, "w", encoding="utf-8") as fh:
        fh.write(emit_hdl_sketch(plan))
    if args.input is not None:
        g = read_graph(args.input)
        program = emit_host_program(plan, g, cfg.max_iterations)
        with open(os.path.join(out, "host_program.json"), "w", encoding="utf-8") as fh:
            fh.write(_host_program_json(program))
        est = estimate_resources(plan, g.num_vertices)
    else:
        est = estimate_resources(plan)
    print(
        f"compile: fingerprint={plan.fingerprint} stages={len(plan.stages)}"
        f" registers={est.registers} lut={est.lut_equivalents}"
        f" bram_bytes={est.bram_bytes} -> {plan_path}"
    )
    return 0


def cmd_run(args) -> int:
    out = _outdir(args)
    manifest = RunManifest(
        input=args.input,
        out=out,
        kernel_path=args.kernel,
        template_name=args.template,
        root=args.root,
        config_path=args.config,
    )
    g = read_graph(manifest.input)
    kernel = manifest.load_kernel()
    cfg = manifest.load_config()
    plan = translate(kernel, cfg)
    values, report = run(plan, g, cfg, manifest.init_params())

    report_path = os.path.join(out, "report.json")
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(report_to_json(report))
    write_values(g, os.path.join(out, "values.txt"), values)
    flag = " (iteration cap reached)" if report.iteration_cap_reached else ""
    print(
        f"run: teps={report.teps:.6g} traversed_edges={report.traversed_edges}"
        f" iterations={report.iterations} total_cycles={report.total_cycles}"
        f" -> {report_path}{flag}"
    )
    return 0


def _int_list(text: str) -> list[int]:
    items = [s for s in text.split(",") if s.strip()]
    return [int(s) for s in items]


def cmd_bench(args, parser: argparse.ArgumentParser) -> int:
    out = _outdir(args)
    ps = _int_list(args.pipelines)
    ks = _int_list(args.pes)
    if not ps or not ks:
        parser.error("bench needs non-empty --pipelines and --pes grids")
    manifest = RunManifest(
        input=args.input,
        out=out,
        kernel_path=args.kernel,
        template_name=args.template,
        root=args.root,
        config_path=args.config,
    )
    g = read_graph(manifest.input)
    kernel = manifest.load_kernel()
    base_cfg = manifest.load_config()

    lines = ["pipelines,pes,compute_cycles,transfer_cycles,teps"]
    for p in ps:
        for k in ks:
            cfg = dataclasses.replace(base_cfg, pipelines=p, pes=k)
            plan = translate(kernel, cfg)
            _, report = run(plan, g, cfg, manifest.init_params())
            assert report.teps == compute_teps(report)
            lines.append(
                f"{p},{k},{report.compute_cycles},{report.transfer_cycles},{report.teps!r}"
            )
    csv_path = os.path.join(out, "bench.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print("\n".join(lines))
    print(f"bench: {len(ps) * len(ks)} cells -> {csv_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaskit",
        description="graph kernel DSL, pipeline translator, and accelerator simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_pre = sub.add_parser("preprocess", help="edge list -> JGR1 graph container")
    p_pre.add_argument("--input", required=True, help="SNAP-style edge list")
    p_pre.add_argument("--out", required=True, help="output directory")
    p_pre.add_argument("--layout", choices=("csr", "csc"), default="csr")
    p_pre.add_argument("--domain", choices=("int", "float"), default="int")
    p_pre.add_argument(
        "--reorder", choices=("identity", "degree_desc", "dfs_locality"), default=None
    )
    p_pre.add_argument("--partition-k", type=int, default=None, dest="partition_k")
    p_pre.add_argument(
        "--partition-strategy",
        choices=("contiguous", "round_robin"),
        default="contiguous",
        dest="partition_strategy",
    )

    def add_kernel_args(p, with_input=True):
        if with_input:
            p.add_argument("--input", required=True, help="JGR1 graph container")
        p.add_argument("--kernel", default=None, help="kernel source file")
        p.add_argument("--template", default=None, help="bfs | sssp | pagerank")
        p.add_argument("--root", type=int, default=None)
        p.add_argument("--config", default=None, help="key=value scheduler config")
        p.add_argument("--out", required=True)

    p_compile = sub.add_parser("compile", help="kernel -> plan, sketch, host program")
    p_compile.add_argument("--input", default=None, help="graph container (for host program)")
    p_compile.add_argument("--kernel", default=None)
    p_compile.add_argument("--template", default=None)
    p_compile.add_argument("--root", type=int, default=None)
    p_compile.add_argument("--config", default=None)
    p_compile.add_argument("--out", required=True)

    p_run = sub.add_parser("run", help="transport + simulate, write report and values")
    add_kernel_args(p_run)

    p_bench = sub.add_parser("bench", help="sweep a pipelines x PEs grid")
    add_kernel_args(p_bench)
    p_bench.add_argument("--pipelines", default="", help="comma list, e.g. 1,2,4,8")
    p_bench.add_argument("--pes", default="1", help="comma list, e.g. 1,2")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "preprocess":
            return cmd_preprocess(args)
        if args.command == "compile":
            return cmd_compile(args)
        if args.command == "run":
            return cmd_run(args)
        return cmd_bench(args, parser)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except GasKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
