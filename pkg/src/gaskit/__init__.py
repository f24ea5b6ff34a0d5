"""gaskit: vertex-centric graph kernels, a pipeline-plan translator, and a
deterministic accelerator simulator reporting TEPS."""

from .graph import Direction, Frontier, Graph
from .kernel import KernelSpec, eval_expr, parse_kernel, pretty_print, template
from .preprocess import (
    EdgeList,
    Partitioning,
    Permutation,
    layout_convert,
    partition,
    read_edge_list,
    read_graph,
    reorder,
    write_graph,
    write_values,
)
from .sim import (
    DeviceModel,
    SchedulerConfig,
    SimReport,
    compute_teps,
    functional_execute,
    query_device,
    run,
    transport,
)
from .translate import (
    HostProgram,
    PipelinePlan,
    ResourceEstimate,
    emit_hdl_sketch,
    emit_host_program,
    estimate_resources,
    translate,
)
from .values import Domain

__version__ = "0.1.0"

__all__ = [
    "DeviceModel",
    "Direction",
    "Domain",
    "EdgeList",
    "Frontier",
    "Graph",
    "HostProgram",
    "KernelSpec",
    "Partitioning",
    "Permutation",
    "PipelinePlan",
    "ResourceEstimate",
    "SchedulerConfig",
    "SimReport",
    "compute_teps",
    "emit_hdl_sketch",
    "emit_host_program",
    "estimate_resources",
    "eval_expr",
    "functional_execute",
    "layout_convert",
    "parse_kernel",
    "partition",
    "pretty_print",
    "query_device",
    "read_edge_list",
    "read_graph",
    "reorder",
    "run",
    "template",
    "translate",
    "transport",
    "write_graph",
    "write_values",
]
