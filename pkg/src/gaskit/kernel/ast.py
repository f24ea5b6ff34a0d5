"""Kernel IR node types.

Everything here is a frozen dataclass so a validated KernelSpec is
immutable, hashable-by-parts, and comparable structurally (the parser
round-trip tests rely on ==).  Expressions are scalar-typed trees;
comparisons are boolean and may appear only in condition positions,
which validation enforces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..values import Domain

ARITH_OPS = ("+", "-", "*", "/", "%")
CMP_OPS = ("<", "<=", ">", ">=", "==", "!=")
# sqare is the accepted alternate spelling; the canonical form is square
FUNCS = ("min", "max", "sqrt", "square", "outdeg")
BUILTIN_IDENTS = ("N",)  # number of vertices, bound by the engine


@dataclass(frozen=True)
class Num:
    value: Union[int, float]


@dataclass(frozen=True)
class Inf:
    pass


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class PropRead:
    prop: str
    index: str  # a vertex-typed identifier


@dataclass(frozen=True)
class Bin:
    op: str
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Cmp:
    op: str
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class Cond:
    """cond ? then : orelse"""

    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


Expr = Union[Num, Inf, Ident, PropRead, Bin, Neg, Cmp, Call, Cond]


@dataclass(frozen=True)
class Assign:
    target: str
    index: Optional[str]  # None for a local, vertex ident for prop[ident]
    expr: Expr


@dataclass(frozen=True)
class If:
    cond: Expr
    body: tuple["Stmt", ...]


@dataclass(frozen=True)
class Activate:
    ident: str


Stmt = Union[Assign, If, Activate]


@dataclass(frozen=True)
class InitSection:
    param: str
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class EdgeSection:
    """receive or send: (src, weight, dst) params -> out, message expr."""

    params: tuple[str, str, str]
    out: str
    expr: Expr


@dataclass(frozen=True)
class ReduceSection:
    params: tuple[str, str]
    out: str
    expr: Expr


@dataclass(frozen=True)
class ApplySection:
    params: tuple[str, str]  # (vertex, reduced message)
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class KernelSpec:
    """Validated IR of one kernel.

    ``receive`` is always populated: a send-only kernel is normalized at
    validation into receive form (same message expression, executed over
    the transposed layout) and flagged via receive_derived.  Run-time
    bindings that have no textual form (template root, iteration default)
    never participate in structural equality.
    """

    name: str
    domain: Domain
    props: tuple[tuple[str, Expr], ...]
    init: InitSection
    receive: EdgeSection
    reduce: ReduceSection
    apply: ApplySection
    send: Optional[EdgeSection] = None
    receive_derived: bool = False
    init_args: Optional[dict] = field(default=None, compare=False)
    default_max_iterations: Optional[int] = field(default=None, compare=False)

    @property
    def prop_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.props)


def count_nodes(e: Expr) -> int:
    """Number of AST nodes in an expression (resource-estimate input)."""
    if isinstance(e, (Num, Inf, Ident, PropRead)):
        return 1
    if isinstance(e, Neg):
        return 1 + count_nodes(e.operand)
    if isinstance(e, (Bin, Cmp)):
        return 1 + count_nodes(e.lhs) + count_nodes(e.rhs)
    if isinstance(e, Call):
        return 1 + sum(count_nodes(a) for a in e.args)
    if isinstance(e, Cond):
        return 1 + count_nodes(e.cond) + count_nodes(e.then) + count_nodes(e.orelse)
    raise TypeError(f"not an expression node: {e!r}")


def count_block_nodes(body: tuple[Stmt, ...]) -> int:
    total = 0
    for s in body:
        if isinstance(s, Assign):
            total += 1 + count_nodes(s.expr)
        elif isinstance(s, If):
            total += 1 + count_nodes(s.cond) + count_block_nodes(s.body)
        elif isinstance(s, Activate):
            total += 1
        else:
            raise TypeError(f"not a statement node: {s!r}")
    return total
