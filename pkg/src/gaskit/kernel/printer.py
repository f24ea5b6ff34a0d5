"""Canonical kernel formatting.

One fixed layout (2-space indents, one statement per line, minimal
parentheses) so that parse(pretty_print(k)) == k and the output is
byte-identical across runs.  Floats print via repr, which round-trips
exactly.
"""

from __future__ import annotations

from ..values import Domain
from . import ast

# precedence levels: ternary 1, comparison 2, additive 3,
# multiplicative 4, unary 5, primary 6
_LEVEL_ADD = 3
_LEVEL_MUL = 4


def _level(e) -> int:
    if isinstance(e, ast.Cond):
        return 1
    if isinstance(e, ast.Cmp):
        return 2
    if isinstance(e, ast.Bin):
        return _LEVEL_ADD if e.op in ("+", "-") else _LEVEL_MUL
    if isinstance(e, ast.Neg):
        return 5
    return 6


def format_expr(e, context: int = 1) -> str:
    text = _raw(e)
    return f"({text})" if _level(e) < context else text


def _raw(e) -> str:
    if isinstance(e, ast.Num):
        return repr(e.value)
    if isinstance(e, ast.Inf):
        return "INF"
    if isinstance(e, ast.Ident):
        return e.name
    if isinstance(e, ast.PropRead):
        return f"{e.prop}[{e.index}]"
    if isinstance(e, ast.Neg):
        return "-" + format_expr(e.operand, 6)
    if isinstance(e, ast.Bin):
        lvl = _level(e)
        return f"{format_expr(e.lhs, lvl)} {e.op} {format_expr(e.rhs, lvl + 1)}"
    if isinstance(e, ast.Cmp):
        return f"{format_expr(e.lhs, 3)} {e.op} {format_expr(e.rhs, 3)}"
    if isinstance(e, ast.Call):
        return f"{e.func}({', '.join(format_expr(a, 1) for a in e.args)})"
    if isinstance(e, ast.Cond):
        return (
            f"{format_expr(e.cond, 2)} ? {format_expr(e.then, 1)}"
            f" : {format_expr(e.orelse, 1)}"
        )
    raise TypeError(f"not an expression node: {e!r}")


def _stmt_lines(s, depth: int) -> list[str]:
    pad = "  " * depth
    if isinstance(s, ast.Assign):
        lhs = s.target if s.index is None else f"{s.target}[{s.index}]"
        return [f"{pad}{lhs} = {format_expr(s.expr)};"]
    if isinstance(s, ast.If):
        lines = [f"{pad}if {format_expr(s.cond)} {{"]
        for inner in s.body:
            lines.extend(_stmt_lines(inner, depth + 1))
        lines.append(f"{pad}}}")
        return lines
    if isinstance(s, ast.Activate):
        return [f"{pad}activate({s.ident});"]
    raise TypeError(f"not a statement node: {s!r}")


def _block_lines(body, depth: int) -> list[str]:
    lines = []
    for s in body:
        lines.extend(_stmt_lines(s, depth))
    return lines


def format_block(body) -> str:
    """Canonical unindented rendering of a statement block."""
    return "\n".join(_block_lines(body, 0))


def pretty_print(k: ast.KernelSpec) -> str:
    """Render a KernelSpec in the canonical textual form."""
    lines = [f"kernel {k.name} {{"]
    lines.append(f"  domain {'int' if k.domain is Domain.INT else 'float'};")
    for name, expr in k.props:
        lines.append(f"  prop {name} = {format_expr(expr)};")

    def section(header: str, body):
        lines.append(f"  {header} {{")
        lines.extend(_block_lines(body, 2))
        lines.append("  }")

    section(f"init({k.init.param})", k.init.body)
    if k.receive_derived:
        s = k.send
        assert s is not None
        body = (ast.Assign(s.out, None, s.expr),)
        section(f"send({', '.join(s.params)}) -> {s.out}", body)
    else:
        r = k.receive
        body = (ast.Assign(r.out, None, r.expr),)
        section(f"receive({', '.join(r.params)}) -> {r.out}", body)
    red = k.reduce
    section(
        f"reduce({red.params[0]}, {red.params[1]}) -> {red.out}",
        (ast.Assign(red.out, None, red.expr),),
    )
    section(f"apply({k.apply.params[0]}, {k.apply.params[1]})", k.apply.body)
    lines.append("}")
    return "\n".join(lines) + "\n"
