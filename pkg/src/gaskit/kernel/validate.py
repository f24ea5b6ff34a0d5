"""Semantic validation of parsed kernels.

Checks identifier scoping (params, properties, builtins, and locals that
were assigned earlier in the same block), the two-kind type discipline
(vertex ids never mix into scalar arithmetic, comparisons appear only in
condition position), domain rules (% and float literals), the section
contract (exactly one of receive/send, single-assignment receive/reduce
bodies), and samples the reduce expression for commutativity and
associativity before declaring it lawful.
"""

from __future__ import annotations

import math
import random

from ..errors import KernelValidationError
from ..values import Domain, inf_value
from . import ast

_REDUCE_SAMPLES = 24
_FLOAT_RTOL = 1e-9

SCALAR = "scalar"
VERTEX = "vertex"
BOOL = "bool"

_RESERVED = set(ast.FUNCS) | set(ast.BUILTIN_IDENTS) | {"sqare", "INF"}


class _Checker:
    def __init__(self, domain: Domain, props: set):
        self.domain = domain
        self.props = props

    def expr(self, e, env: dict) -> str:
        if isinstance(e, ast.Num):
            if self.domain is Domain.INT and isinstance(e.value, float):
                raise KernelValidationError(
                    f"float literal {e.value!r} in an int-domain kernel"
                )
            return SCALAR
        if isinstance(e, ast.Inf):
            return SCALAR
        if isinstance(e, ast.Ident):
            if e.name in ast.BUILTIN_IDENTS:
                return SCALAR
            kind = env.get(e.name)
            if kind is None:
                if e.name in self.props:
                    raise KernelValidationError(
                        f"property {e.name!r} must be read with an index"
                    )
                raise KernelValidationError(f"undeclared identifier {e.name!r}")
            if kind is VERTEX:
                raise KernelValidationError(
                    f"vertex identifier {e.name!r} used as a scalar value"
                )
            return SCALAR
        if isinstance(e, ast.PropRead):
            if e.prop not in self.props:
                raise KernelValidationError(f"undeclared identifier {e.prop!r}")
            self._vertex_ident(e.index, env)
            return SCALAR
        if isinstance(e, ast.Neg):
            self._scalar(e.operand, env)
            return SCALAR
        if isinstance(e, ast.Bin):
            if e.op == "%" and self.domain is not Domain.INT:
                raise KernelValidationError("% is only defined in the int domain")
            self._scalar(e.lhs, env)
            self._scalar(e.rhs, env)
            return SCALAR
        if isinstance(e, ast.Cmp):
            self._scalar(e.lhs, env)
            self._scalar(e.rhs, env)
            return BOOL
        if isinstance(e, ast.Call):
            if e.func in ("min", "max"):
                if len(e.args) != 2:
                    raise KernelValidationError(f"{e.func} takes exactly 2 arguments")
                for a in e.args:
                    self._scalar(a, env)
            elif e.func in ("sqrt", "square"):
                if len(e.args) != 1:
                    raise KernelValidationError(f"{e.func} takes exactly 1 argument")
                self._scalar(e.args[0], env)
            elif e.func == "outdeg":
                if len(e.args) != 1 or not isinstance(e.args[0], ast.Ident):
                    raise KernelValidationError("outdeg takes one vertex identifier")
                self._vertex_ident(e.args[0].name, env)
            else:
                raise KernelValidationError(f"unknown function {e.func!r}")
            return SCALAR
        if isinstance(e, ast.Cond):
            if self.expr(e.cond, env) is not BOOL:
                raise KernelValidationError("conditional test must be a comparison")
            self._scalar(e.then, env)
            self._scalar(e.orelse, env)
            return SCALAR
        raise KernelValidationError(f"unknown expression node {e!r}")

    def _scalar(self, e, env):
        if self.expr(e, env) is not SCALAR:
            raise KernelValidationError("comparison used where a value is expected")

    def _vertex_ident(self, name: str, env: dict):
        kind = env.get(name)
        if kind is None:
            raise KernelValidationError(f"undeclared identifier {name!r}")
        if kind is not VERTEX:
            raise KernelValidationError(f"{name!r} is not a vertex identifier")

    def block(self, body, env: dict, writable_out: str | None = None):
        """Check statements, growing env with locals as they are assigned."""
        for s in body:
            if isinstance(s, ast.Assign):
                self._scalar(s.expr, env)
                if s.index is not None:
                    if s.target not in self.props:
                        raise KernelValidationError(
                            f"assignment to undeclared property {s.target!r}"
                        )
                    self._vertex_ident(s.index, env)
                    continue
                if s.target in self.props:
                    raise KernelValidationError(
                        f"property {s.target!r} must be assigned with an index"
                    )
                if s.target in _RESERVED:
                    raise KernelValidationError(f"{s.target!r} is reserved")
                existing = env.get(s.target)
                if existing is VERTEX:
                    raise KernelValidationError(
                        f"cannot assign to vertex parameter {s.target!r}"
                    )
                if existing is SCALAR and s.target != writable_out and s.target not in self._locals:
                    raise KernelValidationError(
                        f"cannot assign to parameter {s.target!r}"
                    )
                env[s.target] = SCALAR
                self._locals.add(s.target)
            elif isinstance(s, ast.If):
                if self.expr(s.cond, env) is not BOOL:
                    raise KernelValidationError("if condition must be a comparison")
                self.block(s.body, env, writable_out)
            elif isinstance(s, ast.Activate):
                self._vertex_ident(s.ident, env)
            else:
                raise KernelValidationError(f"unknown statement {s!r}")

    def check_block(self, body, params: dict, writable_out=None):
        self._locals: set = set()
        env = dict(params)
        self.block(body, env, writable_out)


def _single_assignment(body, out: str, section: str):
    if len(body) != 1 or not isinstance(body[0], ast.Assign) or body[0].index is not None:
        raise KernelValidationError(
            f"{section} body must be a single assignment to {out!r}"
        )
    if body[0].target != out:
        raise KernelValidationError(
            f"{section} must assign its output {out!r}, not {body[0].target!r}"
        )
    return body[0].expr


def _check_names(names, what):
    seen = set()
    for n in names:
        if n in _RESERVED:
            raise KernelValidationError(f"{what} name {n!r} is reserved")
        if n in seen:
            raise KernelValidationError(f"duplicate {what} name {n!r}")
        seen.add(n)
    return seen


def _sample_values(domain: Domain, rng: random.Random) -> list:
    inf = inf_value(domain)
    if domain is Domain.INT:
        pool = [rng.randint(1, 50) for _ in range(6)] + [0, 1, inf]
    else:
        pool = [round(rng.uniform(0.1, 50.0), 6) for _ in range(6)] + [0.0, 1.0, inf]
    return pool

def _reduce_lawful(expr, params, domain: Domain):
    # sampled contract, not a proof: commutativity and associativity must
    # hold on a fixed pseudo-random set of operand triples
    from .evaluator import eval_expr

    a_name, b_name = params
    rng = random.Random(0x6A5C)
    pool = _sample_values(domain, rng)

    def red(x, y):
        return eval_expr(expr, {a_name: x, b_name: y}, domain)

    def close(x, y):
        if domain is Domain.INT:
            return x == y
        return math.isclose(x, y, rel_tol=_FLOAT_RTOL, abs_tol=1e-12)

    try:
        for _ in range(_REDUCE_SAMPLES):
            a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            if not close(red(a, b), red(b, a)):
                raise KernelValidationError(
                    f"reduce is not commutative on sample ({a}, {b})"
                )
            if not close(red(red(a, b), c), red(a, red(b, c))):
                raise KernelValidationError(
                    f"reduce is not associative on sample ({a}, {b}, {c})"
                )
    except KernelValidationError:
        raise
    except Exception as exc:
        raise KernelValidationError(f"reduce failed on sampled inputs: {exc}") from exc


def validate(raw: dict) -> ast.KernelSpec:
    """Turn the parser's raw section dict into a validated KernelSpec."""
    domain = raw["domain"]
    props = raw["props"]
    prop_names = _check_names([p for p, _ in props], "property")
    checker = _Checker(domain, prop_names)

    for pname, pexpr in props:
        if checker.expr(pexpr, {}) is not SCALAR:
            raise KernelValidationError(
                f"initial value of property {pname!r} must be a scalar expression"
            )

    init = raw["init"]
    _check_names([init.param], "init parameter")
    checker.check_block(init.body, {init.param: VERTEX})

    receive_raw = raw["receive"]
    send_raw = raw["send"]
    if receive_raw is None and send_raw is None:
        raise KernelValidationError("kernel needs a receive or a send section")
    if receive_raw is not None and send_raw is not None:
        raise KernelValidationError(
            "kernel declares both receive and send; write one, the other is derived"
        )

    def build_edge(section_raw, section_name):
        (p_src, p_w, p_dst), out, body = section_raw
        _check_names([p_src, p_w, p_dst, out], f"{section_name} parameter")
        env = {p_src: VERTEX, p_w: SCALAR, p_dst: VERTEX}
        expr = _single_assignment(body, out, section_name)
        checker.check_block(body, env, writable_out=out)
        return ast.EdgeSection((p_src, p_w, p_dst), out, expr)

    if receive_raw is not None:
        receive = build_edge(receive_raw, "receive")
        send = None
        derived = False
    else:
        send = build_edge(send_raw, "send")
        # contract duality: a send over out-edges is a receive over the
        # transposed layout with the same message expression
        receive = ast.EdgeSection(send.params, send.out, send.expr)
        derived = True

    ra, rb, rout, rbody = raw["reduce"]
    _check_names([ra, rb, rout], "reduce parameter")
    reduce_expr = _single_assignment(rbody, rout, "reduce")
    reduce_checker = _Checker(domain, set())  # no property reads in reduce
    reduce_checker.check_block(rbody, {ra: SCALAR, rb: SCALAR}, writable_out=rout)
    _reduce_lawful(reduce_expr, (ra, rb), domain)
    reduce_sec = ast.ReduceSection((ra, rb), rout, reduce_expr)

    apply_sec = raw["apply"]
    av, am = apply_sec.params
    _check_names([av, am], "apply parameter")
    checker.check_block(apply_sec.body, {av: VERTEX, am: SCALAR})

    return ast.KernelSpec(
        name=raw["name"],
        domain=domain,
        props=props,
        init=init,
        receive=receive,
        reduce=reduce_sec,
        apply=apply_sec,
        send=send,
        receive_derived=derived,
    )
