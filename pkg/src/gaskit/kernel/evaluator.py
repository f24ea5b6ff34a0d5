"""Expression evaluation.

Two entry points: ``eval_expr`` interprets one expression against an
identifier environment (the public, one-shot path), and ``compile_expr``
/ ``compile_block`` turn kernel sections into Python closures once so the
engines can run millions of edge messages without re-walking the tree.

Semantics in both paths are the saturating domain arithmetic from
``gaskit.values``: INF absorbs, int division truncates toward zero, sqrt
floors in the int domain, and unary minus is 0 - x (so -INF is INF).
"""

from __future__ import annotations

import math
import operator

from ..errors import DivisionByZero, DomainError
from ..values import Domain, INF_INT, INT64_MAX, INT64_MIN, arith, inf_value, sqrt as dom_sqrt
from . import ast

_CMP = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
}


def _compile_bin(domain: Domain, op: str, lf, rf):
    if domain is Domain.INT:
        if op == "+":
            def f(env):
                a = lf(env)
                b = rf(env)
                if a == INF_INT or b == INF_INT:
                    return INF_INT
                r = a + b
                return INF_INT if r > INT64_MAX else (INT64_MIN if r < INT64_MIN else r)
            return f
        if op == "-":
            def f(env):
                a = lf(env)
                b = rf(env)
                if a == INF_INT or b == INF_INT:
                    return INF_INT
                r = a - b
                return INF_INT if r > INT64_MAX else (INT64_MIN if r < INT64_MIN else r)
            return f
        def f(env):
            return arith(domain, op, lf(env), rf(env))
        return f
    inf = math.inf
    if op == "+":
        def f(env):
            r = lf(env) + rf(env)
            return inf if r == inf else r
        return f
    if op == "-":
        def f(env):
            a = lf(env)
            b = rf(env)
            if a == inf or b == inf:
                return inf
            return a - b
        return f
    if op == "*":
        def f(env):
            a = lf(env)
            b = rf(env)
            if a == inf or b == inf:
                return inf
            r = a * b
            return inf if r == inf else r
        return f
    if op == "/":
        def f(env):
            a = lf(env)
            b = rf(env)
            if a == inf or b == inf:
                return inf
            if b == 0:
                raise DivisionByZero(f"{a} / 0")
            return a / b
        return f
    def f(env):
        return arith(domain, op, lf(env), rf(env))  # raises for float %
    return f


def compile_expr(e, domain: Domain, props: dict | None = None, outdegs=None, nvertices=None):
    """Compile an expression into a closure over an identifier env.

    When ``props``/``outdegs``/``nvertices`` are given (the engine path)
    property arrays, out-degrees and N are captured at compile time;
    otherwise they are looked up in the env on every call.
    """
    if isinstance(e, ast.Num):
        v = e.value
        return lambda env: v
    if isinstance(e, ast.Inf):
        v = inf_value(domain)
        return lambda env: v
    if isinstance(e, ast.Ident):
        name = e.name
        if name == "N" and nvertices is not None:
            v = nvertices if domain is Domain.INT else float(nvertices)
            return lambda env: v
        return lambda env: env[name]
    if isinstance(e, ast.PropRead):
        idx = e.index
        if props is not None:
            arr = props[e.prop]
            return lambda env: arr[env[idx]]
        p = e.prop
        return lambda env: env[p][env[idx]]
    if isinstance(e, ast.Neg):
        xf = compile_expr(e.operand, domain, props, outdegs, nvertices)
        zero = 0 if domain is Domain.INT else 0.0
        return _compile_bin(domain, "-", lambda env: zero, xf)
    if isinstance(e, ast.Bin):
        lf = compile_expr(e.lhs, domain, props, outdegs, nvertices)
        rf = compile_expr(e.rhs, domain, props, outdegs, nvertices)
        return _compile_bin(domain, e.op, lf, rf)
    if isinstance(e, ast.Cmp):
        lf = compile_expr(e.lhs, domain, props, outdegs, nvertices)
        rf = compile_expr(e.rhs, domain, props, outdegs, nvertices)
        cmp = _CMP[e.op]
        return lambda env: cmp(lf(env), rf(env))
    if isinstance(e, ast.Call):
        args = [compile_expr(a, domain, props, outdegs, nvertices) for a in e.args]
        if e.func == "min":
            af, bf = args
            return lambda env: min(af(env), bf(env))
        if e.func == "max":
            af, bf = args
            return lambda env: max(af(env), bf(env))
        if e.func == "sqrt":
            (xf,) = args
            return lambda env: dom_sqrt(domain, xf(env))
        if e.func == "square":
            (xf,) = args
            return _compile_bin(domain, "*", xf, xf)
        if e.func == "outdeg":
            assert isinstance(e.args[0], ast.Ident)
            name = e.args[0].name
            if outdegs is not None:
                if domain is Domain.INT:
                    return lambda env: outdegs[env[name]]
                return lambda env: float(outdegs[env[name]])
            return lambda env: env["outdeg"][env[name]]
        raise DomainError(f"unknown function {e.func!r}")
    if isinstance(e, ast.Cond):
        cf = compile_expr(e.cond, domain, props, outdegs, nvertices)
        tf = compile_expr(e.then, domain, props, outdegs, nvertices)
        of = compile_expr(e.orelse, domain, props, outdegs, nvertices)
        return lambda env: tf(env) if cf(env) else of(env)
    raise TypeError(f"not an expression node: {e!r}")


def compile_block(body, domain: Domain, props: dict, activate, outdegs=None, nvertices=None):
    """Compile a statement block into a single closure over an env.

    Property assignments write the captured arrays, plain assignments
    write locals into the env, and ``activate(x)`` calls the supplied
    staging function with the bound vertex id.
    """
    steps = []
    for s in body:
        if isinstance(s, ast.Assign):
            ef = compile_expr(s.expr, domain, props, outdegs, nvertices)
            if s.index is None:
                name = s.target
                def step(env, _n=name, _ef=ef):
                    env[_n] = _ef(env)
            else:
                arr = props[s.target]
                idx = s.index
                def step(env, _a=arr, _i=idx, _ef=ef):
                    _a[env[_i]] = _ef(env)
            steps.append(step)
        elif isinstance(s, ast.If):
            cf = compile_expr(s.cond, domain, props, outdegs, nvertices)
            inner = compile_block(s.body, domain, props, activate, outdegs, nvertices)
            def step(env, _cf=cf, _inner=inner):
                if _cf(env):
                    _inner(env)
            steps.append(step)
        elif isinstance(s, ast.Activate):
            name = s.ident
            def step(env, _n=name):
                activate(env[_n])
            steps.append(step)
        else:
            raise TypeError(f"not a statement node: {s!r}")

    def run(env):
        for st in steps:
            st(env)

    return run


def eval_expr(e, env: dict, domain: Domain = Domain.INT):
    """Evaluate one expression against an identifier -> value map.

    Properties may be bound in the env as sequences (``{"dist": [0, 7]}``)
    and out-degrees under the key "outdeg"; missing identifiers raise
    KeyError, honoring the caller's obligation to bind all free names.
    """
    return compile_expr(e, domain)(env)
