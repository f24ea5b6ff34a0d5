"""Scalar value domains and saturating arithmetic.

A graph and the kernel that runs on it share one declared scalar domain:
64-bit signed integers or 64-bit floats.  Each domain reserves INF, the
maximum representable value, as the absorbing "unreached" sentinel:
any +,-,*,/,% with an INF operand yields INF, and integer results that
overflow the domain clamp to its bounds.  Integer division truncates
toward zero and the remainder takes the dividend's sign (C semantics),
so that a == (a / b) * b + a % b holds.
"""

from __future__ import annotations

import enum
import math

from .errors import DivisionByZero, DomainError

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

INF_INT = INT64_MAX
INF_FLOAT = math.inf


class Domain(enum.Enum):
    INT = "int"
    FLOAT = "float"

    @classmethod
    def from_tag(cls, tag: str) -> "Domain":
        for d in cls:
            if d.value == tag:
                return d
        raise DomainError(f"unknown value domain {tag!r}")


def inf_value(domain: Domain):
    return INF_INT if domain is Domain.INT else INF_FLOAT


def is_inf(domain: Domain, x) -> bool:
    return x == INF_INT if domain is Domain.INT else x == INF_FLOAT


def check_value(domain: Domain, x):
    """Validate x against the domain, returning it normalized.

    Int domain accepts Python ints in the 64-bit signed range (bools are
    rejected); float domain accepts finite floats and ints plus +INF.
    NaN never enters the system.
    """
    if domain is Domain.INT:
        if isinstance(x, bool) or not isinstance(x, int):
            raise DomainError(f"int domain cannot hold {x!r}")
        if not INT64_MIN <= x <= INT64_MAX:
            raise DomainError(f"{x} outside the 64-bit signed range")
        return x
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DomainError(f"float domain cannot hold {x!r}")
    x = float(x)
    if math.isnan(x):
        raise DomainError("float domain cannot hold NaN")
    if x == -math.inf:
        raise DomainError("float domain cannot hold -inf")
    return x


def _clamp_int(x: int) -> int:
    if x > INT64_MAX:
        return INT64_MAX
    if x < INT64_MIN:
        return INT64_MIN
    return x


def _div_trunc(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _mod_trunc(a: int, b: int) -> int:
    return a - _div_trunc(a, b) * b


def arith(domain: Domain, op: str, a, b):
    """Apply one of + - * / % under the domain's saturation rules.

    INF absorbs before the divisor-zero check, so INF / 0 is INF while
    any finite / 0 raises DivisionByZero.
    """
    inf = inf_value(domain)
    if a == inf or b == inf:
        return inf
    if domain is Domain.INT:
        if op == "+":
            return _clamp_int(a + b)
        if op == "-":
            return _clamp_int(a - b)
        if op == "*":
            return _clamp_int(a * b)
        if b == 0:
            raise DivisionByZero(f"{a} {op} 0")
        if op == "/":
            return _clamp_int(_div_trunc(a, b))
        return _clamp_int(_mod_trunc(a, b))
    if op == "+":
        r = a + b
    elif op == "-":
        r = a - b
    elif op == "*":
        r = a * b
    elif op == "/":
        if b == 0.0:
            raise DivisionByZero(f"{a} / 0")
        r = a / b
    else:
        raise DomainError("% is only defined in the int domain")
    return inf if r == math.inf else r


def sqrt(domain: Domain, x):
    """Square root; floor of the exact root in the int domain."""
    if is_inf(domain, x):
        return inf_value(domain)
    if x < 0:
        raise DomainError(f"sqrt of negative value {x}")
    return math.isqrt(x) if domain is Domain.INT else math.sqrt(x)


def square(domain: Domain, x):
    return arith(domain, "*", x, x)
