import math

import pytest

from gaskit.errors import DivisionByZero, DomainError
from gaskit.values import (
    Domain,
    INF_INT,
    INT64_MIN,
    arith,
    check_value,
    inf_value,
    is_inf,
    sqrt,
    square,
)


def test_inf_is_domain_maximum():
    assert inf_value(Domain.INT) == 2**63 - 1
    assert inf_value(Domain.FLOAT) == math.inf


def test_inf_absorbs_all_arithmetic():
    for op in "+-*/%":
        assert arith(Domain.INT, op, INF_INT, 3) == INF_INT
        assert arith(Domain.INT, op, 3, INF_INT) == INF_INT
    for op in "+-*/":
        assert arith(Domain.FLOAT, op, math.inf, 3.0) == math.inf


def test_int_overflow_clamps():
    assert arith(Domain.INT, "+", INF_INT - 1, 5) == INF_INT
    assert arith(Domain.INT, "*", 2**40, 2**40) == INF_INT
    assert arith(Domain.INT, "-", INT64_MIN + 1, 5) == INT64_MIN


def test_truncating_division_and_remainder():
    assert arith(Domain.INT, "/", 7, 2) == 3
    assert arith(Domain.INT, "/", -7, 2) == -3
    assert arith(Domain.INT, "%", 7, 3) == 1
    assert arith(Domain.INT, "%", -7, 3) == -1
    # a == (a/b)*b + a%b
    for a, b in [(7, 3), (-7, 3), (7, -3), (-7, -3)]:
        assert a == arith(Domain.INT, "/", a, b) * b + arith(Domain.INT, "%", a, b)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        arith(Domain.INT, "/", 5, 0)
    with pytest.raises(DivisionByZero):
        arith(Domain.FLOAT, "/", 5.0, 0.0)
    # absorbing wins over the divisor check
    assert arith(Domain.INT, "/", INF_INT, 0) == INF_INT


def test_float_mod_rejected():
    with pytest.raises(DomainError):
        arith(Domain.FLOAT, "%", 7.0, 3.0)


def test_sqrt_floors_in_int_domain():
    assert sqrt(Domain.INT, 8) == 2
    assert sqrt(Domain.INT, 9) == 3
    assert sqrt(Domain.FLOAT, 2.25) == 1.5
    assert is_inf(Domain.INT, sqrt(Domain.INT, INF_INT))
    with pytest.raises(DomainError):
        sqrt(Domain.INT, -1)
    with pytest.raises(DomainError):
        sqrt(Domain.FLOAT, -1.0)


def test_square():
    assert square(Domain.INT, 12) == 144
    assert square(Domain.INT, 2**40) == INF_INT  # saturates


def test_check_value():
    assert check_value(Domain.INT, 5) == 5
    assert check_value(Domain.FLOAT, 5) == 5.0
    with pytest.raises(DomainError):
        check_value(Domain.INT, 1.5)
    with pytest.raises(DomainError):
        check_value(Domain.INT, 2**63)
    with pytest.raises(DomainError):
        check_value(Domain.FLOAT, math.nan)
    with pytest.raises(DomainError):
        check_value(Domain.INT, True)
