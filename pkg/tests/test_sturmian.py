from __future__ import annotations

from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subshifts.core import InvalidArgument, build_factor_index
from subshifts.sturmian import (
    FloorOracle,
    InsufficientPrecision,
    MechanicalParams,
    RotationNumber,
    balance_report,
    mechanical_bits,
    sturmian_window,
)


def golden_floor(n: int) -> int:
    """floor(n * (sqrt(5) - 1) / 2) in exact integer arithmetic."""
    s = isqrt(5 * n * n) if n >= 0 else -isqrt(5 * n * n) - 1
    return (s - n) // 2


def silver_floor(n: int) -> int:
    """floor(n * (sqrt(2) - 1))."""
    s = isqrt(2 * n * n) if n >= 0 else -isqrt(2 * n * n) - 1
    return s - n


def test_parse_and_print():
    a = RotationNumber.parse("[0;1,1,1](period=1)")
    assert a.partial_quotients == (1, 1, 1) and a.tail_start == 2
    assert str(a) == "[0;1,1,1](period=1)"
    assert RotationNumber.parse(str(RotationNumber.silver())) == RotationNumber.silver()
    assert abs(RotationNumber.golden().approx() - 0.6180339887) < 1e-9
    for bad in ("[1;2]", "[0;]", "[0;1](period=3)", "[0;0,1]"):
        with pytest.raises(InvalidArgument):
            RotationNumber.parse(bad)


@pytest.mark.parametrize("alpha,oracle", [(RotationNumber.golden(), golden_floor),
                                          (RotationNumber.silver(), silver_floor)])
def test_floor_oracle_against_exact_square_roots(alpha, oracle):
    fo = FloorOracle(alpha)
    for n in list(range(-300, 301)) + [10**6 + 7, -(10**9)]:
        assert fo.floor(n) == oracle(n), n


@settings(max_examples=50, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 6))
def test_floor_independent_of_start_level(n, level):
    a = RotationNumber.golden()
    assert FloorOracle(a, level=level).floor(n) == FloorOracle(a).floor(n)


def test_intercept_shifts_floor():
    fo = FloorOracle(RotationNumber.golden(), Fraction(1, 3))
    for n in range(1, 200):
        # n a + 1/3 = (3n sqrt5 - 3n + 2) / 6 and 3n sqrt5 is irrational
        assert fo.floor(n) == (isqrt(45 * n * n) - 3 * n + 2) // 6


def test_truncated_quotients_raise_with_index():
    alpha = RotationNumber((2,))  # truncation, not a periodic tail
    params = MechanicalParams(alpha)
    with pytest.raises(InsufficientPrecision) as exc:
        mechanical_bits(params, 0, 10)
    assert exc.value.index >= 0
    finite = RotationNumber((1,) * 8)
    n = FloorOracle(finite).certified_range()
    assert n > 0
    mechanical_bits(MechanicalParams(finite), -n, n - 1)
    with pytest.raises(InsufficientPrecision):
        mechanical_bits(MechanicalParams(finite), 0, n + 5)


def test_golden_window_prefix():
    w = sturmian_window(RotationNumber.golden(), 16)
    assert "".join(w.alphabet.spell(w.symbols)) == "0101101011011010"
    assert w.symbols == tuple(golden_floor(n + 1) - golden_floor(n) for n in range(16))


def test_sturmian_complexity_and_balance():
    w = sturmian_window(RotationNumber.golden(), 2000)
    idx = build_factor_index(w, 200)
    assert all(idx.count(n) == n + 1 for n in range(1, 201))
    rep = balance_report(w, RotationNumber.golden(), 100)
    assert rep.ok
    assert rep.expected[10] == golden_floor(10)


def test_silver_balance_with_intercept():
    p = MechanicalParams(RotationNumber.silver(), Fraction(2, 7))
    w = sturmian_window(p.alpha, 1500, -700, p.intercept)
    idx = build_factor_index(w, 60)
    assert all(idx.count(n) == n + 1 for n in range(1, 61))
    assert balance_report(w, p, 60).ok


def test_intercept_range():
    with pytest.raises(InvalidArgument):
        MechanicalParams(RotationNumber.golden(), Fraction(1))
