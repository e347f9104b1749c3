from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nfactor.closedform import (
    digital_P,
    digital_P2,
    digital_coeffs,
    digital_threshold,
    fib_coeffs,
    fib_limit_coeff,
    fib_P,
    fib_P1,
    fib_P2,
)
from nfactor.errors import NeedsBootstrap, UndefinedValue
from nfactor.sequences import DigitalSpec, phi


@pytest.mark.parametrize("n, N, expected", [
    (1, 7, 8), (4, 2, 1), (2, 3, 5), (2, 2, 3), (3, 0, 0), (2, 1, 1), (5, 6, 24),
])
def test_fib_P(n, N, expected):
    assert fib_P(n, N) == expected


def test_fib_coeffs_n2():
    c = fib_coeffs(2)
    assert (c.C2, c.C1, c.C0, c.C0_odd) == (Fraction(1, 4), 1, Fraction(-1, 4), 0)


@pytest.mark.parametrize("n, N, expected", [(2, 1, 1), (2, 2, 2), (2, 3, 2)])
def test_fib_P1(n, N, expected):
    assert fib_P1(n, N) == expected


@pytest.mark.parametrize("n, N, expected", [(3, 3, 1), (3, 4, 1), (6, 5, 3), (6, 6, 2)])
def test_fib_P2(n, N, expected):
    assert fib_P2(n, N) == expected


@given(st.integers(3, 500), st.integers(0, 60))
def test_fib_parity_pairs_sum(n, extra):
    N = phi(n) + 1 + extra
    assert fib_P2(n, N) + fib_P2(n, N + 1) == n - 1


@given(st.integers(2, 300), st.integers(0, 60))
def test_fib_differences_consistent(n, extra):
    N = phi(n) + 1 + extra
    assert fib_P1(n, N) == fib_P(n, N) - fib_P(n, N - 1)
    if n >= 3:
        assert fib_P2(n, N) == fib_P1(n, N) - fib_P1(n, N - 1)


@given(st.integers(2, 200))
def test_fib_leading_coefficient(n):
    # second difference over a two-step span is 2 * C2 * 4 = 2 (n - 1)
    N = phi(n) + 4
    assert fib_P(n, N + 2) - 2 * fib_P(n, N) + fib_P(n, N - 2) == 8 * fib_limit_coeff(n)


def test_fib_limit_coeff():
    assert fib_limit_coeff(2) == Fraction(1, 4)
    assert fib_limit_coeff(5) == 1


def test_fib_domain_errors():
    with pytest.raises(UndefinedValue):
        fib_P(0, 3)
    with pytest.raises(UndefinedValue):
        fib_P1(3, 0)
    with pytest.raises(UndefinedValue):
        fib_P2(2, 5)


@pytest.mark.parametrize("k, w, n, N, expected", [
    (2, (1,), 3, 5, 2),
    (2, (0, 1), 4, 5, 0),
    (3, (0,), 1, 4, 0),
])
def test_digital_P2(k, w, n, N, expected):
    assert digital_P2(DigitalSpec(k, w), n, N) == expected


def test_digital_P2_below_threshold():
    with pytest.raises(UndefinedValue):
        digital_P2(DigitalSpec(2, (1,)), 3, 2)


# oracle values P(n, M-1), P(n, M), ..., P(n, M+3)
ORACLE = {
    (2, (0,), 2): [7, 12, 18, 25, 33],
    (2, (1,), 3): [11, 19, 29, 41, 55],
    (2, (0, 1), 4): [36, 48, 60, 72, 84],
    (3, (1, 2), 3): [13, 19, 25, 31, 37],
}


@pytest.mark.parametrize("key", ORACLE, ids=str)
def test_digital_P_against_pinned_oracle(key):
    k, w, n = key
    spec = DigitalSpec(k, w)
    values = ORACLE[key]
    M = digital_threshold(spec, n)
    init = (values[1], values[0])
    for offset, expected in enumerate(values[1:]):
        assert digital_P(spec, n, M + offset, init).derived == expected


def test_digital_P_at_threshold_returns_init():
    for k, w, n in ORACLE:
        spec = DigitalSpec(k, w)
        M = digital_threshold(spec, n)
        assert digital_P(spec, n, M, (50, 40)).derived == 50


def test_printed_constant_differs_for_power_blocks():
    spec = DigitalSpec(2, (0,))
    c = digital_coeffs(spec, 2, (12, 7))
    assert c.d5_printed - c.d5_derived == c.d0 * c.M
    assert not digital_P(spec, 2, 4, (12, 7)).agree


def test_mixed_readings_coincide():
    assert digital_P(DigitalSpec(2, (0, 1)), 4, 6, (48, 36)).agree


def test_digital_needs_init():
    with pytest.raises(NeedsBootstrap):
        digital_P(DigitalSpec(2, (0, 1)), 4, 6, None)
    with pytest.raises(UndefinedValue):
        digital_P(DigitalSpec(2, (0, 1)), 4, 2, (48, 36))
