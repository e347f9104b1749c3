"""Closed-form N-factor complexities.

All coefficient arithmetic is done in :class:`fractions.Fraction`; every
public evaluator checks that the result is an integer before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .carrystate import ceil_log
from .errors import NeedsBootstrap, NonIntegerResult, UndefinedValue
from .sequences import BlockClass, DigitalSpec, fib, phi


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegerResult(f"{what} evaluated to the non-integer {x}")
    return x.numerator


@dataclass(frozen=True)
class FibCoeffs:
    n: int
    phi: int
    C2: Fraction
    C1: Fraction
    C0: Fraction
    C0_odd: Fraction


def fib_coeffs(n: int) -> FibCoeffs:
    if n < 2:
        raise UndefinedValue("the quadratic coefficients need n >= 2")
    p = phi(n)
    F1, F2 = fib(p + 1), fib(p + 2)
    C2 = Fraction(n - 1, 4)
    C1 = Fraction(F2 - (n - 1) * p, 2)
    C0 = (1 - Fraction(p, 2)) * F2 + Fraction(n - 1, 4) * p * p - n
    C0_odd = F1 + Fraction(1 - p, 2) * F2 + Fraction(n - 1, 4) * p * p + Fraction(1 - 5 * n, 4)
    return FibCoeffs(n, p, C2, C1, C0, C0_odd)


def fib_P(n: int, N: int) -> int:
    """``P_f(n, N)`` for the infinite Fibonacci word."""
    if n < 1 or N < 0:
        raise UndefinedValue("need n >= 1 and N >= 0")
    if n == 1:
        return N + 1
    p = phi(n)
    if N <= p - 2:
        return 0
    if N in (p - 1, p):
        return fib(N + 2) - n
    c = fib_coeffs(n)
    const = c.C0 if (N + p) % 2 == 0 else c.C0_odd
    return _integral(c.C2 * N * N + c.C1 * N + const, f"P_f({n},{N})")


def fib_P1(n: int, N: int) -> int:
    """First difference ``P_f(n, N) - P_f(n, N-1)`` for ``N >= phi(n)``."""
    if n < 2:
        raise UndefinedValue("the first-difference formula needs n >= 2")
    p = phi(n)
    if N < p:
        raise UndefinedValue(f"need N >= phi(n) = {p}")
    if N == p:
        return fib(N)
    if (N + p) % 2 == 1:
        value = fib(p + 1) + Fraction((n - 1) * (N - p - 1), 2)
    else:
        value = fib(p) + Fraction((n - 1) * (N - p), 2)
    return _integral(value, f"P1_f({n},{N})")


def fib_P2(n: int, N: int) -> int:
    """Second difference for ``n >= 3`` and ``N >= phi(n) + 1``."""
    if n < 3:
        raise UndefinedValue("the second-difference formula needs n >= 3")
    p = phi(n)
    if N < p + 1:
        raise UndefinedValue(f"need N >= phi(n) + 1 = {p + 1}")
    if (N + p) % 2 == 0:
        return (n - 1) - fib(p - 1)
    return fib(p - 1)


def fib_limit_coeff(n: int) -> Fraction:
    """Leading coefficient of ``P_f(n, N)`` as a polynomial in ``N``."""
    if n < 2:
        raise UndefinedValue("n must be >= 2")
    return Fraction(n - 1, 4)


def digital_threshold(spec: DigitalSpec, n: int) -> int:
    """``M = ceil(log_k n) + 2``, from which the digital closed forms hold."""
    return ceil_log(n, spec.k) + 2


def digital_P2(spec: DigitalSpec, n: int, N: int) -> int:
    if n < 1:
        raise UndefinedValue("n must be >= 1")
    M = digital_threshold(spec, n)
    if N < M:
        raise UndefinedValue(f"need N >= M = {M}")
    if spec.block_class is BlockClass.MIXED:
        return 0
    return n - 1


@dataclass(frozen=True)
class DigitalCoeffs:
    k: int
    w: tuple
    n: int
    M: int
    P_M: int
    P_M1: int
    d0: Fraction
    d1: Fraction
    d3: Fraction
    d4: Fraction
    d5_printed: Fraction
    d5_derived: Fraction


def digital_coeffs(spec: DigitalSpec, n: int, init) -> DigitalCoeffs:
    """Coefficients from the initial values ``init = (P(n, M), P(n, M-1))``."""
    if init is None:
        raise NeedsBootstrap(
            f"the digital closed form for {spec.label} needs P(n,M) and P(n,M-1)")
    P_M, P_M1 = (int(x) for x in init)
    M = digital_threshold(spec, n)
    d0 = Fraction(P_M - P_M1)
    d1 = P_M - d0 * M
    d3 = Fraction(n - 1, 2)
    d4 = d0 + Fraction((1 - 2 * M) * (n - 1), 2)
    d5_printed = P_M + Fraction((M * M - M) * (n - 1), 2)
    d5_derived = d5_printed - d0 * M
    return DigitalCoeffs(spec.k, spec.w, n, M, P_M, P_M1, d0, d1, d3, d4, d5_printed, d5_derived)


@dataclass(frozen=True)
class DigitalPrediction:
    """Both readings of the closed form at one cap.

    ``derived`` sums the constant second difference up from ``P(n, M)``;
    ``printed`` uses the published constant term.  For mixed blocks the two
    coincide.
    """

    N: int
    derived: int
    printed: int

    @property
    def agree(self) -> bool:
        return self.derived == self.printed


def digital_P(spec: DigitalSpec, n: int, N: int, init) -> DigitalPrediction:
    c = digital_coeffs(spec, n, init)
    if N < c.M:
        raise UndefinedValue(f"need N >= M = {c.M}")
    if spec.block_class is BlockClass.MIXED:
        v = _integral(c.d0 * N + c.d1, "linear digital P")
        return DigitalPrediction(N, v, v)
    t = N - c.M
    derived = c.P_M + t * c.d0 + Fraction((n - 1) * t * (t + 1), 2)
    # the summed form equals d3 N^2 + d4 N + d5_derived; assert it so a slip in either shows up
    poly = c.d3 * N * N + c.d4 * N + c.d5_derived
    if poly != derived:
        raise ArithmeticError(f"quadratic expansion {poly} disagrees with summation {derived}")
    printed = c.d3 * N * N + c.d4 * N + c.d5_printed
    return DigitalPrediction(N, _integral(derived, "derived digital P"),
                             _integral(printed, "printed digital P"))
