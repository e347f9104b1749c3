"""Verification suites: closed forms and structural properties against the oracle.

Each function returns a list of :class:`CheckReport`; a suite passes iff all
of its reports pass.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .carrystate import ceil_log
from .closedform import digital_P, digital_P2, digital_threshold, fib_P, fib_P1, fib_P2
from .complexity import ScanPolicy, enumerate_factors, shift_threshold
from .dualities import (
    CheckReport,
    check_balance,
    check_duality,
    check_prefix_sufficiency,
    check_shift_bijection,
)
from .sequences import (
    FIBONACCI,
    BlockClass,
    DigitalSpec,
    fib,
    phi,
    sequence_window,
    tau_power,
)

DIGITAL_FAMILY = [
    (2, (1,)), (2, (0,)), (2, (0, 0)), (2, (1, 1)), (2, (0, 1)),
    (2, (1, 0)), (3, (2, 2)), (3, (0,)), (3, (1, 2)), (3, (0, 2)),
]
DUALITY_PAIRS = [((2, (0, 1)), (2, (1, 0))), ((3, (1, 2)), (3, (1, 0)))]
BALANCE_VIOLATORS = [(2, (0,)), (2, (1, 1))]

SUITES = ("fib", "digital", "duality", "balance", "all")


class _Counts:
    """Memoised oracle ``P(n, N)`` for one sequence."""

    def __init__(self, spec, policy: Optional[ScanPolicy], cache):
        self.spec, self.policy, self.cache = spec, policy, cache
        self._memo: dict[tuple[int, int], int] = {}

    def __call__(self, n: int, N: int) -> int:
        if N < 0:
            return 0
        if (n, N) not in self._memo:
            self._memo[n, N] = len(enumerate_factors(self.spec, n, N, self.policy, self.cache))
        return self._memo[n, N]

    def d1(self, n: int, N: int) -> int:
        return self(n, N) - self(n, N - 1)

    def d2(self, n: int, N: int) -> int:
        return self.d1(n, N) - self.d1(n, N - 1)


def _sweep(name: str, params: dict, cases: Iterable) -> CheckReport:
    """``cases`` yields ``(label, expected, actual)``; stops at the first mismatch."""
    examined = 0
    for label, expected, actual in cases:
        examined += 1
        if expected != actual:
            return CheckReport(name, params, False,
                               {"at": label, "expected": expected, "actual": actual}, examined)
    return CheckReport(name, params, True, None, examined)


def fib_closed_form(n_max: int = 40, N_max: int = 16, policy=None, cache=None) -> CheckReport:
    P = _Counts(FIBONACCI, policy, cache)
    cases = ((f"n={n},N={N}", fib_P(n, N), P(n, N))
             for n in range(1, n_max + 1) for N in range(N_max + 1))
    return _sweep("fib-closed-form", {"n_max": n_max, "N_max": N_max}, cases)


def fib_differences(n_max: int = 30, N_max: int = 16, policy=None, cache=None) -> list[CheckReport]:
    P = _Counts(FIBONACCI, policy, cache)
    params = {"n_max": n_max, "N_max": N_max}
    first = ((f"n={n},N={N}", fib_P1(n, N), P.d1(n, N))
             for n in range(2, n_max + 1) for N in range(phi(n), N_max + 1))
    second = ((f"n={n},N={N}", fib_P2(n, N), P.d2(n, N))
              for n in range(3, n_max + 1) for N in range(phi(n) + 1, N_max + 1))
    parity = ((f"n={n},N={N}", n - 1, fib_P2(n, N) + fib_P2(n, N + 1))
              for n in range(3, n_max + 1) for N in range(phi(n) + 1, N_max + 1))
    return [
        _sweep("fib-first-difference", params, first),
        _sweep("fib-second-difference", params, second),
        _sweep("fib-second-difference-parity-sum", params, parity),
    ]


def prefix_sufficiency(n_max: int = 12, N_max: int = 14, extra: int = 2, policy=None) -> CheckReport:
    examined = 0
    for n in range(1, n_max + 1):
        for N in range(N_max + 1):
            r = check_prefix_sufficiency(n, N, extra, policy)
            examined += r.examined
            if not r.passed:
                r.params = {"n_max": n_max, "N_max": N_max, "extra": extra, "n": n, "N": N}
                return r
    return CheckReport("prefix-sufficiency", {"n_max": n_max, "N_max": N_max, "extra": extra},
                       True, None, examined)


def tau_structure(q_max: int = 10, p_max: int = 18) -> CheckReport:
    def cases():
        for q in range(0, q_max + 1, 2):
            for p in range(p_max + 1):
                u = tau_power(p, q)
                label = f"p={p},q={q}"
                yield label + ":length", fib(p + 1), len(u)
                yield label + ":first", q, u[0]
                yield label + ":last", p + q, u[-1]
                if p >= 2:
                    inner = u[1:-1]
                    yield label + ":interior", True, min(inner) >= q + 1 and max(inner) <= p + q - 1

    return _sweep("tau-power-structure", {"q_max": q_max, "p_max": p_max}, cases())


def digital_tables() -> CheckReport:
    expected = {
        (2, (1,)): (0, 1, 1, 2, 1, 2, 2, 3, 1),
        (2, (1, 1)): (0, 0, 0, 1, 0, 0, 1, 2, 0),
    }
    cases = ((DigitalSpec(k, w).label, want, sequence_window(DigitalSpec(k, w), 0, 9))
             for (k, w), want in expected.items())
    return _sweep("digital-example-table", {"terms": 9}, cases)


def digital_classification(family: Sequence = DIGITAL_FAMILY, n_max: int = 8,
                           policy=None, cache=None) -> list[CheckReport]:
    reports = []
    for k, w in family:
        spec = DigitalSpec(k, w)
        P = _Counts(spec, policy, cache)

        def cases():
            for n in range(1, n_max + 1):
                M = digital_threshold(spec, n)
                for N in range(M, M + 3):
                    yield f"n={n},N={N}", digital_P2(spec, n, N), P.d2(n, N)

        reports.append(_sweep("second-difference-class",
                              {"seq": spec.label, "class": spec.block_class.value, "n_max": n_max},
                              cases()))
    return reports


def digital_extrapolation(family: Sequence = DIGITAL_FAMILY, n_max: int = 8,
                          policy=None, cache=None) -> list[CheckReport]:
    """The derived closed form must match; the printed constant is only reported."""
    reports = []
    for k, w in family:
        spec = DigitalSpec(k, w)
        P = _Counts(spec, policy, cache)
        printed_ok = printed_total = 0
        mismatch = None
        examined = 0
        for n in range(1, n_max + 1):
            M = digital_threshold(spec, n)
            init = (P(n, M), P(n, M - 1))
            for N in (M + 1, M + 2):
                pred = digital_P(spec, n, N, init)
                actual = P(n, N)
                examined += 1
                printed_total += 1
                printed_ok += pred.printed == actual
                if pred.derived != actual and mismatch is None:
                    mismatch = {"at": f"n={n},N={N}", "expected": pred.derived, "actual": actual}
        params = {"seq": spec.label, "class": spec.block_class.value, "n_max": n_max}
        notes = f"printed constant term matches {printed_ok}/{printed_total}"
        reports.append(CheckReport("digital-closed-form", params, mismatch is None, mismatch,
                                   examined, notes))
    return reports


def shift_bijection(family: Sequence = DIGITAL_FAMILY, n_max: int = 6, mixed_only: bool = True,
                    policy=None, cache=None) -> list[CheckReport]:
    reports = []
    for k, w in family:
        spec = DigitalSpec(k, w)
        if mixed_only and spec.block_class is not BlockClass.MIXED:
            continue
        for n in range(1, n_max + 1):
            t = shift_threshold(spec, n)
            for N in (t, t + 1):
                reports.append(check_shift_bijection(spec, n, N, policy, cache))
    return reports


def duality(pairs: Sequence = DUALITY_PAIRS, n_max: int = 5, policy=None, cache=None) -> list[CheckReport]:
    reports = []
    for (k, w), _ in pairs:
        for n in range(1, n_max + 1):
            M = ceil_log(n, k) + 2
            for N in (M, M + 1):
                reports.append(check_duality(k, w, n, N, policy, cache))
    return reports


def balance(family: Sequence = DIGITAL_FAMILY, m_max: int = 10**5,
            violators: Sequence = BALANCE_VIOLATORS, violation_bound: int = 10**4) -> list[CheckReport]:
    reports = []
    for k, w in family:
        spec = DigitalSpec(k, w)
        if spec.block_class is BlockClass.MIXED:
            reports.append(check_balance(spec, m_max))
    for k, w in violators:
        reports.append(check_balance(DigitalSpec(k, w), violation_bound))
    return reports


def run_suite(suite: str, *, n_max: Optional[int] = None, N_max: Optional[int] = None,
              spec: Optional[DigitalSpec] = None, m_max: Optional[int] = None,
              policy=None, cache=None) -> list[CheckReport]:
    """Run one named suite; ``spec`` narrows the digital suites to a single sequence."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    reports: list[CheckReport] = []
    family = [(spec.k, spec.w)] if spec is not None else DIGITAL_FAMILY
    if suite in ("fib", "all"):
        reports.append(fib_closed_form(n_max or 40, N_max or 16, policy, cache))
        reports.extend(fib_differences(min(n_max or 30, 30), N_max or 16, policy, cache))
        reports.append(prefix_sufficiency(min(n_max or 12, 12), min(N_max or 14, 14), 2, policy))
        reports.append(tau_structure())
    if suite in ("digital", "all"):
        if spec is None:
            reports.append(digital_tables())
        reports.extend(digital_classification(family, n_max or 8, policy, cache))
        reports.extend(digital_extrapolation(family, n_max or 8, policy, cache))
    if suite in ("duality", "all"):
        reports.extend(shift_bijection(family, n_max or 6, spec is None, policy, cache))
        if spec is None:
            pairs = DUALITY_PAIRS
        elif spec.block_class is BlockClass.MIXED:
            pairs = [((spec.k, spec.w), None)]
        else:
            pairs = []
        reports.extend(duality(pairs, n_max or 5, policy, cache))
    if suite in ("balance", "all"):
        if spec is None:
            reports.extend(balance(m_max=m_max or 10**5))
        else:
            reports.append(check_balance(spec, m_max or 10**5))
    return reports


def describe(reports: Iterable[CheckReport]) -> str:
    return "\n".join(r.line() for r in reports)


__all__ = [
    "DIGITAL_FAMILY", "DUALITY_PAIRS", "SUITES", "balance", "describe", "digital_classification",
    "digital_extrapolation", "digital_tables", "duality", "fib_differences", "fib_closed_form",
    "prefix_sufficiency", "run_suite", "shift_bijection", "tau_structure",
]
