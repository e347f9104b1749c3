"""Brute-force N-factor complexity: enumerate factor sets and count them.

``F(n, N)`` is the set of distinct length-``n`` factors whose letters are all
``<= N``; ``P(n, N)`` is its size, ``P1``/``P2`` the first and second
differences in ``N`` (with ``F(n, -1)`` empty).

For the Fibonacci word, every factor of ``F(n, N)`` already occurs in the
prefix ``tau^(N+1)(0)``, so scanning that prefix is exact.  Digital sequences
are enumerated either exactly (carry-state closure, see :mod:`carrystate`)
or by a brute-force scan of ``[0, k^L)`` escalated until stable.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .carrystate import ceil_log, exact_factors
from .errors import BudgetExceeded, ThresholdViolation, UnsupportedSpec
from .sequences import (
    DEFAULT_PREFIX_BUDGET,
    DigitalSpec,
    FibonacciSpec,
    SequenceSpec,
    default_model,
    digital_terms,
    fib,
    parse_spec_label,
)
from .words import Word, format_word, parse_word, shift_letters

log = logging.getLogger(__name__)

DEFAULT_SCAN_BUDGET = 1 << 24
_CHUNK = 1 << 18


@dataclass(frozen=True)
class ScanPolicy:
    """How far to look for factors.

    ``digital_method`` is ``"exact"`` (carry-state closure, no bound needed) or
    ``"scan"`` (sliding window over ``m < k^L``, starting at ``initial_digits``
    or the default ``ceil(log_k n) + (N+2)|w| + 2`` and growing by
    ``escalation`` digits per round until two rounds agree).
    """

    prefix_budget: int = DEFAULT_PREFIX_BUDGET
    digital_method: str = "exact"
    initial_digits: Optional[int] = None
    escalation: int = 1
    max_budget: int = DEFAULT_SCAN_BUDGET
    workers: int = 1

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")
        if self.digital_method not in ("exact", "scan"):
            raise ValueError(f"unknown digital method {self.digital_method!r}")
        if self.escalation < 1:
            raise ValueError("escalation must add at least one digit")

    def fib_level(self, N: int) -> int:
        return N + 1

    def digital_l0(self, spec: DigitalSpec, n: int, N: int) -> int:
        if self.initial_digits is not None:
            return self.initial_digits
        return ceil_log(n, spec.k) + (N + 2) * spec.q + 2

    def bound_key(self, spec: SequenceSpec, n: int, N: int) -> str:
        """The bound a cell will be computed under, known before computing it."""
        if isinstance(spec, FibonacciSpec):
            return f"tau^{self.fib_level(N)}(0)"
        if self.digital_method == "exact":
            return "carry-closure"
        return f"scan:L0={self.digital_l0(spec, n, N)}:+{self.escalation}"


@dataclass(frozen=True)
class FactorSet:
    spec: SequenceSpec
    n: int
    N: int
    factors: frozenset
    bound: str
    new_only: bool = False

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, u) -> bool:
        return tuple(u) in self.factors

    def sorted(self) -> list[Word]:
        return sorted(self.factors)

    def to_json(self) -> dict:
        return {
            "seq": self.spec.label,
            "n": self.n,
            "N": self.N,
            "bound": self.bound,
            "new_only": self.new_only,
            "factors": [format_word(u) for u in self.sorted()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FactorSet":
        factors = []
        for item in data["factors"]:
            if isinstance(item, str):
                factors.append(parse_word(item))
            elif len(item) == 1 and isinstance(item[0], str):
                factors.append(parse_word(item[0]))
            else:
                factors.append(tuple(int(x) for x in item))
        return cls(
            spec=parse_spec_label(data["seq"]),
            n=int(data["n"]),
            N=int(data["N"]),
            factors=frozenset(factors),
            bound=str(data["bound"]),
            new_only=bool(data.get("new_only", False)),
        )


@dataclass(frozen=True)
class ComplexityCell:
    n: int
    N: int
    P: int
    P1: Optional[int] = None
    P2: Optional[int] = None
    method: str = "oracle"
    bound: str = ""

    def csv_row(self) -> list[str]:
        def opt(x):
            return "" if x is None else str(x)

        return [str(self.n), str(self.N), str(self.P), opt(self.P1), opt(self.P2),
                self.method, self.bound]

    def to_json(self) -> dict:
        return {"n": self.n, "N": self.N, "P": self.P, "P1": self.P1, "P2": self.P2,
                "method": self.method, "bound": self.bound}


@dataclass
class StabilityReport:
    method: str
    rounds: list[tuple[int, int]] = field(default_factory=list)  # (digit length, measure)
    stable: bool = False

    def to_json(self) -> dict:
        return {"method": self.method, "rounds": [list(r) for r in self.rounds],
                "stable": self.stable}


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, start = [], 0
    for p in range(parts):
        stop = start + step + (1 if p < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def _scan_chunk(seq, n: int, N: int, start: int, stop: int) -> set[Word]:
    # windows starting in [start, stop); the slice reads n-1 letters past stop
    found = set()
    next_ok = start
    for i in range(start, min(stop + n - 1, len(seq))):
        if seq[i] > N:
            next_ok = i + 1
        elif i - n + 1 >= next_ok and i - n + 1 < stop:
            found.add(tuple(seq[i - n + 1 : i + 1]))
    return found


def scan_windows(seq, n: int, N: int, workers: int = 1) -> set[Word]:
    """Distinct length-``n`` windows of ``seq`` whose letters are all ``<= N``.

    The start positions are split into ``workers`` chunks that overlap by
    ``n - 1`` letters; the union is independent of the split.
    """
    total = len(seq) - n + 1
    if total <= 0:
        return set()
    ranges = _chunks(total, workers)
    if len(ranges) == 1:
        return _scan_chunk(seq, n, N, 0, total)
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        parts = pool.map(lambda r: _scan_chunk(seq, n, N, r[0], r[1]), ranges)
        out: set[Word] = set()
        for part in parts:
            out |= part
    return out


def _fib_factors(n: int, N: int, policy: ScanPolicy, level: Optional[int] = None) -> FactorSet:
    level = policy.fib_level(N) if level is None else level
    if fib(level + 1) > policy.prefix_budget:
        raise BudgetExceeded(
            f"prefix tau^{level}(0) has {fib(level + 1)} letters, budget {policy.prefix_budget}")
    seq = default_model().prefix(level)
    found = scan_windows(seq, n, N, policy.workers)
    return FactorSet(FibonacciSpec(), n, N, frozenset(found), f"tau^{level}(0)")


def fib_factors_at_level(n: int, N: int, level: int,
                         policy: Optional[ScanPolicy] = None) -> FactorSet:
    """``F(n, N)`` restricted to the prefix ``tau^level(0)``."""
    return _fib_factors(n, N, policy or ScanPolicy(), level)


def _scan_segment(spec: DigitalSpec, lo: int, hi: int, head: np.ndarray, n: int, N: int) -> set[Word]:
    terms = digital_terms(spec, lo, hi)
    if len(head):
        terms = np.concatenate([head, terms])
    if len(terms) < n:
        return set()
    windows = np.lib.stride_tricks.sliding_window_view(terms, n)
    windows = windows[windows.max(axis=1) <= N]
    if not len(windows):
        return set()
    return {tuple(int(x) for x in row) for row in np.unique(windows, axis=0)}


def _scan_range(spec: DigitalSpec, lo: int, hi: int, n: int, N: int, workers: int) -> set[Word]:
    """Windows whose start lies in ``[lo - (n-1), hi - (n-1))``, i.e. all windows ending in ``[lo, hi)``."""
    pieces = []
    start = lo
    while start < hi:
        stop = min(hi, start + _CHUNK)
        pieces.append((start, stop))
        start = stop

    def work(piece):
        a, b = piece
        head_lo = max(0, a - (n - 1))
        head = digital_terms(spec, head_lo, a)
        return _scan_segment(spec, a, b, head, n, N)

    if workers == 1 or len(pieces) == 1:
        parts = map(work, pieces)
        out: set[Word] = set()
        for p in parts:
            out |= p
        return out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        out = set()
        for p in pool.map(work, pieces):
            out |= p
        return out


def digital_scan_stabilize(spec: DigitalSpec, n: int, N: int,
                           policy: Optional[ScanPolicy] = None) -> tuple[FactorSet, StabilityReport]:
    """Brute-force ``F(n, N)`` over ``m < k^L`` for growing ``L`` until two rounds agree.

    Rounds ``L0``, ``L0 + e``, ``L0 + 2e``, ... are scanned (``e`` is the
    escalation step); the set is returned once the last two rounds coincide,
    which needs at least three rounds.  Each round only scans the new range.
    """
    policy = policy or ScanPolicy(digital_method="scan")
    if not isinstance(spec, DigitalSpec):
        raise UnsupportedSpec("stabilised scanning applies to digital sequences only")
    report = StabilityReport(method="scan")
    L = policy.digital_l0(spec, n, N)
    found: set[Word] = set()
    scanned = 0
    previous: Optional[set[Word]] = None
    while True:
        limit = spec.k**L
        if limit > policy.max_budget:
            raise BudgetExceeded(
                f"scan of m < {spec.k}^{L} exceeds budget {policy.max_budget} "
                f"(rounds so far: {report.rounds})")
        found |= _scan_range(spec, scanned, limit, n, N, policy.workers)
        scanned = limit
        report.rounds.append((L, len(found)))
        if previous is not None and len(report.rounds) >= 3 and previous == found:
            report.stable = True
            break
        previous = set(found)
        L += policy.escalation
    log.debug("scan %s n=%d N=%d stabilised: %s", spec.label, n, N, report.rounds)
    fs = FactorSet(spec, n, N, frozenset(found), f"scan:L={L}")
    return fs, report


def _digital_exact(spec: DigitalSpec, n: int, N: int) -> tuple[FactorSet, StabilityReport]:
    found, closure = exact_factors(spec, n, N)
    report = StabilityReport(method="exact", stable=True)
    total = 0
    for length, new in enumerate(closure.new_states_by_length, start=1):
        total += new
        report.rounds.append((length, total))
    fs = FactorSet(spec, n, N, frozenset(found), "carry-closure")
    return fs, report


def enumerate_factors(spec: SequenceSpec, n: int, N: int,
                      policy: Optional[ScanPolicy] = None, cache=None) -> FactorSet:
    """``F(n, N)``: distinct length-``n`` factors with every letter ``<= N``."""
    if n < 1:
        raise ValueError("factor length must be >= 1")
    policy = policy or ScanPolicy()
    if N < 0:
        return FactorSet(spec, n, N, frozenset(), "empty")
    if cache is not None:
        hit = cache.get(spec, n, N, policy.bound_key(spec, n, N))
        if hit is not None:
            return hit
    if isinstance(spec, FibonacciSpec):
        fs = _fib_factors(n, N, policy)
    elif policy.digital_method == "exact":
        fs, _ = _digital_exact(spec, n, N)
    else:
        fs, _ = digital_scan_stabilize(spec, n, N, policy)
    if cache is not None:
        cache.put(fs, policy.bound_key(spec, n, N))
    return fs


def enumerate_new_factors(spec: SequenceSpec, n: int, N: int,
                          policy: Optional[ScanPolicy] = None, cache=None) -> FactorSet:
    """``F1(n, N) = F(n, N) \\ F(n, N-1)``: the factors in which ``N`` first appears."""
    cur = enumerate_factors(spec, n, N, policy, cache)
    prev = enumerate_factors(spec, n, N - 1, policy, cache)
    return FactorSet(spec, n, N, cur.factors - prev.factors, cur.bound, new_only=True)


def cells_from_counts(n: int, counts: Iterable[int], bounds: Iterable[str],
                      method: str = "oracle") -> list[ComplexityCell]:
    cells = []
    p_prev, d_prev = 0, 0
    for N, (P, bound) in enumerate(zip(counts, bounds)):
        d = P - p_prev
        cells.append(ComplexityCell(n, N, P, d, d - d_prev if N >= 1 else None, method, bound))
        p_prev, d_prev = P, d
    return cells


def complexity_row(spec: SequenceSpec, n: int, N_max: int,
                   policy: Optional[ScanPolicy] = None, cache=None) -> list[ComplexityCell]:
    """Cells for ``N = 0 .. N_max``; ``P2`` is left empty at ``N = 0``."""
    if n < 1:
        raise ValueError("factor length must be >= 1")
    sets = [enumerate_factors(spec, n, N, policy, cache) for N in range(N_max + 1)]
    return cells_from_counts(n, [len(s) for s in sets], [s.bound for s in sets])


def shift_threshold(spec: DigitalSpec, n: int) -> int:
    """Smallest cap from which ``u -> u + 1`` maps ``F1(n, N)`` onto ``F1(n, N+1)``."""
    base = ceil_log(n, spec.k)
    if (spec.k, spec.w) == (2, (1,)):
        return base + 2
    return base + 1


def shift_extrapolate(f1: FactorSet, threshold: Optional[int] = None) -> FactorSet:
    """Predict ``F1(n, N+1)`` from a complete ``F1(n, N)`` by adding 1 to every letter."""
    if not isinstance(f1.spec, DigitalSpec):
        raise UnsupportedSpec("the shift bijection is a property of digital sequences")
    if threshold is None:
        threshold = shift_threshold(f1.spec, f1.n)
    if f1.N < threshold:
        raise ThresholdViolation(f"N={f1.N} is below the shift threshold {threshold}")
    shifted = frozenset(shift_letters(u, +1) for u in f1.factors)
    return FactorSet(f1.spec, f1.n, f1.N + 1, shifted, f"shift({f1.bound})", new_only=True)
