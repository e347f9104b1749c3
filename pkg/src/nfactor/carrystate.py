"""Exact factor enumeration for digital sequences via prefix carry states.

Split every ``m >= k^j`` (with ``k^j >= n``) as ``m = a*k^j + r``.  Inside a
window ``m .. m+n-1`` the high part is either ``a`` or, after one carry,
``a+1``, and the block count of ``m+i`` is

    count(a) + count(tail(a) . pad_j(r+i))          (no carry)
    count(a+1) + count(tail(a+1) . pad_j(r+i-k^j))  (carry)

where ``tail`` keeps the last ``q-1`` digits.  So the window only depends on
the state ``(count(a), tail(a), count(a+1), tail(a+1))``.  Appending a digit
maps states to states, the counts never decrease, and counts above the cap
``N`` can be clamped, so the reachable state set is finite.  Closing it under
digit appends visits every high part there is; windows with ``m < k^j`` are
enumerated directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .sequences import DigitalSpec, digital_term
from .words import Word


def ceil_log(n: int, k: int) -> int:
    """Smallest ``e >= 0`` with ``k**e >= n`` (exact integer ceil of log_k n)."""
    if n < 1:
        raise ValueError("n must be positive")
    e, p = 0, 1
    while p < n:
        p *= k
        e += 1
    return e


@dataclass(frozen=True)
class CarryState:
    count: int
    tail: Word
    count_next: int
    tail_next: Word


@dataclass
class ClosureReport:
    """Per digit length: how many new states were found."""

    cap: int
    new_states_by_length: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.new_states_by_length)

    @property
    def saturated_at(self) -> int:
        # digit length of the last level that contributed a state
        return len(self.new_states_by_length)


def _pad(v: int, j: int, k: int) -> Word:
    digits = []
    for _ in range(j):
        v, d = divmod(v, k)
        digits.append(d)
    return tuple(reversed(digits))


def _extend(count: int, tail: Word, digit: int, w: Word, cap: int) -> tuple[int, Word]:
    q = len(w)
    ext = tail + (digit,)
    if len(ext) == q and ext == w:
        count = min(count + 1, cap)
    return count, (ext[len(ext) - (q - 1):] if q > 1 else ())


def _initial_states(spec: DigitalSpec, cap: int) -> set[CarryState]:
    k, w = spec.k, spec.w
    out = set()
    for d in range(1, k):
        c, t = _extend(0, (), d, w, cap)
        if d < k - 1:
            cn, tn = _extend(0, (), d + 1, w, cap)
        else:
            cn, tn = _extend(0, (), 1, w, cap)
            cn, tn = _extend(cn, tn, 0, w, cap)
        out.add(CarryState(c, t, cn, tn))
    return out


def _successors(s: CarryState, spec: DigitalSpec, cap: int):
    k, w = spec.k, spec.w
    for e in range(k):
        c, t = _extend(s.count, s.tail, e, w, cap)
        if e < k - 1:
            cn, tn = _extend(s.count, s.tail, e + 1, w, cap)
        else:
            cn, tn = _extend(s.count_next, s.tail_next, 0, w, cap)
        yield CarryState(c, t, cn, tn)


def reachable_states(spec: DigitalSpec, N: int) -> tuple[set[CarryState], ClosureReport]:
    """All carry states of high parts ``a >= 1`` that can still yield letters ``<= N``.

    Counts are clamped to ``N + 1``; a state whose two counts both exceed ``N``
    can never produce an admissible window, nor can any of its descendants.
    """
    cap = N + 1
    report = ClosureReport(cap=cap)

    def alive(s: CarryState) -> bool:
        return min(s.count, s.count_next) <= N

    frontier = {s for s in _initial_states(spec, cap) if alive(s)}
    seen = set(frontier)
    report.new_states_by_length.append(len(frontier))
    while frontier:
        nxt = set()
        for s in frontier:
            for t in _successors(s, spec, cap):
                if alive(t) and t not in seen:
                    seen.add(t)
                    nxt.add(t)
        if nxt:
            report.new_states_by_length.append(len(nxt))
        frontier = nxt
    return seen, report


def exact_factors(spec: DigitalSpec, n: int, N: int) -> tuple[set[Word], ClosureReport]:
    """The complete set of length-``n`` factors of ``s_{k,w}`` with letters ``<= N``."""
    if n < 1:
        raise ValueError("factor length must be >= 1")
    k, w = spec.k, spec.w
    j = ceil_log(n, k)
    base = k**j
    found: set[Word] = set()
    if N < 0:
        return found, ClosureReport(cap=N + 1)

    # high part a = 0: the window lies entirely below 2*k^j
    small = [digital_term(spec, m) for m in range(base + n - 1)]
    for m in range(base):
        u = tuple(small[m : m + n])
        if max(u) <= N:
            found.add(u)

    states, report = reachable_states(spec, N)
    low: dict[tuple[Word, int], int] = {}

    def contribution(tail: Word, v: int) -> int:
        key = (tail, v)
        if key not in low:
            digits = tail + _pad(v, j, k)
            q = len(w)
            low[key] = sum(1 for i in range(len(digits) - q + 1) if digits[i : i + q] == w)
        return low[key]

    for s in states:
        for r in range(base):
            u = []
            for i in range(n):
                v = r + i
                if v < base:
                    x = s.count + contribution(s.tail, v)
                else:
                    x = s.count_next + contribution(s.tail_next, v - base)
                if x > N:
                    break
                u.append(x)
            else:
                found.add(tuple(u))
    return found, report
