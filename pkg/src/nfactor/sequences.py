"""The two sequence families: the infinite Fibonacci word and digital sequences.

The infinite Fibonacci word is the fixed point of the morphism

    2i   -> (2i)(2i+1)
    2i+1 -> (2i+2)

started from 0.  A digital sequence ``s_{k,w}`` maps ``m`` to the number of
occurrences of the block ``w`` in the base-``k`` digits of ``m``.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import BadBase, BudgetExceeded, DigitOutOfRange, EmptyPattern, UndefinedValue
from .words import Word, base_k_repr, format_word, occurrences, parse_word

DEFAULT_PREFIX_BUDGET = 10**7


def tau_image(letter: int) -> Word:
    if letter < 0:
        raise ValueError("letters are nonnegative")
    if letter % 2 == 0:
        return (letter, letter + 1)
    return (letter + 1,)


def tau_apply(u: Word) -> Word:
    return tuple(x for letter in u for x in tau_image(letter))


class FibonacciModel:
    """Fibonacci numbers (``F_0 = F_1 = 1``) and a lazily grown prefix of the word.

    The prefix cache is built from the concatenation identity
    ``tau^(p+1)(0) = tau^p(0) . (tau^(p-1)(0) + 2)`` rather than by applying the
    morphism, so :func:`tau_power` serves as an independent check of it.
    """

    def __init__(self, budget: int = DEFAULT_PREFIX_BUDGET):
        self.budget = budget
        self._fib = [1, 1]
        self._levels: list[list[int]] = [[0], [0, 1]]
        self._lock = threading.Lock()

    def fib(self, i: int) -> int:
        if i < 0:
            raise UndefinedValue(f"F_{i} is undefined")
        while len(self._fib) <= i:
            self._fib.append(self._fib[-1] + self._fib[-2])
        return self._fib[i]

    def phi(self, n: int) -> int:
        """Largest ``i`` with ``F_i < n``; undefined for ``n <= 1``."""
        if n <= 1:
            raise UndefinedValue(f"phi({n}) is undefined: no Fibonacci number is below {n}")
        i = 1
        while self.fib(i + 1) < n:
            i += 1
        return i

    def level_for_length(self, length: int) -> int:
        """Smallest ``L`` with ``|tau^L(0)| = F_(L+1) >= length``."""
        level = 0
        while self.fib(level + 1) < length:
            level += 1
        return level

    def prefix(self, level: int) -> list[int]:
        """``tau^level(0)`` as a list.  Callers must not mutate the result."""
        if level < 0:
            raise ValueError("level must be nonnegative")
        if self.fib(level + 1) > self.budget:
            raise BudgetExceeded(
                f"tau^{level}(0) has {self.fib(level + 1)} letters; budget is {self.budget}"
            )
        with self._lock:
            while len(self._levels) <= level:
                prev, prev2 = self._levels[-1], self._levels[-2]
                self._levels.append(prev + [x + 2 for x in prev2])
        return self._levels[level]

    def window(self, start: int, length: int) -> Word:
        if length == 0:
            return ()
        level = self.level_for_length(start + length)
        return tuple(self.prefix(level)[start : start + length])


_default_model = FibonacciModel()


def default_model() -> FibonacciModel:
    return _default_model


def fib(i: int) -> int:
    return _default_model.fib(i)


def phi(n: int) -> int:
    return _default_model.phi(n)


def tau_power(p: int, q: int, budget: int = DEFAULT_PREFIX_BUDGET) -> Word:
    """``tau^p(q)`` for an even starting letter, by repeated morphism application."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    if q < 0 or q % 2:
        raise ValueError("the starting letter must be even")
    if fib(p + 1) > budget:
        raise BudgetExceeded(f"tau^{p}({q}) has {fib(p + 1)} letters; budget is {budget}")
    u: Word = (q,)
    for _ in range(p):
        u = tau_apply(u)
    return u


def fib_prefix(level: int, model: FibonacciModel | None = None) -> Word:
    return tuple((model or _default_model).prefix(level))


class BlockClass(enum.Enum):
    ZERO_POWER = "zero-power"
    MAX_POWER = "max-power"
    MIXED = "mixed"


@dataclass(frozen=True)
class FibonacciSpec:
    @property
    def label(self) -> str:
        return "fib"


FIBONACCI = FibonacciSpec()


@dataclass(frozen=True)
class DigitalSpec:
    """The digital sequence counting block ``w`` in base ``k``."""

    k: int
    w: Word = field()

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(d) for d in self.w))
        if self.k < 2:
            raise BadBase(f"base must be >= 2, got {self.k}")
        if not self.w:
            raise EmptyPattern("the block must be nonempty")
        if any(not 0 <= d < self.k for d in self.w):
            raise DigitOutOfRange(f"block {self.w} is not over digits 0..{self.k - 1}")

    @property
    def q(self) -> int:
        return len(self.w)

    @property
    def block_class(self) -> BlockClass:
        if all(d == 0 for d in self.w):
            return BlockClass.ZERO_POWER
        if all(d == self.k - 1 for d in self.w):
            return BlockClass.MAX_POWER
        return BlockClass.MIXED

    @property
    def label(self) -> str:
        return f"digital:k={self.k}:w={format_word(self.w)}"


SequenceSpec = Union[FibonacciSpec, DigitalSpec]


def parse_spec_label(label: str) -> SequenceSpec:
    """Inverse of ``spec.label``."""
    if label == "fib":
        return FIBONACCI
    kind, k, w = label.split(":")
    if kind != "digital" or not k.startswith("k=") or not w.startswith("w="):
        raise ValueError(f"unrecognised sequence label {label!r}")
    return DigitalSpec(int(k[2:]), parse_word(w[2:]))


def digital_term(spec: DigitalSpec, m: int) -> int:
    return occurrences(base_k_repr(m, spec.k), spec.w)


def digital_terms(spec: DigitalSpec, start: int, stop: int) -> np.ndarray:
    """Vectorised ``s(m)`` for ``start <= m < stop`` (int64 array)."""
    if stop <= start:
        return np.zeros(0, dtype=np.int64)
    k, w, q = spec.k, spec.w, spec.q
    m = np.arange(start, stop, dtype=np.int64)
    ndigits = len(base_k_repr(stop - 1, k))
    powers = [k**p for p in range(ndigits)]
    digits = [(m // powers[p]) % k for p in range(ndigits)]
    counts = np.zeros(len(m), dtype=np.int64)
    for p in range(ndigits - q + 1):
        top = p + q - 1
        hit = np.ones(len(m), dtype=bool)
        # the leading digit sits at the highest position; w[0] is leading
        for t in range(q):
            hit &= digits[top - t] == w[t]
        if top > 0:
            hit &= m >= powers[top]
        counts += hit
    return counts


def sequence_window(spec: SequenceSpec, start: int, length: int,
                    model: FibonacciModel | None = None) -> Word:
    """``a(start) ... a(start+length-1)`` for either sequence family."""
    if start < 0 or length < 0:
        raise ValueError("start and length must be nonnegative")
    if length == 0:
        return ()
    if isinstance(spec, FibonacciSpec):
        return (model or _default_model).window(start, length)
    return tuple(digital_term(spec, m) for m in range(start, start + length))
