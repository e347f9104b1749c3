"""Finite words over the nonnegative integers.

A word is a plain ``tuple`` of ints.  Tuples are hashable, so factor sets
are ordinary Python sets and the functions here stay pure.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import BadBase, DigitOutOfRange, EmptyPattern, NegativeLetter

Word = tuple[int, ...]

EMPTY: Word = ()


def word(letters: Iterable[int]) -> Word:
    w = tuple(int(x) for x in letters)
    for x in w:
        if x < 0:
            raise NegativeLetter(f"letter {x} is negative")
    return w


def slice_word(u: Sequence[int], i: int, j: int) -> Word:
    """Return ``u[i..j]`` inclusive.

    Out-of-range requests give the empty word instead of a truncated one:
    any ``j`` past the last index yields ``()``, as does ``i > j``.
    """
    if i < 0:
        raise ValueError("start index must be nonnegative")
    if i > j or j > len(u) - 1:
        return EMPTY
    return tuple(u[i : j + 1])


def occurrences(y: Sequence[int], x: Sequence[int]) -> int:
    """Number of (possibly overlapping) occurrences of ``x`` in ``y``."""
    q = len(x)
    if q == 0:
        raise EmptyPattern("cannot count occurrences of the empty word")
    x = tuple(x)
    y = tuple(y)
    return sum(1 for i in range(len(y) - q + 1) if y[i : i + q] == x)


def _check_base(k: int) -> None:
    if k < 2:
        raise BadBase(f"base must be >= 2, got {k}")


def _check_digits(u: Sequence[int], k: int) -> None:
    for d in u:
        if not 0 <= d < k:
            raise DigitOutOfRange(f"digit {d} not in [0, {k})")


def base_k_repr(m: int, k: int) -> Word:
    """Most-significant-first base-``k`` digits of ``m``; ``0`` maps to ``(0,)``."""
    _check_base(k)
    if m < 0:
        raise ValueError("cannot represent a negative integer")
    if m == 0:
        return (0,)
    digits = []
    while m:
        m, d = divmod(m, k)
        digits.append(d)
    return tuple(reversed(digits))


def base_k_realize(u: Sequence[int], k: int) -> int:
    """Evaluate a digit word in base ``k``.  Leading zeros are allowed, ``() -> 0``."""
    _check_base(k)
    _check_digits(u, k)
    value = 0
    for d in u:
        value = value * k + d
    return value


def conj(u: Sequence[int], k: int) -> Word:
    """Digitwise complement ``k-1-u_i``."""
    _check_base(k)
    _check_digits(u, k)
    return tuple(k - 1 - d for d in u)


def mirr(u: Sequence[int]) -> Word:
    return tuple(reversed(u))


def shift_letters(u: Sequence[int], delta: int) -> Word:
    """Add ``delta`` (``+1`` or ``-1``) to every letter."""
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    if delta == -1 and any(x == 0 for x in u):
        raise NegativeLetter("cannot decrement the letter 0")
    return tuple(x + delta for x in u)


def format_word(u: Sequence[int]) -> str:
    """Text form used in CSV/JSON: letters joined by ``'.'`` (``''`` for the empty word)."""
    return ".".join(str(x) for x in u)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return EMPTY
    return word(int(part) for part in text.split("."))


def parse_block(text: str, k: int) -> Word:
    """Parse a digit block: contiguous digits for ``k <= 10``, dot-separated otherwise."""
    text = text.strip()
    if not text:
        raise EmptyPattern("block must be nonempty")
    if "." in text or k > 10:
        u = parse_word(text)
    else:
        u = tuple(int(c) for c in text)
    _check_digits(u, k)
    return u
