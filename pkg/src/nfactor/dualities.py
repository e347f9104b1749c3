"""Structural checks: shift bijection, conjugate/mirror duality, balance, prefix sufficiency.

Checkers only ever consume oracle factor sets, never closed-form values.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .carrystate import ceil_log
from .complexity import (
    FactorSet,
    ScanPolicy,
    enumerate_new_factors,
    fib_factors_at_level,
    shift_threshold,
)
from .errors import BlockClassError, ThresholdViolation, UnsupportedSpec
from .sequences import BlockClass, DigitalSpec, digital_terms
from .words import base_k_realize, conj, format_word, mirr, shift_letters


@dataclass
class CheckReport:
    check: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    witness: Any = None
    examined: int = 0
    notes: str = ""

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"check": self.check, "params": self.params, "verdict": self.verdict,
               "witness": self.witness, "examined": self.examined}
        if self.notes:
            out["notes"] = self.notes
        return out

    def line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        text = f"{self.verdict.upper():4} {self.check} [{params}] examined={self.examined}"
        if self.witness is not None:
            text += f" witness={self.witness}"
        if self.notes:
            text += f" ({self.notes})"
        return text


def _first(words) -> Optional[str]:
    words = sorted(words)
    return format_word(words[0]) if words else None


def _missing_letter(f1: FactorSet) -> Optional[str]:
    """A member of an F1 set that does not contain the letter N, if any."""
    bad = [u for u in f1.factors if f1.N not in u]
    return _first(bad)


def _compare(check: str, params: dict, expected: frozenset, actual: frozenset,
             examined: int) -> CheckReport:
    if expected == actual:
        return CheckReport(check, params, True, None, examined)
    only_expected = _first(expected - actual)
    only_actual = _first(actual - expected)
    witness = {"missing": only_expected, "unexpected": only_actual}
    return CheckReport(check, params, False, witness, examined)


def check_shift_bijection(spec, n: int, N: int, policy: Optional[ScanPolicy] = None,
                          cache=None) -> CheckReport:
    """``u in F1(n, N)  <=>  u+1 in F1(n, N+1)``, both sides enumerated.

    The shifted set is compared with the members of ``F1(n, N+1)`` that have
    the form ``u+1``: no letter below 1 (below 2 for ``(k, w) = (2, 1)``,
    whose domain excludes the letter 0).  For mixed blocks every member has
    that form and the check is a plain set equality; for zero/max-power blocks
    the excluded members are exactly the ones counted by the second difference,
    and their number is reported in ``notes``.
    """
    if not isinstance(spec, DigitalSpec):
        raise UnsupportedSpec("the shift bijection is only checked for digital sequences")
    threshold = shift_threshold(spec, n)
    if N < threshold:
        raise ThresholdViolation(f"N={N} is below the shift threshold {threshold}")
    lowest = 1 if (spec.k, spec.w) == (2, (1,)) else 0
    params = {"seq": spec.label, "n": n, "N": N, "threshold": threshold}
    lower = enumerate_new_factors(spec, n, N, policy, cache)
    upper = enumerate_new_factors(spec, n, N + 1, policy, cache)
    examined = len(lower) + len(upper)
    for f1 in (lower, upper):
        w = _missing_letter(f1)
        if w is not None:
            return CheckReport("shift-bijection", params, False, {"lacks-N": w, "N": f1.N},
                               examined)
    domain = frozenset(u for u in lower.factors if min(u) >= lowest)
    image = frozenset(v for v in upper.factors if min(v) >= lowest + 1)
    shifted = frozenset(shift_letters(u, +1) for u in domain)
    report = _compare("shift-bijection", params, shifted, image, examined)
    report.notes = f"|F1(N)|={len(lower)} outside-image={len(upper) - len(image)}"
    return report


def check_duality(k: int, w, n: int, N: int, policy: Optional[ScanPolicy] = None,
                  cache=None) -> CheckReport:
    """``F1`` of ``s_{k,conj(w)}`` is the mirror image of ``F1`` of ``s_{k,w}``."""
    spec = DigitalSpec(k, w)
    if spec.block_class is not BlockClass.MIXED:
        raise BlockClassError(f"duality needs a mixed block, {spec.w} is {spec.block_class.value}")
    threshold = ceil_log(n, k) + 2
    if N < threshold:
        raise ThresholdViolation(f"N={N} is below the duality threshold {threshold}")
    dual = DigitalSpec(k, conj(spec.w, k))
    params = {"k": k, "w": format_word(spec.w), "conj": format_word(dual.w), "n": n, "N": N}
    f1 = enumerate_new_factors(spec, n, N, policy, cache)
    g1 = enumerate_new_factors(dual, n, N, policy, cache)
    for s in (f1, g1):
        bad = _missing_letter(s)
        if bad is not None:
            return CheckReport("duality", params, False, {"lacks-N": bad, "seq": s.spec.label},
                               len(f1) + len(g1))
    mirrored = frozenset(mirr(u) for u in f1.factors)
    report = _compare("duality", params, mirrored, g1.factors, len(f1) + len(g1))
    report.notes = f"|F1|={len(f1)} |F1 dual|={len(g1)}"
    return report


def check_balance(spec: DigitalSpec, m_max: int) -> CheckReport:
    """Mixed blocks: ``|s(m+1) - s(m)| <= 1`` for all ``m < m_max``.

    Zero- and max-power blocks: a jump larger than 1 must exist below ``m_max``.
    """
    if not isinstance(spec, DigitalSpec):
        raise UnsupportedSpec("balance is a property of digital sequences")
    s = digital_terms(spec, 0, m_max + 1)
    jumps = np.abs(np.diff(s))
    big = np.nonzero(jumps > 1)[0]
    params = {"seq": spec.label, "m_max": m_max, "class": spec.block_class.value}
    if spec.block_class is BlockClass.MIXED:
        if len(big):
            m = int(big[0])
            return CheckReport("balance", params, False,
                               {"m": m, "s(m)": int(s[m]), "s(m+1)": int(s[m + 1])}, m_max)
        return CheckReport("balance", params, True, None, m_max)
    if not len(big):
        return CheckReport("balance-violation", params, False,
                           {"no jump > 1 below": m_max}, m_max)
    m = int(big[0])
    return CheckReport("balance-violation", params, True, None, m_max,
                       notes=f"first jump at m={m}: s(m)={int(s[m])}, s(m+1)={int(s[m + 1])}")


def check_prefix_sufficiency(n: int, N: int, extra_levels: int = 2,
                             policy: Optional[ScanPolicy] = None) -> CheckReport:
    """Factors of ``tau^(N+1)(0)`` equal those of ``tau^(N+1+extra)(0)`` (letters ``<= N``)."""
    base = fib_factors_at_level(n, N, N + 1, policy)
    longer = fib_factors_at_level(n, N, N + 1 + extra_levels, policy)
    params = {"n": n, "N": N, "extra": extra_levels}
    return _compare("prefix-sufficiency", params, base.factors, longer.factors,
                    len(base) + len(longer))


def _conj_identity_holds(u, v, a, k) -> bool:
    lhs = base_k_realize(u, k) - base_k_realize(v, k)
    rhs = base_k_realize(tuple(a) + conj(v, k), k) - base_k_realize(tuple(a) + conj(u, k), k)
    return lhs == rhs


def check_conj_arithmetic(k: int, trials: int = 2000, max_len: int = 4, max_prefix: int = 2,
                          seed: int = 0) -> CheckReport:
    """``[u]_k - [v]_k == [a conj(v)]_k - [a conj(u)]_k`` for equal-length ``u``, ``v``.

    Exhaustive for ``k <= 3``; otherwise ``trials`` random triples from a seeded RNG.
    """
    params = {"k": k}
    digits = range(k)
    examined = 0
    if k <= 3:
        params["mode"] = "exhaustive"
        prefixes = [a for la in range(max_prefix + 1) for a in itertools.product(digits, repeat=la)]
        for length in range(max_len + 1):
            words = list(itertools.product(digits, repeat=length))
            for u in words:
                for v in words:
                    for a in prefixes:
                        examined += 1
                        if not _conj_identity_holds(u, v, a, k):
                            return CheckReport("conj-arithmetic", params, False,
                                               {"u": u, "v": v, "a": a}, examined)
        return CheckReport("conj-arithmetic", params, True, None, examined)
    params["mode"] = f"sampled(seed={seed})"
    rng = random.Random(seed)
    for _ in range(trials):
        length = rng.randint(0, max_len + 4)
        u = tuple(rng.randrange(k) for _ in range(length))
        v = tuple(rng.randrange(k) for _ in range(length))
        a = tuple(rng.randrange(k) for _ in range(rng.randint(0, max_prefix + 2)))
        examined += 1
        if not _conj_identity_holds(u, v, a, k):
            return CheckReport("conj-arithmetic", params, False, {"u": u, "v": v, "a": a}, examined)
    return CheckReport("conj-arithmetic", params, True, None, examined)
