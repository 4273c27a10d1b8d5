"""Mechanical (Sturmian) words with exactly certified floor values.

The rotation number is given by its partial quotients. ``floor(n*alpha + c)``
is evaluated by sandwiching ``alpha`` between consecutive convergents; a
value is emitted only when both ends of the sandwich agree.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Alphabet, InvalidArgument, SequenceWindow, SubshiftError, build_factor_index

BINARY = Alphabet(("0", "1"))


class InsufficientPrecision(SubshiftError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"cannot certify floor value at index {index}")


@dataclass(frozen=True)
class RotationNumber:
    """``alpha = [0; a_1, a_2, ...]``.

    ``tail_start`` (0-based into ``partial_quotients``) marks the start of a
    block repeated forever; without it the list is a truncation of an
    unknown irrational and only a bounded range of floors is certifiable.
    """

    partial_quotients: tuple[int, ...]
    tail_start: int | None = None

    def __post_init__(self):
        pq = tuple(self.partial_quotients)
        object.__setattr__(self, "partial_quotients", pq)
        if not pq:
            raise InvalidArgument("need at least one partial quotient")
        if any(not isinstance(a, int) or a < 1 for a in pq):
            raise InvalidArgument("partial quotients must be integers >= 1")
        if self.tail_start is not None and not 0 <= self.tail_start < len(pq):
            raise InvalidArgument("periodic block must be non-empty")

    @classmethod
    def golden(cls) -> RotationNumber:
        return cls((1,), tail_start=0)

    @classmethod
    def silver(cls) -> RotationNumber:
        return cls((2,), tail_start=0)

    @classmethod
    def parse(cls, text: str) -> RotationNumber:
        """Parse ``[0;1,1,1]`` with an optional ``(period=p)`` suffix.

        ``period=p`` declares that the last ``p`` listed quotients repeat.
        """
        m = re.fullmatch(r"\s*\[\s*0\s*;([\d,\s]+)\]\s*(?:\(\s*period\s*=\s*(\d+)\s*\))?\s*", text)
        if not m:
            raise InvalidArgument(f"bad rotation number {text!r}")
        pq = tuple(int(t) for t in m.group(1).split(",") if t.strip())
        tail = None
        if m.group(2) is not None:
            p = int(m.group(2))
            if not 1 <= p <= len(pq):
                raise InvalidArgument(f"period {p} outside 1..{len(pq)}")
            tail = len(pq) - p
        return cls(pq, tail)

    def __str__(self) -> str:
        s = "[0;" + ",".join(map(str, self.partial_quotients)) + "]"
        if self.tail_start is not None:
            s += f"(period={len(self.partial_quotients) - self.tail_start})"
        return s

    @property
    def periodic(self) -> bool:
        return self.tail_start is not None

    def quotient(self, j: int) -> int | None:
        """``a_{j+1}`` (0-based ``j``), or None past a finite list."""
        pq = self.partial_quotients
        if j < len(pq):
            return pq[j]
        if self.tail_start is None:
            return None
        period = len(pq) - self.tail_start
        return pq[self.tail_start + (j - self.tail_start) % period]

    def convergents(self, count: int) -> list[Fraction]:
        """``p_0/q_0 = 0/1, p_1/q_1, ...``; at most ``count`` of them."""
        out = [Fraction(0)]
        p_prev, q_prev, p, q = 1, 0, 0, 1
        j = 0
        while len(out) < count:
            a = self.quotient(j)
            if a is None:
                break
            p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
            out.append(Fraction(p, q))
            j += 1
        return out

    def approx(self, digits: int = 40) -> float:
        c = self.convergents(digits)
        return float(c[-1])


@dataclass(frozen=True)
class MechanicalParams:
    alpha: RotationNumber
    intercept: Fraction = Fraction(0)

    def __post_init__(self):
        c = Fraction(self.intercept)
        object.__setattr__(self, "intercept", c)
        if not 0 <= c < 1:
            raise InvalidArgument("intercept must lie in [0, 1)")


@dataclass
class FloorOracle:
    """Certified ``floor(n*alpha + c)``, refining the sandwich on demand.

    ``level`` is the index of the first convergent pair tried.
    """

    alpha: RotationNumber
    c: Fraction = Fraction(0)
    level: int = 1
    _conv: list[Fraction] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._conv = self.alpha.convergents(max(8, self.level + 2))

    def _pair(self, level: int):
        while level + 1 >= len(self._conv):
            more = self.alpha.convergents(2 * len(self._conv))
            if len(more) == len(self._conv):
                return None
            self._conv = more
        return self._conv[level], self._conv[level + 1]

    def floor(self, n: int) -> int:
        if n == 0:
            return math.floor(self.c)
        level = self.level
        while True:
            pair = self._pair(level)
            if pair is None:
                raise InsufficientPrecision(
                    n, f"partial quotients of {self.alpha} cannot certify floor({n}*alpha + c)")
            lo, hi = sorted((n * pair[0] + self.c, n * pair[1] + self.c))
            # alpha is irrational, so n*alpha + c lies strictly inside (lo, hi)
            f = math.floor(lo)
            if f + 1 >= hi:
                self.level = level
                return f
            level += 1

    def certified_range(self, limit: int = 10**6) -> int:
        """Largest ``N`` such that every ``|n| <= N`` is certifiable."""
        if self.alpha.periodic:
            return limit
        n = 0
        while n < limit:
            try:
                self.floor(n + 1)
                self.floor(-(n + 1))
            except InsufficientPrecision:
                return n
            n += 1
        return n


def mechanical_bits(params: MechanicalParams, lo: int, hi: int) -> tuple[int, ...]:
    """``floor((n+1)a + c) - floor(n a + c)`` for ``lo <= n <= hi``."""
    if lo > hi:
        raise InvalidArgument("need lo <= hi")
    oracle = FloorOracle(params.alpha, params.intercept)
    floors = []
    for n in range(lo, hi + 2):
        try:
            floors.append(oracle.floor(n))
        except InsufficientPrecision as exc:
            bit = max(lo, n - 1)
            raise InsufficientPrecision(
                bit, f"bit {bit} of the mechanical word is not certifiable from {params.alpha}") from exc
    return tuple(b - a for a, b in zip(floors, floors[1:]))


def mechanical_window(params: MechanicalParams, lo: int, hi: int) -> SequenceWindow:
    """Window over {0,1} with base ``lo`` holding indices ``lo..hi`` inclusive."""
    return SequenceWindow(BINARY, lo, mechanical_bits(params, lo, hi))


def sturmian_window(alpha: RotationNumber | str, length: int, start: int = 0,
                    intercept: Fraction | int = 0) -> SequenceWindow:
    if isinstance(alpha, str):
        alpha = RotationNumber.parse(alpha)
    return mechanical_window(MechanicalParams(alpha, Fraction(intercept)), start, start + length - 1)


@dataclass(frozen=True)
class BalanceReport:
    one_counts: dict[int, Counter]  # n -> multiset of 1-counts over distinct factors
    expected: dict[int, int]  # n -> floor(n*alpha)
    violations: tuple[tuple[int, tuple[int, ...], int], ...]  # (n, factor, ones)

    @property
    def ok(self) -> bool:
        return not self.violations


def balance_report(window: SequenceWindow, params: MechanicalParams | RotationNumber,
                   n_max: int) -> BalanceReport:
    if len(window.alphabet) != 2:
        raise InvalidArgument("balance check needs a binary window")
    alpha = params.alpha if isinstance(params, MechanicalParams) else params
    oracle = FloorOracle(alpha)
    index = build_factor_index(window, n_max)
    one = window.alphabet.index("1") if "1" in window.alphabet.symbols else 1
    counts, expected, bad = {}, {}, []
    for n in range(1, n_max + 1):
        e = oracle.floor(n)
        expected[n] = e
        tally = Counter()
        for w in sorted(index.factor_set(n)):
            k = w.count(one)
            tally[k] += 1
            if k not in (e, e + 1):
                bad.append((n, w, k))
        counts[n] = tally
    return BalanceReport(counts, expected, tuple(bad))
