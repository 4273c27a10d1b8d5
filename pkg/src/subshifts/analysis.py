"""Periodicity classification, difference reports, language recovery,
recurrent-word search, entropy estimates and named bound checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .constructions import GapSpec, IntFunction, miller_h
from .core import (
    ComplexityProfile,
    FactorIndex,
    InvalidArgument,
    ResourceError,
    SequenceWindow,
    Word,
    build_factor_index,
)
from .sturmian import FloorOracle, RotationNumber


class InsufficientWindow(ResourceError):
    def __init__(self, message: str, word: Word | None = None):
        self.word = word
        super().__init__(message)


# -- Morse-Hedlund ------------------------------------------------------------

def minimal_period(symbols: Sequence[int]) -> int:
    """Smallest ``p >= 1`` with ``x[i] == x[i+p]`` throughout (prefix function)."""
    n = len(symbols)
    if n == 0:
        raise InvalidArgument("empty window")
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and symbols[i] != symbols[k]:
            k = fail[k - 1]
        if symbols[i] == symbols[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def has_period(symbols: Sequence[int], p: int) -> bool:
    return all(symbols[i] == symbols[i + p] for i in range(len(symbols) - p))


@dataclass(frozen=True)
class PeriodicityReport:
    verdict: str  # "periodic", "aperiodic-evidence" or "inconclusive"
    period: int | None = None
    witness: int | None = None
    note: str = ""

    def __str__(self) -> str:
        if self.verdict == "periodic":
            return f"periodic({self.period})"
        return self.verdict


def morse_hedlund_classify(profile: ComplexityProfile, window: SequenceWindow) -> PeriodicityReport:
    """``c_n <= n`` for some trusted ``n`` is the periodicity witness; the
    period itself is then found by a direct scan of the window."""
    length = len(window.symbols)
    padded = window.left_fill is not None and profile.window_length >= length
    if profile.window_length != length and not padded:
        raise InvalidArgument("profile was not computed from this window")
    if profile.n_max >= 1 and profile.counts[1] != len(set(window.symbols)) and window.left_fill is None:
        raise InvalidArgument("profile was not computed from this window")
    if profile.trusted_n < 1:
        return PeriodicityReport("inconclusive", note="window too short to trust any length")
    witness = next((n for n in range(1, profile.trusted_n + 1) if profile.counts[n] <= n), None)
    if witness is None:
        return PeriodicityReport("aperiodic-evidence",
                                 note=f"c_n > n for every n <= {profile.trusted_n}")
    p = minimal_period(window.symbols)
    if p <= len(window.symbols) // 2 and has_period(window.symbols, p):
        return PeriodicityReport("periodic", p, witness)
    return PeriodicityReport("inconclusive", None, witness,
                             "c_n <= n holds but the window is not periodic over its full extent")


# -- first differences --------------------------------------------------------

@dataclass(frozen=True)
class CassaigneReport:
    diffs: dict[int, int]
    max_diff: int
    argmax: int
    plateau: int | None
    stable_from: int | None

    @property
    def stabilizing(self) -> bool:
        return self.plateau is not None


def cassaigne_report(profile: ComplexityProfile) -> CassaigneReport:
    """Maximum of ``c_{n+1} - c_n`` over trusted ``n`` and the value the
    differences settle on, if they are constant over the second half of the
    trusted range. A finite window cannot tell a plateau from a transient."""
    diffs = {n: d for n, d in profile.diffs.items() if n < profile.trusted_n}
    if not diffs:
        raise InvalidArgument("profile has no trusted differences")
    argmax = max(diffs, key=lambda n: (diffs[n], -n))
    ns = sorted(diffs)
    tail = ns[len(ns) // 2:]
    values = {diffs[n] for n in tail}
    plateau = stable_from = None
    if len(values) == 1:
        plateau = values.pop()
        stable_from = tail[0]
        while stable_from - 1 in diffs and diffs[stable_from - 1] == plateau:
            stable_from -= 1
    return CassaigneReport(diffs, diffs[argmax], argmax, plateau, stable_from)


# -- entropy ------------------------------------------------------------------

@dataclass(frozen=True)
class EntropyEstimate:
    quotients: dict[int, float]
    estimate: float
    at: int
    caveat: str = "log2(c_n)/n at the largest trusted n; no extrapolation"


def entropy_estimate(profile: ComplexityProfile) -> EntropyEstimate:
    if profile.trusted_n < 1:
        raise InvalidArgument("no trusted lengths")
    q = {}
    for n in range(1, profile.trusted_n + 1):
        c = profile.counts[n]
        if c < 1:
            raise InvalidArgument(f"c_{n} = {c} must be positive")
        q[n] = math.log2(c) / n
    return EntropyEstimate(q, q[profile.trusted_n], profile.trusted_n)


# -- language recovery --------------------------------------------------------

def _special_sum(index: FactorIndex, k: int) -> tuple[int, list]:
    rep = index.right_special(k)
    return sum(r.degree for r in rep.records), rep.records


def recover_language(window: SequenceWindow, n: int, M: int) -> set[Word]:
    """Length-``n`` words of the sequence, rebuilt from right-special words.

    Phase one scans growing prefixes of the window for a length ``k >= n``
    whose right-special words ``S`` have degrees summing to ``M``. Phase two
    follows forced extensions from every ``sa`` (``s`` in ``S``) until the
    path re-enters ``S``; every word of length ``k`` lies on such a path.
    Any shortfall raises :class:`InsufficientWindow` rather than returning
    an incomplete set.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    if M < 1:
        raise InvalidArgument("M must be at least 1; periodic inputs belong to the classifier")
    symbols = window.symbols
    total = len(symbols)

    found = None
    portion = min(total, max(64, 8 * n))
    while found is None:
        part = SequenceWindow(window.alphabet, 0, symbols[:portion])
        limit = max(n, portion // 4)
        index = build_factor_index(part, limit + 1)
        for k in range(n, limit + 1):
            s, recs = _special_sum(index, k)
            if s == M:
                found = (k, recs)
                break
        if found is None:
            if portion == total:
                raise InsufficientWindow(f"no length >= {n} with right-special degree sum {M} "
                                         f"in a window of {total} symbols")
            portion = min(total, 2 * portion)

    k, recs = found
    full = build_factor_index(window, k + 1)
    specials = {r.word for r in recs}
    for r in recs:
        if set(r.extensions) != set(full.extensions(r.word)):
            raise InsufficientWindow("right-special word gains extensions later in the window", r.word)

    paths = []
    for r in recs:
        for a in sorted(r.extensions):
            path = list(r.word) + [a]
            while tuple(path[-k:]) not in specials:
                tail = tuple(path[-k:])
                ext = full.extensions(tail)
                if len(ext) != 1:
                    raise InsufficientWindow(
                        f"word has {len(ext)} extensions in the window; expected exactly one", tail)
                path.append(next(iter(ext)))
                if len(path) > total + k:
                    raise InsufficientWindow("forced extension does not return to S", tail)
            paths.append(tuple(path))

    words = {p[i:i + n] for p in paths for i in range(len(p) - n + 1)}
    if words != full.factor_set(n):
        raise InsufficientWindow("recovered words disagree with the window's factors")
    return words


# -- canonical recurrent word ---------------------------------------------------

class WindowLanguage:
    """Factor-set oracle ``n -> L_n`` backed by one window."""

    def __init__(self, window: SequenceWindow, max_n: int):
        self.max_n = max_n
        self._index = build_factor_index(window, max_n)
        self._cache: dict[int, set[Word]] = {}

    def __call__(self, n: int) -> set[Word]:
        if n > self.max_n:
            raise ResourceError(f"language oracle only reaches length {self.max_n}")
        if n not in self._cache:
            self._cache[n] = self._index.factor_set(n)
        return self._cache[n]


@dataclass(frozen=True)
class RecurrentWordResult:
    word: Word
    chain: tuple[Word, ...]
    degenerate: bool = False


def _occurs_twice(word: Word, targets: set[Word], m: int) -> bool:
    seen: dict[Word, int] = {}
    for i in range(len(word) - m + 1):
        f = word[i:i + m]
        if f in targets:
            seen[f] = seen.get(f, 0) + 1
    return all(seen.get(t, 0) >= 2 for t in targets)


def canonical_recurrent_word(language: Callable[[int], set[Word]], depth: int,
                             length_cap: int) -> RecurrentWordResult:
    """``w_1``: the (length, lex) least word of the language containing every
    letter twice. ``w_{i+1}``: the least word containing every word of length
    ``|w_i|`` twice with ``w_i`` at its exact centre."""
    if depth < 1:
        raise InvalidArgument("depth must be positive")
    letters = language(1)
    degenerate = len(letters) == 1
    chain: list[Word] = []
    prev: Word | None = None
    for _ in range(depth):
        m = 1 if prev is None else len(prev)
        targets = language(m)
        start = max(2 * len(targets) + m - 1, 1 if prev is None else len(prev) + 2)
        result = None
        for length in range(start, length_cap + 1):
            if prev is not None and (length - len(prev)) % 2:
                continue
            for w in sorted(language(length)):
                if prev is not None:
                    off = (length - len(prev)) // 2
                    if w[off:off + len(prev)] != prev:
                        continue
                if _occurs_twice(w, targets, m):
                    result = w
                    break
            if result is not None:
                break
        if result is None:
            raise ResourceError(f"no qualifying word up to length_cap={length_cap} "
                                f"at step {len(chain) + 1}")
        chain.append(result)
        prev = result
    return RecurrentWordResult(chain[-1], tuple(chain), degenerate)


# -- bound checks ---------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    """A named bound ``lower(n) <= c_n`` and/or ``c_n <= upper(n)``.

    ``strict`` turns the upper comparison into ``<``. ``lengths`` restricts
    the check to the listed ``n``; lower bounds apply only where the profile
    carries a containment certificate.
    """

    name: str
    direction: str  # "upper", "lower", "sandwich" or "classifier"
    upper: Callable[[int], int] | None = None
    lower: Callable[[int], int] | None = None
    strict: bool = False
    lengths: frozenset[int] | None = None
    params: dict = field(default_factory=dict)


def finite_set_check(t: int) -> BoundCheck:
    return BoundCheck("finite-set", "upper", upper=lambda n: (2 * n + 1) + 4 * t * n,
                      strict=True, params={"t": t})


def countable_set_check(gaps: GapSpec) -> BoundCheck:
    return BoundCheck("countable-set", "upper",
                      upper=lambda n: (4 * gaps.block_index(n) + 6) * n, params={"gaps": str(gaps)})


def comp_slow_check(gaps: GapSpec) -> BoundCheck:
    return BoundCheck("comp-slow", "upper",
                      upper=lambda n: 2 ** gaps.block_index(n) * 6 * n, params={"gaps": str(gaps)})


def miller_level(g, n: int) -> tuple[int, int]:
    """``(k, j)`` with ``h(k) <= n < h(k+1)`` and ``j h(k) <= n < (j+1) h(k)``."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    k = 0
    while miller_h(g, k + 1) <= n:
        k += 1
    return k, n // miller_h(g, k)


def miller_check(g, refined: bool = False) -> BoundCheck:
    """``c_n <= 2^(2k+3) n``, or with ``refined`` the sharper ``(4j+4) 2^(2k) h(k)``."""
    g = IntFunction.of(g)

    def bound(n):
        k, j = miller_level(g, n)
        if refined:
            return (4 * j + 4) * 2 ** (2 * k) * miller_h(g, k)
        return 2 ** (2 * k + 3) * n

    return BoundCheck("miller", "upper", upper=bound, params={"g": str(g), "refined": refined})


def separated_lower_check(gaps: GapSpec) -> BoundCheck:
    def bound(n):
        k = gaps.block_index(n)
        return 2 ** -(-n // k)
    return BoundCheck("separated-lower", "lower", lower=bound, params={"gaps": str(gaps)})


def intermediate_check(g, n_seq: Sequence[int]) -> BoundCheck:
    g = IntFunction.of(g)
    return BoundCheck("intermediate", "sandwich", upper=lambda n: g(n) + 6 * n, lower=g,
                      lengths=frozenset(n_seq), params={"g": str(g), "nseq": list(n_seq)})


def skew_y_check(alpha: RotationNumber, k: int = 1) -> BoundCheck:
    """Sandwich for the skew product, raised to the ``k``-th power for ``Y^k``."""
    oracle = FloorOracle(alpha)
    return BoundCheck("skew-Y", "sandwich",
                      upper=lambda n: ((n + 1) * 2 ** (oracle.floor(n) + 1)) ** k,
                      lower=lambda n: ((n + 1) * 2 ** oracle.floor(n)) ** k,
                      params={"alpha": str(alpha), "k": k})


def sparse_z_check(n_seq: Sequence[int]) -> BoundCheck:
    def bound(n):
        k = sum(1 for m in n_seq if m <= n)
        return 2**k
    return BoundCheck("sparse-z", "lower", lower=bound, params={"nseq": list(n_seq)})


def strong_linear_check(t: int, constant: int) -> BoundCheck:
    """Finite-range stand-in for ``limsup c_n - tn < inf``: ``c_n <= tn + constant``."""
    return BoundCheck(f"strong-linear({t})", "upper", upper=lambda n: t * n + constant,
                      params={"t": t, "constant": constant})


def weak_linear_check(t: int, constant: int) -> BoundCheck:
    """Finite-range stand-in for ``liminf c_n - tn < inf``: some ``n`` has
    ``c_n <= tn + constant``. Reported per ``n``; passes if any ``n`` does."""
    return BoundCheck(f"weak-linear({t})", "classifier", upper=lambda n: t * n + constant,
                      params={"t": t, "constant": constant})


def morse_hedlund_check() -> BoundCheck:
    return BoundCheck("morse-hedlund", "classifier", upper=lambda n: n)


@dataclass(frozen=True)
class BoundRow:
    n: int
    count: int
    diff: int | None
    bound: str
    margin: int | None
    status: str  # "pass", "fail" or "skipped"


@dataclass(frozen=True)
class BoundReport:
    name: str
    passed: bool
    first_violation: int | None
    rows: tuple[BoundRow, ...]
    params: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = ["n,c_n,diff,bound,margin"]
        for r in self.rows:
            lines.append(",".join(["" if v is None else str(v)
                                   for v in (r.n, r.count, r.diff, r.bound, r.margin)]))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        rec = {"check": self.name, "passed": str(self.passed).lower(),
               "first_violation": "" if self.first_violation is None else self.first_violation,
               "evaluated": sum(1 for r in self.rows if r.status != "skipped"),
               "skipped": sum(1 for r in self.rows if r.status == "skipped")}
        for k in sorted(self.params):
            rec[f"param.{k}"] = self.params[k]
        return "".join(f"{k} = {v}\n" for k, v in rec.items())


def verify_bound(profile: ComplexityProfile, check: BoundCheck) -> BoundReport:
    ns = range(1, profile.trusted_n + 1)
    if check.lengths is not None:
        ns = sorted(n for n in check.lengths if n <= profile.trusted_n)
    rows = []
    for n in ns:
        c = profile.counts[n]
        diff = profile.diffs.get(n)
        if check.direction == "classifier":
            hi = check.upper(n)
            rows.append(BoundRow(n, c, diff, str(hi), hi - c, "pass" if c <= hi else "fail"))
            continue
        margins, bounds = [], []
        lower_ok = check.lower is not None and profile.certificate is not None \
            and profile.certificate.covers(n)
        if check.upper is not None:
            hi = check.upper(n)
            bounds.append(str(hi))
            margins.append(hi - c - (1 if check.strict else 0))
        if check.lower is not None:
            if lower_ok:
                lo = check.lower(n)
                bounds.insert(0, str(lo))
                margins.append(c - lo)
            elif check.upper is None:
                rows.append(BoundRow(n, c, diff, "", None, "skipped"))
                continue
        margin = min(margins)
        rows.append(BoundRow(n, c, diff, ":".join(bounds), margin,
                             "pass" if margin >= 0 else "fail"))
    if check.direction == "classifier":
        hits = [r.n for r in rows if r.status == "pass"]
        passed = bool(hits) if check.name.startswith("weak-linear") else True
        return BoundReport(check.name, passed, None, tuple(rows), dict(check.params))
    fails = [r.n for r in rows if r.status == "fail"]
    return BoundReport(check.name, not fails, fails[0] if fails else None, tuple(rows),
                       dict(check.params))
