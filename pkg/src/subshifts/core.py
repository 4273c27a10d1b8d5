"""Words, sequence windows, factor indexing and complexity profiles.

A window is a finite slice of a (bi-)infinite sequence. Factor queries go
through :class:`FactorIndex`, a generalized suffix automaton built over one
or more windows, so unions of orbit closures can be profiled directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Word = tuple[int, ...]


class SubshiftError(Exception):
    """Base class for errors raised by this package."""


class InvalidArgument(SubshiftError, ValueError):
    pass


class ResourceError(SubshiftError):
    """A window, budget or search cap was too small for the request."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free list of symbol tokens.

    The order of ``symbols`` is the total order used for lexicographic
    enumeration and by the codec.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise InvalidArgument("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidArgument(f"duplicate tokens in alphabet {self.symbols}")
        for tok in self.symbols:
            if not isinstance(tok, str) or not tok or any(ch.isspace() for ch in tok):
                raise InvalidArgument(f"bad token {tok!r}")

    @classmethod
    def digits(cls, size: int) -> Alphabet:
        """Alphabet ``0, 1, ..., size-1``; symbol index equals digit value."""
        return cls(tuple(str(d) for d in range(size)))

    def __len__(self) -> int:
        return len(self.symbols)

    @cached_property
    def _lookup(self) -> dict[str, int]:
        return {tok: i for i, tok in enumerate(self.symbols)}

    def index(self, token: str) -> int:
        try:
            return self._lookup[token]
        except KeyError:
            raise InvalidArgument(f"token {token!r} not in alphabet") from None

    def word(self, tokens: str | Iterable[str]) -> Word:
        """Parse a word. A plain string is split per character."""
        return tuple(self.index(t) for t in tokens)

    def spell(self, word: Sequence[int], sep: str | None = None) -> str:
        if sep is None:
            sep = "" if all(len(t) == 1 for t in self.symbols) else " "
        return sep.join(self.symbols[i] for i in word)


@dataclass(frozen=True)
class SequenceWindow:
    """Symbols ``x[base], ..., x[base + len - 1]`` of a sequence ``x``.

    If ``left_fill`` is set the sequence is known to be ``left_fill``
    everywhere left of ``base``; reads there are exact.
    """

    alphabet: Alphabet
    base: int
    symbols: Word
    left_fill: int | None = None

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise InvalidArgument("window must contain at least one symbol")
        k = len(self.alphabet)
        if any(not 0 <= s < k for s in self.symbols):
            raise InvalidArgument("symbol index outside alphabet")
        if self.left_fill is not None and not 0 <= self.left_fill < k:
            raise InvalidArgument("left_fill outside alphabet")

    @classmethod
    def from_tokens(cls, alphabet: Alphabet, tokens, base: int = 0,
                    left_fill: str | None = None) -> SequenceWindow:
        fill = None if left_fill is None else alphabet.index(left_fill)
        return cls(alphabet, base, alphabet.word(tokens), fill)

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def end(self) -> int:
        """One past the last valid index."""
        return self.base + len(self.symbols)

    def at(self, i: int) -> int:
        if i >= self.end:
            raise IndexError(f"index {i} beyond right edge {self.end - 1}")
        if i < self.base:
            if self.left_fill is None:
                raise IndexError(f"index {i} before left edge {self.base}")
            return self.left_fill
        return self.symbols[i - self.base]

    def slice(self, lo: int, hi: int) -> Word:
        """Symbols at indices ``lo <= i < hi``."""
        if hi > self.end:
            raise IndexError(f"slice end {hi} beyond right edge {self.end}")
        if lo >= self.base:
            return self.symbols[lo - self.base:hi - self.base]
        if self.left_fill is None:
            raise IndexError(f"index {lo} before left edge {self.base}")
        pad = min(hi, self.base) - lo
        return (self.left_fill,) * pad + self.symbols[:max(0, hi - self.base)]

    def padded(self, pad: int) -> Word:
        """The symbols with ``pad`` copies of ``left_fill`` prepended (if set)."""
        if self.left_fill is None or pad <= 0:
            return self.symbols
        return (self.left_fill,) * pad + self.symbols

    @cached_property
    def text(self) -> str:
        """Symbols as a string of code points, for fast substring search."""
        return "".join(map(chr, self.symbols))

    def spell(self) -> str:
        return self.alphabet.spell(self.symbols)


def shift_window(window: SequenceWindow, k: int) -> SequenceWindow:
    """Apply the shift ``k`` times: ``(sigma^k x)(n) = x(n + k)``."""
    return SequenceWindow(window.alphabet, window.base - k, window.symbols, window.left_fill)


@dataclass(frozen=True)
class RightSpecialRecord:
    word: Word
    extensions: frozenset[int]

    @property
    def degree(self) -> int:
        return len(self.extensions) - 1


@dataclass(frozen=True)
class RightSpecialReport:
    n: int
    records: tuple[RightSpecialRecord, ...]
    dead_ends: int  # length-n factors with no in-window successor

    @property
    def degree_sum(self) -> int:
        return sum(r.degree for r in self.records)


class FactorIndex:
    """Exact distinct-factor index over one or more windows.

    Built as a generalized suffix automaton, in time linear in the total
    indexed length. Windows with ``left_fill`` are indexed with ``max_n``
    fill symbols prepended, so factors reaching into the fill are counted.
    """

    def __init__(self, windows: Sequence[SequenceWindow], max_n: int):
        if not windows:
            raise InvalidArgument("need at least one window")
        alphabet = windows[0].alphabet
        if any(w.alphabet != alphabet for w in windows):
            raise InvalidArgument("windows must share an alphabet")
        if max_n < 1:
            raise InvalidArgument("max_n must be positive")
        for w in windows:
            if max_n > len(w):
                raise InvalidArgument(f"max_n={max_n} exceeds window length {len(w)}")
        self.windows = tuple(windows)
        self.alphabet = alphabet
        self.max_n = max_n
        self._texts = [w.padded(max_n) for w in windows]
        self._build()

    def _build(self):
        length = [0]
        link = [-1]
        nxt: list[dict[int, int]] = [{}]
        # (text id, end position) of one occurrence of every word in the state
        endpos: list[tuple[int, int]] = [(0, -1)]

        def new_state(ln, lk, trans, pos):
            length.append(ln)
            link.append(lk)
            nxt.append(trans)
            endpos.append(pos)
            return len(length) - 1

        def clone_of(p, q, c):
            clone = new_state(length[p] + 1, link[q], dict(nxt[q]), endpos[q])
            while p != -1 and nxt[p].get(c) == q:
                nxt[p][c] = clone
                p = link[p]
            link[q] = clone
            return clone

        for tid, text in enumerate(self._texts):
            last = 0
            for pos, c in enumerate(text):
                q = nxt[last].get(c)
                if q is not None:
                    # word already present from an earlier text
                    last = q if length[q] == length[last] + 1 else clone_of(last, q, c)
                    continue
                cur = new_state(length[last] + 1, 0, {}, (tid, pos))
                p = last
                while p != -1 and c not in nxt[p]:
                    nxt[p][c] = cur
                    p = link[p]
                if p != -1:
                    q = nxt[p][c]
                    if length[p] + 1 == length[q]:
                        link[cur] = q
                    else:
                        link[cur] = clone_of(p, q, c)
                last = cur

        self._len, self._link, self._next, self._endpos = length, link, nxt, endpos
        diff = [0] * (self.max_n + 2)
        for v in range(1, len(length)):
            lo = length[link[v]] + 1
            if lo > self.max_n:
                continue
            diff[lo] += 1
            diff[min(length[v], self.max_n) + 1] -= 1
        counts = [0] * (self.max_n + 1)
        run = 0
        for n in range(1, self.max_n + 1):
            run += diff[n]
            counts[n] = run
        self._counts = counts

    @property
    def indexed_length(self) -> int:
        return sum(len(t) for t in self._texts)

    @property
    def indexed_lengths(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self._texts)

    def _check_n(self, n: int, limit: int | None = None):
        limit = self.max_n if limit is None else limit
        if not 1 <= n <= limit:
            raise InvalidArgument(f"n={n} outside 1..{limit}")

    def _states_of_length(self, n: int):
        for v in range(1, len(self._len)):
            if self._len[self._link[v]] < n <= self._len[v]:
                yield v

    def _word(self, v: int, n: int) -> Word:
        tid, pos = self._endpos[v]
        return tuple(self._texts[tid][pos - n + 1:pos + 1])

    def count(self, n: int) -> int:
        self._check_n(n)
        return self._counts[n]

    def factor_set(self, n: int) -> set[Word]:
        self._check_n(n)
        return {self._word(v, n) for v in self._states_of_length(n)}

    def contains(self, word: Sequence[int]) -> bool:
        v = 0
        for c in word:
            v = self._next[v].get(c)
            if v is None:
                return False
        return True

    def extensions(self, word: Sequence[int]) -> frozenset[int]:
        v = 0
        for c in word:
            v = self._next[v].get(c)
            if v is None:
                raise InvalidArgument("word is not a factor")
        return frozenset(self._next[v])

    def right_special(self, n: int) -> RightSpecialReport:
        self._check_n(n, self.max_n - 1)
        records = []
        dead = 0
        for v in self._states_of_length(n):
            ext = self._next[v]
            if not ext:
                dead += 1
            elif len(ext) > 1:
                records.append(RightSpecialRecord(self._word(v, n), frozenset(ext)))
        records.sort(key=lambda r: r.word)
        return RightSpecialReport(n, tuple(records), dead)


def build_factor_index(window: SequenceWindow | Sequence[SequenceWindow], max_n: int) -> FactorIndex:
    """Index one window, or the union of several windows over one alphabet."""
    windows = [window] if isinstance(window, SequenceWindow) else list(window)
    return FactorIndex(windows, max_n)


def factor_set(index: FactorIndex, n: int) -> set[Word]:
    return index.factor_set(n)


def right_special_words(index: FactorIndex, n: int) -> RightSpecialReport:
    return index.right_special(n)


@dataclass(frozen=True)
class Certificate:
    """Lengths ``n`` at which the counts are known to reach the true language
    count of the witnessing blocks, so lower bounds may be asserted."""

    lengths: frozenset[int]
    note: str = ""

    def covers(self, n: int) -> bool:
        return n in self.lengths


@dataclass(frozen=True)
class ComplexityProfile:
    counts: dict[int, int]
    trusted_n: int
    window_length: int
    certificate: Certificate | None = None
    source: str = ""
    diffs: dict[int, int] = field(init=False)

    def __post_init__(self):
        ns = sorted(self.counts)
        if ns != list(range(1, len(ns) + 1)):
            raise InvalidArgument("counts must cover 1..n_max contiguously")
        diffs = {n: self.counts[n + 1] - self.counts[n] for n in ns[:-1]}
        object.__setattr__(self, "diffs", diffs)

    @property
    def n_max(self) -> int:
        return len(self.counts)

    def with_certificate(self, certificate: Certificate | None) -> ComplexityProfile:
        return ComplexityProfile(dict(self.counts), self.trusted_n, self.window_length,
                                 certificate, self.source)

    def with_counts(self, counts: dict[int, int]) -> ComplexityProfile:
        return ComplexityProfile(counts, self.trusted_n, self.window_length,
                                 self.certificate, self.source)


def trusted_length(window_length: int) -> int:
    """Default window-sufficiency rule."""
    return window_length // 4


def complexity_profile(index: FactorIndex, n_max: int | None = None,
                       certificate: Certificate | None = None) -> ComplexityProfile:
    n_max = index.max_n if n_max is None else n_max
    index._check_n(n_max)
    shortest = min(len(w) for w in index.windows)
    return ComplexityProfile(
        counts={n: index._counts[n] for n in range(1, n_max + 1)},
        trusted_n=min(n_max, trusted_length(shortest)),
        window_length=index.indexed_length,
        certificate=certificate,
    )


def language_profile(counts: dict[int, int], certificate_note: str = "exact language") -> ComplexityProfile:
    """Profile of an exactly enumerated language: every n is trusted and certified."""
    n_max = len(counts)
    return ComplexityProfile(counts, n_max, 0,
                             Certificate(frozenset(counts), certificate_note))


# -- window file format ------------------------------------------------------

def split_tokens(line: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in line:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    out.append("".join(cur))
    return [t.strip() for t in out]


def format_window(window: SequenceWindow) -> str:
    a = window.alphabet
    fill = "-" if window.left_fill is None else a.symbols[window.left_fill]
    return "\n".join([
        ",".join(a.symbols),
        str(window.base),
        fill,
        " ".join(a.symbols[s] for s in window.symbols),
    ]) + "\n"


def parse_window(text: str) -> SequenceWindow:
    lines = text.split("\n")
    if len(lines) < 4 or any(lines[4:]):
        raise InvalidArgument("window file must have exactly four lines")
    alphabet = Alphabet(tuple(split_tokens(lines[0])))
    try:
        base = int(lines[1])
    except ValueError:
        raise InvalidArgument(f"bad base line {lines[1]!r}") from None
    fill = None if lines[2].strip() == "-" else lines[2].strip()
    return SequenceWindow.from_tokens(alphabet, lines[3].split(), base, fill)


def read_window(path) -> SequenceWindow:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_window(fh.read())


def write_window(path, window: SequenceWindow) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_window(window))
