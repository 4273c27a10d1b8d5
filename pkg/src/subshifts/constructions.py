"""Generators for the example subshifts and their block structure.

Non-computable ingredients (sequences of a prescribed Turing degree,
non-computable gap sequences) are replaced by explicit computable stand-ins;
only the complexity side of each construction is reproduced.

Every generator works in whole structural blocks: a run of zeros, a block
``w_i`` or a prefix ``p_k`` is either emitted completely or the generator
raises :class:`BudgetError`.
"""

from __future__ import annotations

import ast
import itertools
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .core import (
    Alphabet,
    Certificate,
    ComplexityProfile,
    InvalidArgument,
    ResourceError,
    SequenceWindow,
    Word,
    build_factor_index,
    language_profile,
)
from .sturmian import MechanicalParams, sturmian_window

DEFAULT_BUDGET = 1_000_000


class BudgetError(ResourceError):
    pass


class StructureError(InvalidArgument):
    def __init__(self, level: int, message: str):
        self.level = level
        super().__init__(f"level {level}: {message}")


# -- parameters ----------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod, ast.Pow: operator.pow}


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


_FUNCS = {"isqrt": math.isqrt, "csqrt": _ceil_sqrt, "min": min, "max": max, "abs": abs}


def _eval(node, n):
    if isinstance(node, ast.Expression):
        return _eval(node.body, n)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name) and node.id == "n":
        return n
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, n), _eval(node.right, n))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval(node.operand, n)
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and not node.keywords):
        return _FUNCS[node.func.id](*(_eval(a, n) for a in node.args))
    raise InvalidArgument(f"unsupported expression element {ast.dump(node)}")


@dataclass(frozen=True)
class IntFunction:
    """Integer function of ``n`` given by a table or an integer expression.

    Expressions use ``n``, integer literals, ``+ - * // % **`` and the
    functions ``isqrt``, ``csqrt`` (ceiling square root), ``min``, ``max``,
    ``abs``. A table lists ``f(start), f(start+1), ...``.
    """

    expr: str | None = None
    table: tuple[int, ...] | None = None
    start: int = 0

    def __post_init__(self):
        if (self.expr is None) == (self.table is None):
            raise InvalidArgument("give exactly one of expr or table")
        if self.expr is not None:
            try:
                tree = ast.parse(self.expr, mode="eval")
            except SyntaxError as exc:
                raise InvalidArgument(f"bad expression {self.expr!r}") from exc
            _eval(tree, 1)  # reject unsupported syntax early
            object.__setattr__(self, "_tree", tree)

    @classmethod
    def parse(cls, text: str, start: int = 0) -> IntFunction:
        text = text.strip()
        if "," in text:
            return cls(table=tuple(int(t) for t in text.split(",")), start=start)
        return cls(expr=text, start=start)

    @classmethod
    def of(cls, value, start: int = 0) -> IntFunction:
        if isinstance(value, IntFunction):
            return value
        if isinstance(value, int):
            return cls(expr=str(value), start=start)
        if isinstance(value, str):
            return cls.parse(value, start)
        return cls(table=tuple(int(v) for v in value), start=start)

    def __call__(self, n: int) -> int:
        if self.table is not None:
            i = n - self.start
            if not 0 <= i < len(self.table):
                raise InvalidArgument(f"function value at {n} not materialized")
            return self.table[i]
        return int(_eval(self._tree, n))

    def __str__(self) -> str:
        return self.expr if self.expr is not None else ",".join(map(str, self.table))


@dataclass(frozen=True)
class GapSpec:
    """Strictly increasing positive integers ``m_1 < m_2 < ...``."""

    values: tuple[int, ...]
    kind: str = "explicit-list"

    def __post_init__(self):
        v = tuple(self.values)
        object.__setattr__(self, "values", v)
        if not v:
            raise InvalidArgument("gap sequence is empty")
        if v[0] < 1 or any(b <= a for a, b in zip(v, v[1:])):
            raise InvalidArgument("gaps must be strictly increasing positive integers")

    @classmethod
    def pow2(cls, count: int) -> GapSpec:
        return cls(tuple(2**i - 1 for i in range(1, count + 1)), "formula-pow2")

    @classmethod
    def custom(cls, fn: Callable[[int], int], count: int) -> GapSpec:
        return cls(tuple(fn(i) for i in range(1, count + 1)), "formula-custom")

    @classmethod
    def parse(cls, text: str) -> GapSpec:
        text = text.strip()
        if text.startswith("pow2:"):
            return cls.pow2(int(text[5:]))
        if text.startswith("expr:"):
            body, _, count = text[5:].rpartition(":")
            return cls.custom(IntFunction(expr=body), int(count))
        return cls(tuple(int(t) for t in text.split(",")))

    def __str__(self) -> str:
        if self.kind == "formula-pow2":
            return f"pow2:{len(self.values)}"
        return ",".join(map(str, self.values))

    def __getitem__(self, i: int) -> int:
        """``m_i`` for ``i >= 1``; ``m_0 = 0``."""
        if i == 0:
            return 0
        if not 1 <= i <= len(self.values):
            raise InvalidArgument(f"gap m_{i} not materialized")
        return self.values[i - 1]

    def __len__(self) -> int:
        return len(self.values)

    def block_index(self, n: int) -> int:
        """The unique ``k`` with ``m_{k-1} < n <= m_k``."""
        if n < 1:
            raise InvalidArgument("n must be positive")
        for k, m in enumerate(self.values, start=1):
            if n <= m:
                return k
        raise InvalidArgument(f"n={n} exceeds the last materialized gap {self.values[-1]}")


def _digits(values: Iterable[int] | str) -> tuple[int, ...]:
    if isinstance(values, str):
        values = [c for c in values if c not in ", "]
        if not all(c.isdigit() for c in values):
            raise InvalidArgument("stand-in values must be decimal digits")
    return tuple(int(c) for c in values)


@dataclass(frozen=True)
class StandInSequence:
    """Computable replacement for a sequence ``s(1), s(2), ...``."""

    kind: str  # "periodic" or "explicit"
    values: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("periodic", "explicit"):
            raise InvalidArgument(f"unknown stand-in kind {self.kind!r}")
        if not self.values:
            raise InvalidArgument("stand-in needs at least one value")

    @classmethod
    def periodic(cls, word: Iterable[int] | str) -> StandInSequence:
        return cls("periodic", _digits(word))

    @classmethod
    def explicit(cls, prefix: Iterable[int] | str) -> StandInSequence:
        return cls("explicit", _digits(prefix))

    @classmethod
    def parse(cls, text: str) -> StandInSequence:
        kind, _, body = text.strip().partition(":")
        if kind not in ("periodic", "explicit") or not body.strip():
            raise InvalidArgument(f"bad stand-in {text!r}; use periodic:12 or explicit:1,2,2")
        return cls(kind, _digits(body))

    def __str__(self) -> str:
        return f"{self.kind}:{''.join(map(str, self.values))}"

    def __call__(self, i: int) -> int:
        if i < 1:
            raise InvalidArgument("stand-in sequences are indexed from 1")
        if self.kind == "periodic":
            return self.values[(i - 1) % len(self.values)]
        if i > len(self.values):
            raise InvalidArgument(f"explicit stand-in exhausted at index {i}")
        return self.values[i - 1]

    def prefix(self, count: int) -> tuple[int, ...]:
        return tuple(self(i) for i in range(1, count + 1))

    def check_letters(self, allowed: Iterable[int], count: int):
        allowed = set(allowed)
        bad = [v for v in self.prefix(count) if v not in allowed]
        if bad:
            raise InvalidArgument(f"stand-in {self} uses {bad[0]}, expected letters {sorted(allowed)}")


class _Builder:
    def __init__(self, budget: int):
        self.budget = budget
        self.out: list[int] = []

    def add(self, block: Sequence[int], what: str = "block"):
        if len(self.out) + len(block) > self.budget:
            raise BudgetError(f"{what} would exceed the symbol budget {self.budget}")
        self.out.extend(block)


# -- finite / countable sets with zeros interspersed --------------------------

def interspersed_window(s: StandInSequence, gaps: GapSpec, blocks: int,
                        budget: int = DEFAULT_BUDGET) -> SequenceWindow:
    """``0^w . s(1) 0^{m_1} s(2) 0^{m_2} ... s(K) 0^{m_K}`` over {0,1,2}."""
    if not 1 <= blocks <= len(gaps):
        raise InvalidArgument(f"blocks must lie in 1..{len(gaps)}")
    s.check_letters((1, 2), blocks)
    b = _Builder(budget)
    for i in range(1, blocks + 1):
        b.add((s(i),) + (0,) * gaps[i], f"block {i}")
    return SequenceWindow(Alphabet.digits(3), 0, tuple(b.out), left_fill=0)


def gen_interspersed(seqs: Sequence[StandInSequence], gaps: GapSpec, blocks: int,
                     budget: int = DEFAULT_BUDGET) -> list[SequenceWindow]:
    return [interspersed_window(s, gaps, blocks, budget) for s in seqs]


def power_gap_runs(s: StandInSequence, m: int, max_exponent: int) -> list[tuple[int, int]]:
    """``(exponent, run length)`` of every zero run, in order, while the
    exponent stays at most ``max_exponent``."""
    runs = []
    for j in range(1, m + 1):
        if j > max_exponent:
            return runs
        runs.append((j, 2**j - 1))
    j = 1
    while m + j <= max_exponent:
        e = m + j + s(j)
        if e > max_exponent:
            return runs
        runs.append((e, 2**e))
        j += 1
    return runs


def gen_power_gap(s: StandInSequence, m: int, max_exponent: int,
                  budget: int = DEFAULT_BUDGET) -> SequenceWindow:
    """``0^w . 1 0^{2^1-1} ... 1 0^{2^m-1} 1 0^{2^{m+1+s(1)}} 1 0^{2^{m+2+s(2)}} ...``"""
    if m < 1:
        raise InvalidArgument("m must be positive")
    runs = power_gap_runs(s, m, max_exponent)
    if not runs:
        raise InvalidArgument("max_exponent leaves no complete run")
    s.check_letters((0, 1), max(0, len(runs) - m))
    b = _Builder(budget)
    for e, r in runs:
        b.add((1,) + (0,) * r, f"run with exponent {e}")
    return SequenceWindow(Alphabet.digits(2), 0, tuple(b.out), left_fill=0)


def zero_runs(window: SequenceWindow) -> list[int]:
    """Lengths of the zero runs that follow each 1, left to right."""
    runs, cur = [], None
    for x in window.symbols:
        if x == 1:
            if cur is not None:
                runs.append(cur)
            cur = 0
        elif cur is not None:
            cur += 1
    if cur is not None:
        runs.append(cur)
    return runs


def decode_power_gap(window: SequenceWindow, m: int) -> list[int]:
    """Read the stand-in bits back from run lengths after the switch."""
    runs = zero_runs(window)
    for j, r in enumerate(runs[:m], start=1):
        if r != 2**j - 1:
            raise StructureError(j, f"expected a run of {2**j - 1} zeros, found {r}")
    bits = []
    for j, r in enumerate(runs[m:], start=1):
        e = r.bit_length() - 1
        if r != 2**e or e - m - j not in (0, 1):
            raise StructureError(m + j, f"run of {r} zeros does not encode a bit")
        bits.append(e - m - j)
    return bits


# -- Miller words -------------------------------------------------------------

def miller_pair(g, sigma: Sequence[int]) -> tuple[Word, Word]:
    """``(a_sigma, b_sigma)`` over {0,1} with ``a_eps = 1`` and ``b_eps = 0``."""
    g = IntFunction.of(g)
    a: Word = (1,)
    b: Word = (0,)
    for level, bit in enumerate(sigma):
        r = g(level)
        if r < 3:
            raise InvalidArgument(f"g({level}) = {r}; need g(n) > 2")
        if bit == 0:
            a, b = b + a * (r - 1), a + b * r
        elif bit == 1:
            a, b = a + b * (r - 1), b + a * r
        else:
            raise InvalidArgument("sigma must be a bit word")
    return a, b


def gen_miller(g, sigma: Sequence[int]) -> Word:
    return miller_pair(g, sigma)[1]


def miller_h(g, k: int) -> int:
    """``h(k) = g(0) g(1) ... g(k-1)``."""
    g = IntFunction.of(g)
    return math.prod(g(i) for i in range(k))


def decode_miller(word: Sequence[int], g) -> tuple[int, ...]:
    """Recover ``sigma`` from a concatenation of ``a_sigma``/``b_sigma`` blocks.

    At each level the word is a sequence of level blocks A, B. Bit 0 groups
    them as ``a' = B A^(g-1)``, ``b' = A B^g``; bit 1 as ``a' = A B^(g-1)``,
    ``b' = B A^g``. The first block symbol fixes which of a', b' starts
    there, so each grouping either parses uniquely or fails. Decoding stops
    once the word is a single ``b`` block.
    """
    g = IntFunction.of(g)
    seq = [1 if x == 1 else 0 for x in word]  # 1 = A block, 0 = B block
    if any(x not in (0, 1) for x in word):
        raise StructureError(0, "word must be over {0,1}")
    sigma: list[int] = []
    while len(seq) > 1:
        level = len(sigma)
        r = g(level)
        parses = [p for p in (_group(seq, bit, r) for bit in (0, 1)) if p is not None]
        options = [bit for bit in (0, 1) if _group(seq, bit, r) is not None]
        if not options:
            raise StructureError(level, "word is not a concatenation of next-level blocks")
        if len(options) == 2:
            raise StructureError(level, "both groupings parse; word too short to decide")
        sigma.append(options[0])
        seq = parses[0]
    if seq != [0]:
        raise StructureError(len(sigma), "word does not reduce to a single b block")
    return tuple(sigma)


def _group(seq: list[int], bit: int, r: int) -> list[int] | None:
    A, B = 1, 0
    if bit == 0:
        a_blk, b_blk = [B] + [A] * (r - 1), [A] + [B] * r
    else:
        a_blk, b_blk = [A] + [B] * (r - 1), [B] + [A] * r
    out, i = [], 0
    while i < len(seq):
        if seq[i] == a_blk[0] and seq[i:i + len(a_blk)] == a_blk:
            out.append(A)
            i += len(a_blk)
        elif seq[i] == b_blk[0] and seq[i:i + len(b_blk)] == b_blk:
            out.append(B)
            i += len(b_blk)
        else:
            return None
    return out


@dataclass(frozen=True)
class PrefixSurvey:
    depth: int
    words: int
    a_prefix_of_b: int
    a_factor_of_b: int


def miller_prefix_survey(g, max_depth: int) -> list[PrefixSurvey]:
    """How often ``a_sigma`` is a prefix (or any factor) of ``b_sigma``, per depth."""
    out = []
    for d in range(max_depth + 1):
        pre = sub = total = 0
        for sigma in itertools.product((0, 1), repeat=d):
            a, b = miller_pair(g, sigma)
            total += 1
            pre += b[:len(a)] == a
            sub += "".join(map(str, a)) in "".join(map(str, b))
        out.append(PrefixSurvey(d, total, pre, sub))
    return out


def miller_window(g, sigma: Sequence[int]) -> SequenceWindow:
    return SequenceWindow(Alphabet.digits(2), 0, gen_miller(g, sigma))


# -- separated blocks -----------------------------------------------------------

def separated_words(length: int, distance: int) -> list[str]:
    """Binary words of ``length`` with any two 1s at least ``distance`` apart, in
    lexicographic order."""
    out = []
    for bits in itertools.product("01", repeat=length):
        ones = [i for i, c in enumerate(bits) if c == "1"]
        if all(q - p >= distance for p, q in zip(ones, ones[1:])):
            out.append("".join(bits))
    return out


def separated_block(length: int, distance: int) -> Word:
    """``w_i``: the words of ``S_i`` concatenated, then ``0^{m_i}``."""
    return tuple(int(c) for c in "".join(separated_words(length, distance)) + "0" * length)


def gen_separated_blocks(gaps: GapSpec, s: StandInSequence, blocks: int | None = None,
                         budget: int = DEFAULT_BUDGET) -> SequenceWindow:
    """``0^w . s(1) w_1 s(2) w_2 ...`` over {0,1,2,3}."""
    blocks = len(gaps) if blocks is None else blocks
    if not 1 <= blocks <= len(gaps):
        raise InvalidArgument(f"blocks must lie in 1..{len(gaps)}")
    s.check_letters((2, 3), blocks)
    b = _Builder(budget)
    for i in range(1, blocks + 1):
        if gaps[i] > 24 or (gaps[i] + 1) * 2 ** gaps[i] > b.budget:
            raise BudgetError(f"block w_{i} with m_{i}={gaps[i]} exceeds the budget")
        b.add((s(i),) + separated_block(gaps[i], i), f"block w_{i}")
    return SequenceWindow(Alphabet.digits(4), 0, tuple(b.out), left_fill=0)


def separated_certificate(gaps: GapSpec, blocks: int | None = None) -> Certificate:
    blocks = len(gaps) if blocks is None else blocks
    return Certificate(frozenset(range(1, gaps[blocks] + 1)),
                       f"window contains w_1..w_{blocks}")


# -- sparse Z and products ----------------------------------------------------

def _check_increasing(seq: Sequence[int], what: str):
    if not seq or any(b <= a for a, b in zip(seq, seq[1:])):
        raise InvalidArgument(f"{what} must be a non-empty strictly increasing list")


def gen_sparse_z(n_seq: Sequence[int], choice: Sequence[int], extent: int) -> SequenceWindow:
    """Window ``[0, extent)``: bit ``choice[k]`` at ``n_seq[k]``, 0 elsewhere."""
    _check_increasing(n_seq, "n_seq")
    if extent < 1:
        raise InvalidArgument("extent must be positive")
    inside = [n for n in n_seq if 0 <= n < extent]
    if len(choice) < len(inside):
        raise InvalidArgument(f"need {len(inside)} choice bits, got {len(choice)}")
    sym = [0] * extent
    for n, c in zip(inside, choice):
        if c not in (0, 1):
            raise InvalidArgument("choice bits must be 0 or 1")
        sym[n] = c
    return SequenceWindow(Alphabet.digits(2), 0, tuple(sym), left_fill=0)


def sparse_z_language(n_seq: Sequence[int], n: int) -> set[Word]:
    """Length-``n`` words of the orbit closure of all sequences that vanish off
    ``n_seq`` (only the listed positions can carry a 1)."""
    _check_increasing(n_seq, "n_seq")
    supports = set()
    for p in range(n_seq[0] - n + 1, n_seq[-1] + 1):
        supports.add(frozenset(q - p for q in n_seq if 0 <= q - p < n))
    maximal = [s for s in supports if not any(s < t for t in supports)]
    words = set()
    for supp in maximal:
        pos = sorted(supp)
        for bits in itertools.product((0, 1), repeat=len(pos)):
            w = [0] * n
            for q, b in zip(pos, bits):
                w[q] = b
            words.add(tuple(w))
    return words


def sparse_z_profile(n_seq: Sequence[int], n_max: int) -> ComplexityProfile:
    counts = {n: len(sparse_z_language(n_seq, n)) for n in range(1, n_max + 1)}
    return language_profile(counts, f"all supports of n_seq={list(n_seq)}")


def product_alphabet(a: Alphabet, b: Alphabet) -> Alphabet:
    return Alphabet(tuple(f"({x},{y})" for x in a.symbols for y in b.symbols))


def gen_product(a: SequenceWindow, b: SequenceWindow) -> SequenceWindow:
    """Pairwise-symbol window on the common index range."""
    hi = min(a.end, b.end)
    if a.left_fill is not None and b.left_fill is not None:
        lo = min(a.base, b.base)
    else:
        lo = max(w.base for w in (a, b) if w.left_fill is None)
    if lo >= hi:
        raise InvalidArgument("windows do not overlap")
    k = len(b.alphabet)
    sym = tuple(a.at(i) * k + b.at(i) for i in range(lo, hi))
    fill = None
    if a.left_fill is not None and b.left_fill is not None:
        fill = a.left_fill * k + b.left_fill
    return SequenceWindow(product_alphabet(a.alphabet, b.alphabet), lo, sym, fill)


def _combine(pa: ComplexityProfile, pb: ComplexityProfile, op) -> ComplexityProfile:
    n_max = min(pa.n_max, pb.n_max)
    counts = {n: op(pa.counts[n], pb.counts[n]) for n in range(1, n_max + 1)}
    cert = None
    if pa.certificate is not None and pb.certificate is not None:
        cert = Certificate(pa.certificate.lengths & pb.certificate.lengths, "both factors certified")
    return ComplexityProfile(counts, min(pa.trusted_n, pb.trusted_n, n_max),
                             pa.window_length + pb.window_length, cert, "product")


def product_profile(pa: ComplexityProfile, pb: ComplexityProfile) -> ComplexityProfile:
    """``c_n(Y x Z) = c_n(Y) c_n(Z)``."""
    return _combine(pa, pb, operator.mul)


def gen_kfold_profile(p: ComplexityProfile, k: int) -> ComplexityProfile:
    if k < 1:
        raise InvalidArgument("k must be positive")
    counts = {n: c**k for n, c in p.counts.items()}
    return ComplexityProfile(counts, p.trusted_n, p.window_length, p.certificate, f"{k}-fold")


# -- skew product Y -----------------------------------------------------------

SKEW_ALPHABET = Alphabet(("(0,a)", "(1,a)", "(1,b)"))


def sturmian_language(params: MechanicalParams, n: int) -> set[Word]:
    """All ``n + 1`` length-``n`` factors, from a window grown until complete."""
    length = max(64, 8 * n)
    while True:
        lo = -(length // 2)
        w = sturmian_window(params.alpha, length, lo, params.intercept)
        words = build_factor_index(w, n).factor_set(n)
        if len(words) == n + 1:
            return words
        if length > 10**7:
            raise ResourceError(f"could not collect all factors of length {n}")
        length *= 2


def gen_skew_Y_language(params: MechanicalParams, n: int,
                        with_words: bool = True) -> tuple[int, set[Word] | None]:
    """Count (and optionally list) length-``n`` words of the skew product whose
    first coordinate is Sturmian and whose 1s carry a free label a/b."""
    base = sturmian_language(params, n)
    count = sum(2 ** w.count(1) for w in base)
    if not with_words:
        return count, None
    words = set()
    for w in base:
        ones = [i for i, x in enumerate(w) if x == 1]
        for labels in itertools.product((1, 2), repeat=len(ones)):
            lw = [0] * n
            for i, lab in zip(ones, labels):
                lw[i] = lab
            words.add(tuple(lw))
    return count, words


def skew_Y_profile(params: MechanicalParams, n_max: int) -> ComplexityProfile:
    counts = {n: gen_skew_Y_language(params, n, with_words=False)[0] for n in range(1, n_max + 1)}
    return language_profile(counts, "combinatorial enumeration of labelled Sturmian words")


# -- intermediate growth ------------------------------------------------------

def exact_factor_prefix(w: Sequence[int], n: int, k: int) -> Word:
    """Shortest prefix of ``w`` containing exactly ``k`` distinct length-``n`` factors."""
    if n < 1 or k < 1:
        raise InvalidArgument("n and k must be positive")
    return _stream_prefix(iter(w), n, k)


def _stream_prefix(stream: Iterator[int], n: int, k: int) -> Word:
    out: list[int] = []
    seen = set()
    for x in stream:
        out.append(x)
        if len(out) >= n:
            seen.add(tuple(out[-n:]))
            if len(seen) == k:
                return tuple(out)
    raise InvalidArgument(f"word has only {len(seen)} distinct factors of length {n}, fewer than k={k}")


def _lex_words(length: int) -> Iterator[tuple[int, ...]]:
    return itertools.product((1, 2), repeat=length)


def _w_first(n1: int) -> Iterator[int]:
    for word in _lex_words(n1):
        yield from word


def _w_next(n_prev: int, n_next: int) -> Iterator[int]:
    pad = (0,) * (n_prev - 1)
    for letters in _lex_words(n_next // n_prev):
        for letter in letters:
            yield from pad
            yield letter


def check_intermediate_params(g: IntFunction, n_seq: Sequence[int]):
    """Raise :class:`InvalidArgument` naming the first violated side condition."""
    _check_increasing(n_seq, "n_seq")
    for k, n in enumerate(n_seq, start=1):
        if not g(n) < 2**n:
            raise InvalidArgument(f"g(n_{k}) < 2^(n_{k}) fails: g({n}) = {g(n)}")
        if g(n) < 1:
            raise InvalidArgument(f"g(n_{k}) must be positive")
    for k, (a, b) in enumerate(zip(n_seq, n_seq[1:]), start=1):
        if b % a:
            raise InvalidArgument(f"n_{k} | n_{k + 1} fails: {a} does not divide {b}")
        if not g(b) < 2 ** (b // a):
            raise InvalidArgument(
                f"g(n_{k + 1}) < 2^(n_{k + 1}/n_{k}) fails: g({b}) = {g(b)} >= 2^{b // a}")


def intermediate_prefixes(g, n_seq: Sequence[int]) -> list[Word]:
    """``p_1, p_2, ...``: prefixes of ``w_k`` with exactly ``g(n_k)`` factors of length ``n_k``."""
    g = IntFunction.of(g)
    check_intermediate_params(g, n_seq)
    out = [_stream_prefix(_w_first(n_seq[0]), n_seq[0], g(n_seq[0]))]
    for a, b in zip(n_seq, n_seq[1:]):
        out.append(_stream_prefix(_w_next(a, b), b, g(b)))
    return out


@dataclass(frozen=True)
class IntermediateRealization:
    window: SequenceWindow
    prefixes: tuple[Word, ...]
    certificate: Certificate


def gen_intermediate(g, n_seq: Sequence[int], s: StandInSequence,
                     budget: int = DEFAULT_BUDGET) -> IntermediateRealization:
    """``0^w . p_1 (0^{n_1} s(1) 0^{n_1-1}) p_2 (0^{n_2} s(2) 0^{n_2-1}) ...`` over {0..5}."""
    g = IntFunction.of(g)
    prefixes = intermediate_prefixes(g, n_seq)
    s.check_letters((4, 5), len(n_seq))
    b = _Builder(budget)
    for k, (p, n) in enumerate(zip(prefixes, n_seq), start=1):
        b.add(p, f"prefix p_{k}")
        b.add((0,) * n + (s(k),) + (0,) * (n - 1), f"separator {k}")
    window = SequenceWindow(Alphabet.digits(6), 0, tuple(b.out), left_fill=0)
    cert = Certificate(frozenset(n_seq), "window contains every p_k in full")
    return IntermediateRealization(window, tuple(prefixes), cert)


# -- isolated degree ----------------------------------------------------------

def rational_mechanical_block(r: Fraction, length: int) -> Word:
    """``floor((k+1) r) - floor(k r)`` for ``k = 1..length``."""
    r = Fraction(r)
    return tuple(math.floor((k + 1) * r) - math.floor(k * r) for k in range(1, length + 1))


@dataclass(frozen=True)
class IsolatedZ:
    window: SequenceWindow
    blocks: dict[int, Word] = field(repr=False)


def gen_isolated_z(r: Sequence[Fraction], f, count: int | None = None,
                   budget: int = DEFAULT_BUDGET) -> IsolatedZ:
    """``... 2 w_4 2 w_2 2 w_1 2 w_3 2 w_5 2 ...`` with index 0 on the 2 before ``w_1``."""
    count = len(r) if count is None else count
    f = IntFunction.of(f, start=1)
    if count < 1 or count > len(r):
        raise InvalidArgument("need one rational per block")
    lengths = [f(i) for i in range(1, count + 1)]
    if any(x < 1 for x in lengths) or any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise InvalidArgument("f must be positive and strictly increasing")
    for q in r[:count]:
        if not 0 < Fraction(q) < 1:
            raise InvalidArgument("rationals must lie in (0, 1)")
    blocks = {i: rational_mechanical_block(Fraction(r[i - 1]), lengths[i - 1])
              for i in range(1, count + 1)}
    b = _Builder(budget)
    for i in sorted((i for i in blocks if i % 2 == 0), reverse=True):
        b.add((2,) + blocks[i], f"block w_{i}")
    origin = len(b.out)
    for i in sorted(i for i in blocks if i % 2 == 1):
        b.add((2,) + blocks[i], f"block w_{i}")
    b.add((2,), "final delimiter")
    return IsolatedZ(SequenceWindow(Alphabet.digits(3), -origin, tuple(b.out)), blocks)


def delimiter_gaps(window: SequenceWindow, side: str = "right") -> list[int]:
    """Symbols between consecutive 2s, walking away from index 0."""
    pos = [i for i in range(window.base, window.end) if window.at(i) == 2]
    if side == "right":
        pts = [p for p in pos if p >= 0]
    else:
        pts = sorted((p for p in pos if p <= 0), reverse=True)
    return [abs(b - a) - 1 for a, b in zip(pts, pts[1:])]


# -- unions of Sturmian shifts ------------------------------------------------

def gen_sturmian_union(alphas: Sequence[MechanicalParams], n_max: int) -> list[SequenceWindow]:
    """One window per rotation number, each holding all ``n + 1`` factors of
    every length ``n <= n_max``."""
    if not alphas:
        raise InvalidArgument("need at least one rotation number")
    if n_max < 1:
        raise InvalidArgument("n_max must be positive")
    out = []
    for p in alphas:
        length = max(64, 8 * n_max)
        while True:
            w = sturmian_window(p.alpha, length, -(length // 2), p.intercept)
            index = build_factor_index(w, n_max)
            if index.count(n_max) == n_max + 1 and length // 4 >= n_max:
                out.append(w)
                break
            if length > 10**7:
                raise ResourceError(f"could not collect all factors of {p.alpha}")
            length *= 2
    return out


def shared_language(a: MechanicalParams, b: MechanicalParams, n: int) -> bool:
    """Whether the two Sturmian shifts have the same length-``n`` words."""
    return sturmian_language(a, n) == sturmian_language(b, n)
