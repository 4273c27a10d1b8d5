"""Embed a bit string into a point built from a recurrent aperiodic sequence.

Starting from the centre letter ``w_0`` of the source, each bit picks two
consecutive occurrences of ``w_k`` (no occurrence starts between them)
whose continuations first disagree in ascending (bit 0) or descending
(bit 1) alphabet order. ``w_{k+1}`` is then that stretch of the source,
extended on the left so that ``w_k`` sits exactly in its centre. Decoding
reads the bits back from the centre outwards.

Symbols are compared by their index in the window's alphabet; to use a
different order, build the window over a reordered :class:`Alphabet`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import InvalidArgument, ResourceError, SequenceWindow, SubshiftError, Word


class WindowExhausted(ResourceError):
    def __init__(self, step: int, message: str):
        self.step = step
        super().__init__(f"step {step}: {message}")


class NoDivergence(SubshiftError):
    """Continuations after consecutive occurrences never disagree in the
    window: the source looks eventually periodic on the right. Reflect it
    and try again."""

    def __init__(self, step: int):
        self.step = step
        super().__init__(f"step {step}: no continuation difference anywhere in the window; "
                         "source looks eventually periodic on the right")


class DecodeError(SubshiftError):
    def __init__(self, step: int, message: str):
        self.step = step
        super().__init__(f"step {step}: {message}")


@dataclass(frozen=True)
class EncoderState:
    word: Word
    span: tuple[int, int]  # inclusive source indices of the defining occurrence
    depth: int
    bits: tuple[int, ...]


def _occurrences(text: str, pattern: str) -> list[int]:
    out = []
    i = text.find(pattern)
    while i != -1:
        out.append(i)
        i = text.find(pattern, i + 1)
    return out


def _candidates(source: SequenceWindow, state: EncoderState, bit: int) -> list[EncoderState]:
    """Every distinct ``w_{k+1}`` for ``bit``, shortest first, then nearest the origin."""
    text = source.text
    base = source.base
    lo, hi = state.span
    pattern = text[lo - base:hi - base + 1]
    m = len(pattern)
    occ = _occurrences(text, pattern)

    best: dict[str, tuple] = {}
    diverged = False
    longest_agreement = 0
    for u, v in zip(occ, occ[1:]):
        t = 0
        while v + m + t < len(text) and text[u + m + t] == text[v + m + t]:
            t += 1
        j = v + m + t
        if j >= len(text):
            longest_agreement = max(longest_agreement, t)
            continue
        diverged = True
        if (text[u + m + t] < text[j]) != (bit == 0):
            continue
        margin = j - (u + m - 1)
        if u - margin < 0:
            continue
        start, stop = u - margin + base, j + base
        word = text[u - margin:j + 1]
        key = (len(word), max(abs(start), abs(stop)), start < 0, start)
        if word not in best or key < best[word][0]:
            best[word] = (key, start, stop)

    if not diverged and len(occ) >= 2 and longest_agreement >= len(text) // 4:
        raise NoDivergence(state.depth)
    out = []
    for key, start, stop in sorted(best.values()):
        word = tuple(source.symbols[start - base:stop - base + 1])
        out.append(EncoderState(word, (start, stop), state.depth + 1, state.bits + (bit,)))
    return out


class Encoder:
    """Encoder bound to one source window; candidate lists are cached so
    that many bit strings can share the work.

    Each step takes the shortest candidate (then the one nearest the
    origin). The choice never depends on later bits, so encoding a prefix
    of ``y`` gives a central factor of the encoding of ``y``.
    """

    def __init__(self, source: SequenceWindow):
        if source.base > 0 or source.end <= 0:
            raise InvalidArgument("source window must contain index 0")
        self.source = source
        self._cache: dict = {}

    def _next(self, state: EncoderState, bit: int) -> EncoderState:
        key = (state.span, bit)
        if key not in self._cache:
            cands = _candidates(self.source, state, bit)
            self._cache[key] = (cands[0].word, cands[0].span) if cands else None
        hit = self._cache[key]
        if hit is None:
            raise WindowExhausted(state.depth, f"no candidate factor for bit {bit} inside the window")
        return EncoderState(hit[0], hit[1], state.depth + 1, state.bits + (bit,))

    def steps(self, bits: Sequence[int]) -> list[EncoderState]:
        """Every intermediate state ``w_0, w_1, ..., w_len(bits)``."""
        if any(b not in (0, 1) for b in bits):
            raise InvalidArgument("bits must be 0 or 1")
        state = EncoderState((self.source.at(0),), (0, 0), 0, ())
        out = [state]
        for b in bits:
            state = self._next(state, b)
            out.append(state)
        return out

    def encode(self, bits: Sequence[int]) -> Word:
        return self.steps(bits)[-1].word


def encode_steps(source: SequenceWindow, bits: Sequence[int]) -> list[EncoderState]:
    return Encoder(source).steps(bits)


def encode(source: SequenceWindow, bits: Sequence[int]) -> Word:
    return Encoder(source).encode(bits)


def decode(encoded: Sequence[int], order, depth: int) -> list[int]:
    """Recover ``depth`` bits from a word whose centre is ``w_0``.

    ``order`` is the :class:`Alphabet` the word's indices refer to; its
    symbol order is the comparison order.
    """
    n = len(encoded)
    if depth < 0:
        raise InvalidArgument("depth must be non-negative")
    if depth == 0:
        return []
    if n % 2 == 0:
        raise DecodeError(0, "encoded word must have odd length")
    k = len(order)
    if any(not 0 <= s < k for s in encoded):
        raise InvalidArgument("symbol outside the given alphabet")
    text = "".join(map(chr, encoded))
    lo = hi = n // 2
    bits = []
    for step in range(depth):
        pattern = text[lo:hi + 1]
        m = hi - lo + 1
        v = text.find(pattern, lo + 1)
        if v == -1:
            raise DecodeError(step, "no second occurrence to the right of the centre word")
        t = 0
        while v + m + t < n and text[hi + 1 + t] == text[v + m + t]:
            t += 1
        j = v + m + t
        if j >= n:
            raise DecodeError(step, "continuations agree up to the end of the word")
        bits.append(0 if text[hi + 1 + t] < text[j] else 1)
        margin = j - hi
        lo, hi = lo - margin, j
        if lo < 0:
            if step + 1 < depth:
                raise DecodeError(step + 1, "word too short for the requested depth")
    return bits
