"""Flat ``key = value`` construction spec files and their realization.

Format rules:

* one ``key = value`` pair per line; blank lines and lines starting with
  ``#`` are ignored; keys are case-sensitive and may not repeat;
* lists are comma-separated; rotation numbers use the ``[0;1,2](period=1)``
  form; rationals are written ``p/q``;
* numbered keys (``seq.1``, ``seq.2``, ``alpha.1``, ``alpha.1.c``) are read
  in increasing numeric order;
* ``alpha`` and ``alpha.c`` are accepted as shorthand for ``alpha.1`` and
  ``alpha.1.c``.

The keys each construction accepts are listed in :data:`KEYS`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import analysis as an
from . import constructions as cs
from .core import (
    Certificate,
    ComplexityProfile,
    InvalidArgument,
    SequenceWindow,
    build_factor_index,
    complexity_profile,
    trusted_length,
)
from .sturmian import MechanicalParams, RotationNumber, sturmian_window

_COMMON = {"construction", "extent", "n_max"}

KEYS: dict[str, set[str]] = {
    "sturmian-union": {"alpha", "alpha.c"},
    "finite-set": {"gaps", "seq"},
    "countable-set": {"gaps", "seq"},
    "comp-slow": {"gaps", "seq"},
    "miller": {"g", "depth", "seq"},
    "separated-blocks": {"gaps", "seq"},
    "sparse-z": {"nseq", "seq"},
    "product": {"left", "right"},
    "skew-Y": {"alpha", "alpha.c", "seq"},
    "k-fold": {"alpha", "alpha.c", "k", "seq"},
    "intermediate": {"g", "nseq", "seq"},
    "isolated-z": {"rseq", "f"},
}


def _family(key: str) -> str:
    """``seq.3 -> seq``, ``alpha.2.c -> alpha.c``."""
    return re.sub(r"\.\d+", "", key)


@dataclass(frozen=True)
class ConstructionSpec:
    name: str
    values: dict[str, str]
    extent: int | None = None
    n_max: int | None = None
    origin: str = ""

    def get(self, key: str, default: str | None = None) -> str:
        if key in self.values:
            return self.values[key]
        if default is not None:
            return default
        raise InvalidArgument(f"{self.name}: missing key {key!r}")

    def numbered(self, family: str, suffix: str = "") -> list[str]:
        """Values of ``family.1``, ``family.2``, ... (``family`` alone counts as 1)."""
        pat = re.compile(re.escape(family) + r"\.(\d+)" + re.escape(suffix) + r"$")
        found = {}
        for k, v in self.values.items():
            m = pat.match(k)
            if m:
                found[int(m.group(1))] = v
            elif k == family + suffix:
                found[1] = v
        if found and sorted(found) != list(range(1, len(found) + 1)):
            raise InvalidArgument(f"{self.name}: {family}.i keys must be numbered 1..t")
        return [found[i] for i in sorted(found)]

    def with_n_max(self, n_max: int | None) -> ConstructionSpec:
        if n_max is None:
            return self
        if n_max < 1:
            raise InvalidArgument("n_max must be at least 1")
        return ConstructionSpec(self.name, self.values, self.extent, n_max, self.origin)


def parse_spec(text: str, origin: str = "") -> ConstructionSpec:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise InvalidArgument(f"line {lineno}: expected 'key = value'")
        if key in values:
            raise InvalidArgument(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    name = values.pop("construction", None)
    if name not in KEYS:
        raise InvalidArgument(f"unknown or missing construction {name!r}; "
                              f"choose one of {', '.join(sorted(KEYS))}")
    allowed = KEYS[name] | _COMMON
    for key in values:
        if _family(key) not in allowed:
            raise InvalidArgument(f"{name}: unexpected key {key!r}")
    extent = _int(values.pop("extent"), "extent") if "extent" in values else None
    n_max = _int(values.pop("n_max"), "n_max") if "n_max" in values else None
    if n_max is not None and n_max < 1:
        raise InvalidArgument("n_max must be at least 1")
    return ConstructionSpec(name, values, extent, n_max, origin)


def read_spec(path) -> ConstructionSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), str(path))


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidArgument(f"{what} must be an integer, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    return tuple(_int(t.strip(), "list entry") for t in text.split(","))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidArgument(f"bad rational {text!r}") from None


@dataclass
class Realization:
    """Windows, complexity profile and attached checks of one spec."""

    spec: ConstructionSpec
    windows: list[SequenceWindow]
    profile: ComplexityProfile
    checks: list[an.BoundCheck] = field(default_factory=list)
    readback: Callable[[], tuple[bool, str]] | None = None


def _window_profile(windows: list[SequenceWindow], n_max: int | None,
                    certificate: Certificate | None = None) -> ComplexityProfile:
    shortest = min(len(w) for w in windows)
    n = trusted_length(shortest) if n_max is None else n_max
    n = max(1, min(n, shortest))
    return complexity_profile(build_factor_index(windows, n), n, certificate)


def _alphas(spec: ConstructionSpec) -> list[MechanicalParams]:
    alphas = spec.numbered("alpha")
    if not alphas:
        raise InvalidArgument(f"{spec.name}: missing key 'alpha'")
    cs_ = spec.numbered("alpha", ".c")
    out = []
    for i, a in enumerate(alphas):
        c = _fraction(cs_[i]) if i < len(cs_) else Fraction(0)
        out.append(MechanicalParams(RotationNumber.parse(a), c))
    return out


def _seqs(spec: ConstructionSpec, default: str | None = None) -> list[cs.StandInSequence]:
    raw = spec.numbered("seq")
    if not raw and default is not None:
        raw = [default]
    if not raw:
        raise InvalidArgument(f"{spec.name}: missing key 'seq.1'")
    return [cs.StandInSequence.parse(r) for r in raw]


def _labelled(window: SequenceWindow, labels: cs.StandInSequence) -> SequenceWindow:
    """A point of the skew product: the ``i``-th 1 of the window carries label ``labels(i)``."""
    labels.check_letters((1, 2), sum(window.symbols))
    out, i = [], 0
    for x in window.symbols:
        if x == 1:
            i += 1
            out.append(labels(i))
        else:
            out.append(0)
    return SequenceWindow(cs.SKEW_ALPHABET, window.base, tuple(out))


def realize(spec: ConstructionSpec) -> Realization:
    name = spec.name
    n_max = spec.n_max

    if name == "sturmian-union":
        alphas = _alphas(spec)
        need = n_max or 200
        windows = cs.gen_sturmian_union(alphas, need)
        if spec.extent is not None:
            if spec.extent < 4 * need:
                raise InvalidArgument("extent must be at least 4 * n_max")
            windows = [sturmian_window(p.alpha, spec.extent, 0, p.intercept) for p in alphas]
        profile = _window_profile(windows, need)
        t = len(alphas)
        return Realization(spec, windows, profile, [an.strong_linear_check(t, t)])

    if name in ("finite-set", "comp-slow"):
        gaps = cs.GapSpec.parse(spec.get("gaps"))
        blocks = spec.extent or len(gaps)
        windows = cs.gen_interspersed(_seqs(spec), gaps, blocks)
        profile = _window_profile(windows, n_max)
        check = (an.finite_set_check(len(windows)) if name == "finite-set"
                 else an.comp_slow_check(gaps))
        return Realization(spec, windows, profile, [check])

    if name == "countable-set":
        exponent = spec.extent or 14
        gaps = cs.GapSpec.parse(spec.get("gaps", f"pow2:{exponent}"))
        seqs = _seqs(spec)
        if len(seqs) > len(gaps):
            raise InvalidArgument("need one gap m_i per stand-in")
        windows = [cs.gen_power_gap(s, gaps[i], exponent) for i, s in enumerate(seqs, start=1)]
        profile = _window_profile(windows, n_max)
        return Realization(spec, windows, profile, [an.countable_set_check(gaps)])

    if name == "miller":
        g = cs.IntFunction.parse(spec.get("g"))
        depth = _int(spec.get("depth"), "depth")
        sigma = _seqs(spec, "periodic:0")[0]
        sigma.check_letters((0, 1), depth)
        windows = [cs.miller_window(g, sigma.prefix(depth))]
        profile = _window_profile(windows, n_max)
        return Realization(spec, windows, profile, [an.miller_check(g)])

    if name == "separated-blocks":
        gaps = cs.GapSpec.parse(spec.get("gaps"))
        blocks = spec.extent or len(gaps)
        window = cs.gen_separated_blocks(gaps, _seqs(spec, "periodic:2")[0], blocks)
        cert = cs.separated_certificate(gaps, blocks)
        limit = gaps[blocks] if n_max is None else n_max
        profile = _window_profile([window], limit, cert)
        return Realization(spec, [window], profile, [an.separated_lower_check(gaps)])

    if name == "sparse-z":
        n_seq = _ints(spec.get("nseq"))
        extent = spec.extent or n_seq[-1] + 1
        choice = _seqs(spec, "periodic:1")[0]
        inside = sum(1 for n in n_seq if n < extent)
        window = cs.gen_sparse_z(n_seq, choice.prefix(inside), extent)
        profile = cs.sparse_z_profile(n_seq, n_max or 16)
        return Realization(spec, [window], profile, [an.sparse_z_check(n_seq)])

    if name == "product":
        base = spec.origin.rsplit("/", 1)[0] + "/" if "/" in spec.origin else ""
        left = realize(read_spec(base + spec.get("left")).with_n_max(n_max))
        right = realize(read_spec(base + spec.get("right")).with_n_max(n_max))
        window = cs.gen_product(left.windows[0], right.windows[0])
        profile = cs.product_profile(left.profile, right.profile)
        checks = [an.BoundCheck("product", "upper",
                                upper=lambda n: left.profile.counts[n] * right.profile.counts[n])]
        return Realization(spec, [window], profile, checks)

    if name in ("skew-Y", "k-fold"):
        params = _alphas(spec)[0]
        k = _int(spec.get("k", "1"), "k") if name == "k-fold" else 1
        profile = cs.skew_Y_profile(params, n_max or 20)
        if k > 1:
            profile = cs.gen_kfold_profile(profile, k)
        check = an.skew_y_check(params.alpha, k)
        length = spec.extent or 1000
        sturm = sturmian_window(params.alpha, length, 0, params.intercept)
        labels = _seqs(spec, "periodic:12")
        windows = [_labelled(sturm, labels[i % len(labels)]) for i in range(k)]
        point = windows[0]
        for w in windows[1:]:
            point = cs.gen_product(point, w)
        return Realization(spec, [point], profile, [check])

    if name == "intermediate":
        g = cs.IntFunction.parse(spec.get("g"))
        n_seq = _ints(spec.get("nseq"))
        real = cs.gen_intermediate(g, n_seq, _seqs(spec, "periodic:45")[0])
        limit = max(n_seq) if n_max is None else n_max
        profile = _window_profile([real.window], limit, real.certificate)
        return Realization(spec, [real.window], profile, [an.intermediate_check(g, n_seq)])

    if name == "isolated-z":
        r = [_fraction(t) for t in spec.get("rseq").split(",")]
        f = cs.IntFunction.parse(spec.get("f"), start=1)
        count = spec.extent or len(r)
        z = cs.gen_isolated_z(r, f, count)
        profile = _window_profile([z.window], n_max)

        def readback():
            right = cs.delimiter_gaps(z.window, "right")
            left = cs.delimiter_gaps(z.window, "left")
            want_r = [f(i) for i in range(1, count + 1, 2)]
            want_l = [f(i) for i in range(2, count + 1, 2)]
            ok = right == want_r and left == want_l
            return ok, f"right gaps {right} (want {want_r}); left gaps {left} (want {want_l})"

        return Realization(spec, [z.window], profile, [], readback)

    raise InvalidArgument(f"unknown construction {name!r}")


def codec_source(spec: ConstructionSpec) -> SequenceWindow:
    """Source window for round trips: the first rotation number of the spec,
    on ``[-extent/2, extent/2)`` (default extent 10000)."""
    params = _alphas(spec)[0]
    extent = spec.extent or 10000
    return sturmian_window(params.alpha, extent, -(extent // 2), params.intercept)


__all__ = ["ConstructionSpec", "KEYS", "Realization", "codec_source",
           "parse_spec", "read_spec", "realize"]
