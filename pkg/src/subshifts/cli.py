"""Command-line front end.

Exit status: 0 success, 1 bound violation or round-trip mismatch, 2 invalid
input, 3 resource or budget exhaustion. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis as an
from .codec import DecodeError, Encoder, NoDivergence, decode
from .core import (
    InvalidArgument,
    ResourceError,
    SequenceWindow,
    SubshiftError,
    build_factor_index,
    complexity_profile,
    format_window,
    read_window,
    trusted_length,
)
from .specs import codec_source, read_spec, realize
from .sturmian import InsufficientPrecision

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _profile_csv(profile) -> str:
    lines = ["n,c_n,diff"]
    for n in range(1, profile.n_max + 1):
        d = profile.diffs.get(n)
        lines.append(f"{n},{profile.counts[n]},{'' if d is None else d}")
    return "\n".join(lines) + "\n"


def _window_profile(path: str, n_max: int | None):
    window = read_window(path)
    n = trusted_length(len(window)) if n_max is None else n_max
    if n < 1 or n > len(window):
        raise InvalidArgument(f"n_max must lie in 1..{len(window)}")
    return window, complexity_profile(build_factor_index(window, n), n)


def cmd_generate(args) -> int:
    real = realize(read_spec(args.spec).with_n_max(args.n_max))
    out = Path(args.out)
    if len(real.windows) == 1:
        _emit(format_window(real.windows[0]), str(out))
        return EXIT_OK
    for i, w in enumerate(real.windows, start=1):
        _emit(format_window(w), str(out.with_name(f"{out.stem}.{i}{out.suffix}")))
    return EXIT_OK


def cmd_complexity(args) -> int:
    if args.spec:
        profile = realize(read_spec(args.spec).with_n_max(args.n_max)).profile
    else:
        profile = _window_profile(args.window, args.n_max)[1]
    _emit(_profile_csv(profile), args.out)
    return EXIT_OK


def analysis_report(window: SequenceWindow | None, profile) -> str:
    rec: dict[str, object] = {"n_max": profile.n_max, "trusted_n": profile.trusted_n}
    if window is not None:
        mh = an.morse_hedlund_classify(profile, window)
        rec["morse_hedlund.verdict"] = str(mh)
        rec["morse_hedlund.witness"] = "" if mh.witness is None else mh.witness
    if profile.trusted_n >= 2:
        cr = an.cassaigne_report(profile)
        rec["cassaigne.max_diff"] = cr.max_diff
        rec["cassaigne.argmax"] = cr.argmax
        rec["cassaigne.plateau"] = "none" if cr.plateau is None else cr.plateau
        rec["cassaigne.stable_from"] = "" if cr.stable_from is None else cr.stable_from
    if profile.trusted_n >= 1:
        ee = an.entropy_estimate(profile)
        rec["entropy.base"] = 2
        rec["entropy.at"] = ee.at
        rec["entropy.estimate"] = f"{ee.estimate:.12f}"
        rec["entropy.caveat"] = ee.caveat
    return "".join(f"{k} = {v}\n" for k, v in rec.items())


def cmd_analyze(args) -> int:
    if args.spec:
        real = realize(read_spec(args.spec).with_n_max(args.n_max))
        window = real.windows[0] if len(real.windows) == 1 and real.profile.window_length else None
        text = analysis_report(window, real.profile)
    else:
        window, profile = _window_profile(args.window, args.n_max)
        text = analysis_report(window, profile)
    _emit(text, args.report)
    return EXIT_OK


def cmd_verify(args) -> int:
    real = realize(read_spec(args.spec).with_n_max(args.n_max))
    parts, ok = [], True
    for check in real.checks:
        rep = an.verify_bound(real.profile, check)
        ok &= rep.passed
        parts.append(rep.to_text() + rep.to_csv())
    if real.readback is not None:
        passed, msg = real.readback()
        ok &= passed
        parts.append(f"check = readback\npassed = {str(passed).lower()}\ndetail = {msg}\n")
    _emit("\n".join(parts), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_roundtrip(args) -> int:
    if any(c not in "01" for c in args.bits):
        raise InvalidArgument("bits must be a string of 0s and 1s")
    bits = [int(c) for c in args.bits]
    source = codec_source(read_spec(args.spec))
    word = Encoder(source).encode(bits)
    try:
        back = decode(word, source.alphabet, len(bits))
    except DecodeError as exc:
        print(f"decode failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    got = "".join(map(str, back))
    if args.out:
        # index 0 is the centre letter, as in the source
        _emit(format_window(SequenceWindow(source.alphabet, -(len(word) // 2), word)), args.out)
    sys.stdout.write(f"bits = {args.bits}\ndecoded = {got}\nlength = {len(word)}\n")
    return EXIT_OK if got == args.bits else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subshifts", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write the window file(s) of a construction")
    g.add_argument("--spec", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--n-max", type=int)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("complexity", help="write the complexity profile as CSV")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--window")
    src.add_argument("--spec")
    c.add_argument("--n-max", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_complexity)

    a = sub.add_parser("analyze", help="periodicity, difference and entropy report")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--window")
    src.add_argument("--spec")
    a.add_argument("--n-max", type=int)
    a.add_argument("--report")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check the bounds attached to a construction")
    v.add_argument("--spec", required=True)
    v.add_argument("--n-max", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("roundtrip", help="encode bits into a Sturmian source and decode them")
    r.add_argument("--spec", required=True)
    r.add_argument("--bits", required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_roundtrip)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n_max", None) is not None and args.n_max < 1:
        print("error: --n-max must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ResourceError, InsufficientPrecision) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvalidArgument, NoDivergence, SubshiftError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
