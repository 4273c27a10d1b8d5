"""Acceptance suite: one test per numbered criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line.  Run with
``pytest -s tests/test_acceptance.py`` to see them, or execute this file
directly for the summary alone.
"""
from __future__ import annotations

import itertools
import math
import random
import sys
from fractions import Fraction
from math import isqrt
from pathlib import Path

import pytest

from subshifts import analysis as an
from subshifts import constructions as cs
from subshifts.cli import main as cli_main
from subshifts.codec import DecodeError, Encoder, WindowExhausted, decode
from subshifts.core import (
    Alphabet,
    InvalidArgument,
    SequenceWindow,
    build_factor_index,
    complexity_profile,
)
from subshifts.sturmian import MechanicalParams, RotationNumber, balance_report, sturmian_window

SPECS = Path(__file__).resolve().parent.parent / "specs"
GOLDEN = RotationNumber.golden()


def report(number: int, ok: bool, detail: str = ""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}"
    print(f"{line} {detail}".rstrip())
    assert ok, detail


def golden_floor(n: int) -> int:
    return (isqrt(5 * n * n) - n) // 2


@pytest.fixture(scope="module")
def golden_2000():
    return sturmian_window(GOLDEN, 2000)


def test_criterion_01_sturmian_complexity(golden_2000):
    idx = build_factor_index(golden_2000, 200)
    bad = [n for n in range(1, 201) if idx.count(n) != n + 1]
    report(1, not bad, f"c_n = n+1 for 1..200; mismatches {bad[:5]}")


def test_criterion_02_sturmian_balance(golden_2000):
    rep = balance_report(golden_2000, GOLDEN, 100)
    xs = golden_2000.symbols
    bad = []
    for n in range(1, 101):
        lo = golden_floor(n)
        ones = {sum(xs[i:i + n]) for i in range(len(xs) - n + 1)}
        if not ones <= {lo, lo + 1}:
            bad.append(n)
    report(2, rep.ok and not bad, f"1-counts within floor(n a)+{{0,1}} for n <= 100; bad {bad[:5]}")


def _brute(xs, n):
    facs = {tuple(xs[i:i + n]) for i in range(len(xs) - n + 1)}
    ext = {}
    for i in range(len(xs) - n):
        ext.setdefault(tuple(xs[i:i + n]), set()).add(xs[i + n])
    return facs, {w: e for w, e in ext.items() if len(e) > 1}


def test_criterion_03_factor_index_oracle():
    rng = random.Random(2024)
    failures = 0
    for _ in range(500):
        k = rng.randint(1, 4)
        xs = tuple(rng.randrange(k) for _ in range(rng.randint(1, 200)))
        w = SequenceWindow(Alphabet.digits(k), rng.randint(-50, 50), xs)
        n_max = min(len(xs), rng.randint(1, 12))
        idx = build_factor_index(w, n_max)
        prof = complexity_profile(idx, n_max)
        for n in range(1, n_max + 1):
            facs, special = _brute(xs, n)
            ok = idx.factor_set(n) == facs and prof.counts[n] == len(facs)
            if n < n_max:
                rs = idx.right_special(n)
                got = {r.word: (set(r.extensions), r.degree) for r in rs.records}
                ok = ok and got == {w_: (e, len(e) - 1) for w_, e in special.items()}
            failures += not ok
    report(3, failures == 0, f"500 random windows vs brute force; {failures} mismatching lengths")


def _is_central(inner, outer) -> bool:
    d = len(outer) - len(inner)
    return d > 0 and d % 2 == 0 and tuple(outer[d // 2:d // 2 + len(inner)]) == tuple(inner)


def test_criterion_04_codec_round_trip():
    source = sturmian_window(GOLDEN, 10000, -5000)
    enc = Encoder(source)
    rng = random.Random(4)
    cases = [list(b) for b in itertools.product((0, 1), repeat=8)]
    cases += [[rng.randint(0, 1) for _ in range(rng.randint(1, 16))] for _ in range(200)]
    ok_count = exhausted = wrong = 0
    deepest = 0
    for bits in cases:
        try:
            steps = enc.steps(bits)
        except WindowExhausted as exc:
            exhausted += 1
            deepest = max(deepest, exc.step)
            continue
        nested = all(_is_central(a.word, b.word) for a, b in zip(steps, steps[1:]))
        try:
            back = decode(steps[-1].word, source.alphabet, len(bits))
        except DecodeError:
            back = None
        if nested and back == bits:
            ok_count += 1
        else:
            wrong += 1
    report(4, wrong == 0 and exhausted == 0,
           f"{ok_count}/{len(cases)} round trips; {exhausted} ran off the window "
           f"(most steps completed before exhaustion: {deepest}); {wrong} wrong")


def test_criterion_05_finite_set_bound():
    seqs = [cs.StandInSequence.periodic("1"), cs.StandInSequence.periodic("12")]
    gaps = cs.GapSpec.pow2(12)
    assert [gaps[i] for i in range(1, 4)] == [1, 3, 7]
    windows = cs.gen_interspersed(seqs, gaps, 12)
    n = min(len(w) for w in windows) // 4
    prof = complexity_profile(build_factor_index(windows, n), n)
    rep = an.verify_bound(prof, an.finite_set_check(2))
    margin = min(r.margin for r in rep.rows)
    report(5, rep.passed and len(rep.rows) == prof.trusted_n,
           f"c_n < (2n+1)+8n for n <= {prof.trusted_n}; min margin {margin}")


def test_criterion_06_countable_set_bound():
    gaps = cs.GapSpec.pow2(14)
    seqs = [cs.StandInSequence.periodic(p) for p in ("0", "1", "01", "0010")]
    windows = [cs.gen_power_gap(s, gaps[i], 14) for i, s in enumerate(seqs, start=1)]
    n = min(len(w) for w in windows) // 4
    prof = complexity_profile(build_factor_index(windows, n), n)
    rep = an.verify_bound(prof, an.countable_set_check(gaps))
    report(6, rep.passed and prof.trusted_n >= 2**12,
           f"c_n <= (4k+6)n for n <= {prof.trusted_n}; first violation {rep.first_violation}")


def test_criterion_07_miller():
    problems = []
    for depth in range(7):
        for sigma in itertools.product((0, 1), repeat=depth):
            a, b = cs.miller_pair(3, sigma)
            h = cs.miller_h(3, depth)
            if not (h <= len(a) <= 2**depth * h and h <= len(b) <= 2**depth * h):
                problems.append(("length", sigma))
            if cs.decode_miller(cs.gen_miller(3, sigma), 3) != sigma:
                problems.append(("decode", sigma))
    for sigma in itertools.product((0, 1), repeat=5):
        w = cs.miller_window(3, sigma)
        n = len(w) // 4
        prof = complexity_profile(build_factor_index(w, n), n)
        for check in (an.miller_check(3), an.miller_check(3, refined=True)):
            if not an.verify_bound(prof, check).passed:
                problems.append((check.name, sigma))
    report(7, not problems, f"depth <= 6 decode and lengths, depth 5 bounds; problems {problems[:3]}")


def test_criterion_08_separated_blocks():
    s2 = cs.separated_words(3, 2)
    w2 = "".join(map(str, cs.separated_block(3, 2)))
    example = s2 == ["000", "001", "010", "100", "101"] and w2 == "000001010100101000"
    gaps = cs.GapSpec((3, 6, 10))
    window = cs.gen_separated_blocks(gaps, cs.StandInSequence.periodic("23"))
    prof = complexity_profile(build_factor_index(window, 10), 10, cs.separated_certificate(gaps))
    rep = an.verify_bound(prof, an.separated_lower_check(gaps))
    evaluated = sum(r.status != "skipped" for r in rep.rows)
    report(8, example and rep.passed and evaluated == 10,
           f"worked example {'matches' if example else 'differs'}; lower bound on n <= 10")


def _shortest_prefix(w, n, k):
    for p in range(n, len(w) + 1):
        if len({tuple(w[i:i + n]) for i in range(p - n + 1)}) == k:
            return tuple(w[:p])


def test_criterion_09_word_count_prefix():
    rng = random.Random(9)
    bad = 0
    for _ in range(200):
        w = tuple(rng.randint(0, rng.randint(1, 3)) for _ in range(rng.randint(1, 60)))
        for n in range(1, len(w) + 1):
            total = len({w[i:i + n] for i in range(len(w) - n + 1)})
            for k in range(1, total + 1):
                got = cs.exact_factor_prefix(w, n, k)
                bad += got != _shortest_prefix(w, n, k)
    report(9, bad == 0, f"200 random words, all valid (n, k); {bad} mismatches")


INTERMEDIATE_ACCEPTED = [(4, 64), (4, 128), (4, 64, 1280)]
INTERMEDIATE_REJECTED = [
    ("n*csqrt(n)", (4, 8, 24), "g(n_2) < 2^(n_2/n_1) fails"),
    ("n*csqrt(n)", (4, 6), "n_1 | n_2 fails"),
    ("n*n*n", (4, 64), "g(n_1) < 2^(n_1) fails"),
]


def test_criterion_10_intermediate_sandwich():
    g = cs.IntFunction.parse("n*csqrt(n)")
    notes, ok = [], True
    for n_seq in INTERMEDIATE_ACCEPTED:
        real = cs.gen_intermediate(g, n_seq, cs.StandInSequence.periodic("45"))
        prof = complexity_profile(build_factor_index(real.window, n_seq[-1]), n_seq[-1],
                                  real.certificate)
        rep = an.verify_bound(prof, an.intermediate_check(g, n_seq))
        if not rep.passed or len(rep.rows) != len(n_seq):
            ok = False
            r = next(r for r in rep.rows if r.status == "fail")
            notes.append(f"{n_seq}: c_{r.n} = {r.count} outside {r.bound}")
    for expr, n_seq, message in INTERMEDIATE_REJECTED:
        with pytest.raises(InvalidArgument) as exc:
            cs.check_intermediate_params(cs.IntFunction.parse(expr), n_seq)
        if message not in str(exc.value):
            ok = False
            notes.append(f"{n_seq} rejected with {exc.value}")
    report(10, ok, "; ".join(notes) or "all sandwiches hold, all bad parameters rejected")


def test_criterion_11_skew_product():
    params = MechanicalParams(GOLDEN)
    prof = cs.skew_Y_profile(params, 20)
    sandwich = an.verify_bound(prof, an.skew_y_check(GOLDEN)).passed
    # labelled enumeration: every labelling of every length-n factor of a long window
    long = sturmian_window(GOLDEN, 4000, -2000)
    brute_ok = True
    for n in range(1, 13):
        labelled = set()
        for w in build_factor_index(long, n).factor_set(n):
            choices = [(0,) if x == 0 else (1, 2) for x in w]
            labelled.update(itertools.product(*choices))
        brute_ok &= len(labelled) == prof.counts[n]
    alpha = (math.sqrt(5) - 1) / 2
    q1 = an.entropy_estimate(prof).quotients[20]
    q2 = an.entropy_estimate(cs.gen_kfold_profile(prof, 2)).quotients[20]
    ent1 = abs(q1 - alpha) <= 0.15
    ent2 = abs(q2 - 2 * alpha) <= 0.3
    report(11, sandwich and brute_ok and ent1 and ent2,
           f"sandwich {sandwich}, enumeration {brute_ok}, "
           f"quotient {q1:.4f} vs {alpha:.4f}, 2-fold {q2:.4f} vs {2 * alpha:.4f}")


def test_criterion_12_language_recovery():
    sources = [sturmian_window(GOLDEN, 3000),
               sturmian_window(RotationNumber.silver(), 3000, -1500, Fraction(1, 3))]
    wrong = errors = 0
    for w in sources:
        idx = build_factor_index(w, 50)
        for n in range(1, 51):
            try:
                got = an.recover_language(w, n, 1)
            except an.InsufficientWindow:
                errors += 1
                continue
            wrong += got != idx.factor_set(n)
    report(12, wrong == 0, f"n <= 50 on two Sturmian windows; {wrong} wrong, {errors} refused")


def _scan_period(xs):
    return next(p for p in range(1, len(xs) + 1)
                if all(xs[i] == xs[i + p] for i in range(len(xs) - p)))


def test_criterion_13_morse_hedlund():
    rng = random.Random(13)
    bad = 0
    for _ in range(100):
        p = rng.randint(1, 15)
        block = [rng.randint(0, 3) for _ in range(p)]
        xs = tuple((block * (500 // p + 1))[:rng.randint(8 * p, 500)])
        w = SequenceWindow(Alphabet.digits(4), 0, xs)
        n = len(xs) // 4
        rep = an.morse_hedlund_classify(complexity_profile(build_factor_index(w, n), n), w)
        bad += rep.verdict != "periodic" or rep.period != _scan_period(xs)
    aperiodic = []
    for alpha in (GOLDEN, RotationNumber.silver()):
        w = sturmian_window(alpha, 2000)
        prof = complexity_profile(build_factor_index(w, 500), 500)
        aperiodic.append(an.morse_hedlund_classify(prof, w).verdict)
    report(13, bad == 0 and set(aperiodic) == {"aperiodic-evidence"},
           f"{100 - bad}/100 periodic verdicts confirmed; Sturmian verdicts {aperiodic}")


def test_criterion_14_isolated_z():
    r = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 5)]
    f = (4, 6, 8, 10)
    z = cs.gen_isolated_z(r, f)
    right = cs.delimiter_gaps(z.window, "right")
    direct = all(z.blocks[i] == tuple(math.floor((k + 1) * r[i - 1]) - math.floor(k * r[i - 1])
                                      for k in range(1, f[i - 1] + 1))
                 for i in range(1, 5))
    report(14, right == [f[0], f[2]] and direct, f"right-hand gaps {right}; blocks direct {direct}")


CLI_RUNS = [
    ["generate", "--spec", "finite-set.spec", "--out", "{out}.win"],
    ["generate", "--spec", "isolated-z.spec", "--out", "{out}.win"],
    ["complexity", "--spec", "sturmian.spec", "--out", "{out}.csv"],
    ["analyze", "--spec", "miller.spec", "--report", "{out}.txt"],
    ["verify", "--spec", "separated.spec", "--out", "{out}.txt"],
    ["verify", "--spec", "skew-y.spec", "--out", "{out}.txt"],
    ["roundtrip", "--spec", "sturmian.spec", "--bits", "10110", "--out", "{out}.win"],
]


def test_criterion_15_cli_determinism(tmp_path, capsys):
    differing = []
    for i, args in enumerate(CLI_RUNS):
        outputs = []
        for rep in range(2):
            out = tmp_path / f"run{i}.{rep}"
            argv = [str(SPECS / a) if a.endswith(".spec") else a.format(out=out) for a in args]
            code = cli_main(argv)
            stdout = capsys.readouterr().out
            files = sorted(tmp_path.glob(f"run{i}.{rep}*"))
            outputs.append((code, stdout, [p.read_bytes() for p in files]))
        if outputs[0] != outputs[1] or not outputs[0][2]:
            differing.append(args[0])
    report(15, not differing, f"{len(CLI_RUNS)} commands run twice; differing {differing}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
