from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subshifts.core import (
    Alphabet,
    Certificate,
    InvalidArgument,
    SequenceWindow,
    build_factor_index,
    complexity_profile,
    format_window,
    language_profile,
    parse_window,
    read_window,
    shift_window,
    split_tokens,
    trusted_length,
    write_window,
)


def brute_factors(windows, n):
    out = set()
    for w in windows:
        s = w.symbols
        for i in range(len(s) - n + 1):
            out.add(tuple(s[i:i + n]))
    return out


def brute_extensions(windows, word):
    n = len(word)
    ext = set()
    for w in windows:
        s = w.symbols
        for i in range(len(s) - n):
            if tuple(s[i:i + n]) == word:
                ext.add(s[i + n])
    return ext


windows_st = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.integers(0, k - 1), min_size=1, max_size=60).map(
        lambda xs: SequenceWindow(Alphabet.digits(k), 0, tuple(xs))))


def test_aabab_counts():
    a = Alphabet(("a", "b"))
    w = SequenceWindow.from_tokens(a, "aabab")
    idx = build_factor_index(w, 5)
    assert [idx.count(n) for n in range(1, 6)] == [2, 3, 3, 2, 1]
    assert {a.spell(f) for f in idx.factor_set(2)} == {"aa", "ab", "ba"}
    rs = idx.right_special(1)
    assert [(a.spell(r.word), sorted(r.extensions)) for r in rs.records] == [("a", [0, 1])]


@settings(max_examples=150, deadline=None)
@given(windows_st, st.integers(1, 8))
def test_factor_index_matches_brute_force(w, n_max):
    n_max = min(n_max, len(w))
    idx = build_factor_index(w, n_max)
    for n in range(1, n_max + 1):
        assert idx.factor_set(n) == brute_factors([w], n)
        assert idx.count(n) == len(brute_factors([w], n))
    for n in range(1, n_max):
        rep = idx.right_special(n)
        want = {f for f in brute_factors([w], n) if len(brute_extensions([w], f)) > 1}
        assert {r.word for r in rep.records} == want
        for r in rep.records:
            assert set(r.extensions) == brute_extensions([w], r.word)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=30), min_size=1, max_size=4),
       st.integers(1, 6))
def test_union_index_and_degree_identity(raw, n_max):
    ws = [SequenceWindow(Alphabet.digits(3), 0, tuple(xs)) for xs in raw]
    n_max = min(n_max, min(len(w) for w in ws))
    idx = build_factor_index(ws, n_max)
    for n in range(1, n_max + 1):
        assert idx.factor_set(n) == brute_factors(ws, n)
    for n in range(1, n_max):
        rep = idx.right_special(n)
        assert rep.degree_sum == idx.count(n + 1) - idx.count(n) + rep.dead_ends


def test_left_fill_is_indexed():
    w = SequenceWindow(Alphabet.digits(2), 0, (1, 0, 1), left_fill=0)
    idx = build_factor_index(w, 3)
    assert (0, 0, 0) in idx.factor_set(3)
    assert (0, 0, 1) in idx.factor_set(3)
    assert w.at(-10) == 0
    assert idx.indexed_length == 3 + 3


def test_window_access_and_shift():
    w = SequenceWindow(Alphabet.digits(3), -2, (0, 1, 2, 1))
    assert w.end == 2 and w.at(-2) == 0 and w.at(1) == 1
    with pytest.raises(IndexError):
        w.at(2)
    s = shift_window(w, 1)
    assert s.at(-3) == w.at(-2)


def test_invalid_construction():
    with pytest.raises(InvalidArgument):
        SequenceWindow(Alphabet.digits(2), 0, (0, 2))
    with pytest.raises(InvalidArgument):
        Alphabet(("a", "a"))
    with pytest.raises(InvalidArgument):
        build_factor_index(SequenceWindow(Alphabet.digits(2), 0, (0, 1)), 0)


def test_profile_trust_and_certificate():
    w = SequenceWindow(Alphabet.digits(2), 0, tuple([0, 1] * 20))
    idx = build_factor_index(w, 12)
    p = complexity_profile(idx)
    assert p.trusted_n == trusted_length(40) == 10
    assert p.counts[3] == 2 and p.diffs[3] == 0
    assert p.certificate is None
    q = p.with_certificate(Certificate(frozenset({1, 2})))
    assert q.certificate.covers(2) and not q.certificate.covers(3)
    lp = language_profile({1: 2, 2: 3})
    assert lp.trusted_n == 2 and lp.certificate.covers(2)


def test_split_tokens_keeps_parenthesised_commas():
    assert split_tokens("(0,a),(1,a),(1,b)") == ["(0,a)", "(1,a)", "(1,b)"]


@settings(max_examples=60, deadline=None)
@given(windows_st, st.integers(-50, 50), st.booleans())
def test_window_file_round_trip(w, base, fill):
    w = SequenceWindow(w.alphabet, base, w.symbols, 0 if fill else None)
    text = format_window(w)
    assert text.endswith("\n") and text.count("\n") == 4
    assert parse_window(text) == w


def test_window_file_on_disk(tmp_path):
    a = Alphabet(("(0,a)", "(1,a)", "(1,b)"))
    w = SequenceWindow(a, 3, (0, 2, 1, 0))
    path = tmp_path / "w.win"
    write_window(path, w)
    assert read_window(path) == w
    assert b"\r" not in path.read_bytes()


def test_bad_window_file():
    with pytest.raises(InvalidArgument):
        parse_window("0,1\nx\n-\n0 1\n")
    with pytest.raises(InvalidArgument):
        parse_window("0,1\n0\n-\n0 2\n")
