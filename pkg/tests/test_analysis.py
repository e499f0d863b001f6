import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_diffs, naive_form, naive_sums, small_sets
from mstd.analysis import Kind, classify, form_missing, is_mstd, is_pn, is_pnj, kind_of
from mstd.core import IntSet, LinearForm


def naive_pn(a, n):
    lo, hi = min(a), max(a)
    sums = naive_sums(a)
    diffs = naive_diffs(a)
    return all(s in sums for s in range(2 * lo + n, 2 * hi - n + 1)) and all(
        d in diffs for d in range(-(hi - lo) + n, hi - lo - n + 1)
    )


def naive_pnj(a, n, j):
    k = max(a)
    for j2 in range(j + 1):
        j1 = j - j2
        lo, hi = j1 - j2 * k, j1 * k - j2
        vals = naive_form(a, j1, j2)
        if any(x not in vals for x in range(lo + n, hi - n + 1)):
            return False
    return True


def test_kinds(conway, marica):
    assert classify(conway).kind is Kind.MSTD
    assert classify(marica).to_dict() == {"kind": "MSTD", "sum_card": 30, "diff_card": 29}
    assert classify(IntSet([1, 2, 3])).kind is Kind.BALANCED
    assert classify(IntSet([0, 1, 3])).kind is Kind.MDTS
    assert kind_of(3, 3) is Kind.BALANCED
    assert is_mstd(conway)


def test_classify_empty_raises():
    with pytest.raises(ValueError):
        classify(IntSet())


@given(small_sets)
def test_classification_matches_pair_loop(a):
    c = classify(IntSet(a))
    s, d = len(naive_sums(a)), len(naive_diffs(a))
    assert (c.sum_card, c.diff_card) == (s, d)
    assert c.kind is (Kind.MSTD if s > d else Kind.BALANCED if s == d else Kind.MDTS)


@given(small_sets)
def test_symmetric_sets_are_balanced(a):
    # A = c - A implies A + A = c + (A - A)
    sym = set(a) | {-x for x in a}
    assert classify(IntSet(sym)).kind is Kind.BALANCED


def test_arithmetic_progressions_are_balanced():
    for start, step, length in itertools.product((-3, 0, 7), (1, 2, 5), (1, 2, 6)):
        A = IntSet(start + step * i for i in range(length))
        c = classify(A)
        assert c.sum_card == c.diff_card == 2 * length - 1


def test_marica_is_p8(marica):
    rep = is_pn(marica, 8)
    assert rep and rep.sum_ok and rep.diff_ok
    assert rep.missing_sums == [] and rep.missing_diffs == []


def test_pn_reports_missing_elements(marica):
    rep = is_pn(marica, 2)
    assert not rep.ok
    assert rep.missing_sums == [27]
    assert rep.missing_diffs == [-9, 9]
    assert rep.to_dict()["missing_diffs"] == [-9, 9]


def test_pn_range_checks():
    with pytest.raises(ValueError):
        is_pn(IntSet([1, 5]), 0)
    with pytest.raises(ValueError):
        is_pn(IntSet([1, 5]), 5)
    with pytest.raises(ValueError):
        is_pn(IntSet(), 1)


def test_pn_exhaustive_against_oracle():
    for mask in range(1 << 10):
        a = [1] + [i + 2 for i in range(10) if mask >> i & 1] + [12]
        for n in (1, 3, 6):
            assert bool(is_pn(IntSet(a), n)) == naive_pn(a, n), (a, n)


@given(st.sets(st.integers(2, 13), max_size=10), st.integers(1, 6))
def test_pn_is_monotone_in_n(inner, n):
    A = IntSet({1, 14} | inner)
    if is_pn(A, n):
        assert is_pn(A, n + 1)


@given(st.sets(st.integers(2, 11), max_size=9), st.integers(2, 3), st.integers(1, 8))
@settings(max_examples=80)
def test_pnj_matches_oracle(inner, j, n):
    a = {1, 12} | inner
    if 2 * n > j * 11:
        return
    assert is_pnj(IntSet(a), n, j) == naive_pnj(a, n, j)


def test_pn_implies_higher_orders():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        a = {1, 20} | {x for x in range(2, 20) if rng.random() < 0.5}
        A = IntSet(a)
        if not is_pnj(A, 10, 2):
            continue
        checked += 1
        assert is_pnj(A, 10, 3) and is_pnj(A, 10, 4)


def test_pnj_preconditions():
    with pytest.raises(ValueError):
        is_pnj(IntSet([2, 5]), 1, 2)
    with pytest.raises(ValueError):
        is_pnj(IntSet([1, 5]), 1, 1)
    with pytest.raises(ValueError):
        is_pnj(IntSet([1, 5]), 5, 2)


def test_form_missing():
    A = IntSet([1, 2, 3, 5, 8, 9, 13, 15, 16])
    assert form_missing(A, 2, LinearForm(2, 0)) == [27]
    assert form_missing(A, 8, LinearForm(1, 1)) == []
