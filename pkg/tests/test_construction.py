import itertools

import pytest

from mstd.analysis import Kind, classify, is_pn
from mstd.construction import (
    ConstructionError,
    DigitInteractionWarning,
    FamilySpec,
    base_expand,
    construct,
    construct_report,
    count_lower_bound,
    count_M,
    enumerate_M,
    family_percentage_lower_bound,
    lower_bound_table,
    nathanson_grid,
    nathanson_set,
    sweep_family,
    validate_M,
)
from mstd.core import IntSet


def brute_M(n, k, m, exclude_first=True):
    """Admissible M by testing every subset of [n+k+1, n+k+m] against the definition."""
    lo = n + k + 1
    out = []
    for bits in range(1 << m):
        M = {lo + i for i in range(m) if bits >> i & 1}
        if exclude_first and lo in M:
            continue
        if all(any(x in M for x in range(l, l + k)) for l in range(lo, n + m + 2)):
            out.append(M)
    return out


def test_validate_M_examples():
    assert validate_M(IntSet(), 8, 8, 1)
    assert not validate_M(IntSet([26]), 8, 8, 10)
    assert validate_M(IntSet([20, 26]), 8, 8, 10)
    assert not validate_M(IntSet([17]), 8, 8, 10)
    with pytest.raises(ValueError):
        validate_M(IntSet([40]), 8, 8, 10)


@pytest.mark.parametrize("n,k,m", [(1, k, m) for k in range(1, 6) for m in range(0, 11)] + [(8, 8, 10), (3, 2, 7)])
def test_enumerate_and_count_match_brute_force(n, k, m):
    for excl in (True, False):
        want = sorted(sorted(M) for M in brute_M(n, k, m, excl))
        got = [M.to_list() for M in enumerate_M(n, k, m, excl)]
        assert sorted(got) == want
        assert len(set(map(tuple, got))) == len(got)
        assert count_M(n, k, m, excl) == len(want)


def test_enumeration_is_lexicographic():
    sets = list(enumerate_M(1, 3, 6))
    keys = [tuple(int(x in M) for x in range(5, 11)) for M in sets]
    assert keys == sorted(keys)


def test_m_zero_has_one_choice():
    assert [M.to_list() for M in enumerate_M(8, 8, 0)] == [[]]
    assert count_M(8, 8, 0) == 1


def test_block_bound_example():
    assert count_lower_bound(4, 16) == pytest.approx(60.75)
    assert count_M(1, 4, 8, exclude_first=False) >= 60.75


def test_block_bound_dominated_by_gap_only_counts():
    for row in lower_bound_table(range(2, 9), range(0, 25), exclude_first=False):
        assert row["count"] >= row["bound"], row


def test_count_lower_bound_domain():
    with pytest.raises(ValueError):
        count_lower_bound(1, 10)
    with pytest.raises(ValueError):
        count_lower_bound(4, 7)


def test_construct_examples(marica):
    A = construct(FamilySpec(marica, 8, 8, 0))
    assert len(A) == 25 and A.min() == 1 and A.max() == 32
    c = classify(A)
    assert c.kind is Kind.MSTD and (c.sum_card, c.diff_card) == (62, 61)
    assert is_pn(A, 8)

    rep = construct_report(FamilySpec(marica, 8, 8, 1))
    assert rep.verified
    assert rep.result_class.sum_card == 30 + 2 * 17 == 64
    assert rep.result_class.diff_card == 63
    assert rep.to_dict()["expected_gain"] == 34


def test_construct_rejects_bad_parameters(marica):
    cases = [
        FamilySpec(marica, 8, 7, 0),
        FamilySpec(marica, 8, 8, -1),
        FamilySpec(IntSet([1, 2, 3]), 8, 8, 0),
        FamilySpec(IntSet(range(1, 17)), 8, 8, 0),
        FamilySpec(marica, 8, 8, 10, IntSet([26])),
        FamilySpec(marica, 8, 8, 10, IntSet([17, 20])),
    ]
    for spec in cases:
        with pytest.raises(ConstructionError):
            construct(spec)


def test_small_sweep(marica):
    res = sweep_family(marica, 8, [8, 9], range(0, 6))
    assert res.ok and res.distinct
    assert sum(r.M_count for r in res.rows) == sum(r.verified_count for r in res.rows)
    assert res.rows[0].M_count == 1


@pytest.mark.parametrize("m,d,k", list(nathanson_grid()))
def test_nathanson_grid_is_mstd(m, d, k):
    assert classify(nathanson_set(m, d, k)).kind is Kind.MSTD


def test_nathanson_preconditions():
    for args in [(3, 1, 5), (6, 3, 5), (6, 0, 5), (7, 2, 2), (7, 5, 3)]:
        with pytest.raises(ValueError):
            nathanson_set(*args)


def test_base_expand(conway, marica):
    A2 = base_expand(conway, 100, 2)
    assert len(A2) == 64
    assert classify(A2).kind is Kind.MSTD
    shifted = marica.shift(-1)
    for t in (2, 3):
        assert classify(base_expand(shifted, 100, t)).kind is Kind.MSTD
    assert base_expand(conway, 100, 1) == conway


def test_base_expand_explicit_digits(conway):
    want = {a + 100 * b for a, b in itertools.product(conway, repeat=2)}
    assert set(base_expand(conway, 100, 2)) == want


def test_base_expand_small_base_is_flagged(conway):
    with pytest.warns(DigitInteractionWarning):
        base_expand(conway, 10, 2)
    with pytest.raises(ValueError):
        base_expand(conway, 0, 2)


def test_family_percentage_is_positive_and_decreasing():
    vals = [family_percentage_lower_bound(8, 2**e) for e in range(7, 14)]
    assert all(v > 0 for v in vals)
    assert vals == sorted(vals, reverse=True)
