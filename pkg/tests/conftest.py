import itertools

import pytest
from hypothesis import strategies as st

from mstd.core import IntSet


def naive_sums(A):
    return {a + b for a in A for b in A}


def naive_diffs(A):
    return {a - b for a in A for b in A}


def naive_form(A, j1, j2):
    out = {0}
    for _ in range(j1):
        out = {s + a for s in out for a in A}
    for _ in range(j2):
        out = {s - a for s in out for a in A}
    return out


def subsets(n):
    """All nonempty subsets of [1, n] as tuples."""
    for r in range(1, n + 1):
        yield from itertools.combinations(range(1, n + 1), r)


small_sets = st.sets(st.integers(-40, 40), min_size=1, max_size=14)


@pytest.fixture
def conway():
    return IntSet([0, 2, 3, 4, 7, 11, 12, 14])


@pytest.fixture
def marica():
    return IntSet([1, 2, 3, 5, 8, 9, 13, 15, 16])
