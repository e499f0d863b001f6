import math

import pytest

from mstd.analysis import is_pnj
from mstd.core import IntSet, LinearForm, eval_form
from mstd.repro import THREE, TRIPLE_SEED_1, TRIPLE_SEED_2, TWO_ONE
from mstd.search import (
    SearchConfig,
    all_forms,
    evaluate,
    find_seed,
    iter_hits,
    random_candidate,
    verify_seed,
)

SUM2, DIFF2 = LinearForm(2, 0), LinearForm(1, 1)


def cfg12(**kw):
    base = dict(n=12, j=2, target=(SUM2, DIFF2), inclusion_prob=0.5, budget=20_000, seed=0)
    base.update(kw)
    return SearchConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(n=0, j=2, target=(SUM2, DIFF2))
    with pytest.raises(ValueError):
        SearchConfig(n=5, j=3, target=(SUM2, DIFF2))
    with pytest.raises(ValueError):
        cfg12(inclusion_prob=1.0)
    with pytest.raises(ValueError):
        cfg12(budget=0)
    with pytest.raises(ValueError):
        cfg12(fringe_prob=0.0)
    assert SearchConfig(n=5, j=3, target=(THREE, TWO_ONE)).prob == pytest.approx(1 / 3)


def test_candidates_are_deterministic_and_in_range():
    cfg = cfg12()
    for i in range(50):
        A = random_candidate(cfg, i)
        assert A == random_candidate(cfg, i)
        assert A.min() == 1 and A.max() == 24
    assert random_candidate(cfg, 0) != random_candidate(cfg12(seed=1), 0)


def test_inclusion_frequency_is_binomial():
    cfg = cfg12(inclusion_prob=0.3)
    draws = 4000
    counts = [0] * 22
    for i in range(draws):
        for x in random_candidate(cfg, i):
            if 1 < x < 24:
                counts[x - 2] += 1
    sd = math.sqrt(draws * 0.3 * 0.7)
    for c in counts:
        assert abs(c - draws * 0.3) < 4 * sd


def test_fringe_profile_changes_edge_probabilities():
    cfg = cfg12(fringe_width=3, fringe_prob=0.9, inclusion_prob=0.2)
    probs = cfg.element_probs()
    assert probs[:3] == [0.9] * 3 and probs[-3:] == [0.9] * 3
    assert probs[3:-3] == [0.2] * (len(probs) - 6)


def test_all_forms_match_eval_form():
    A = IntSet([1, 3, 4, 9, 12])
    forms = all_forms(A, 4)
    assert set(forms) == {LinearForm(4, 0), LinearForm(3, 1), LinearForm(2, 2)}
    for f, S in forms.items():
        assert S == eval_form(f, A)


def test_evaluate_agrees_with_analysis():
    cfg = cfg12()
    for i in range(300):
        A = random_candidate(cfg, i)
        pnj, c1, c2 = evaluate(A, 12, 2, (SUM2, DIFF2))
        assert pnj == is_pnj(A, 12, 2)
        assert (c1, c2) == (len(A + A), len(A - A))


def test_finds_mstd_seed_for_n12():
    res = find_seed(cfg12())
    assert res.found
    assert res.hit.index == 5868
    assert res.hit.set.to_list() == [1, 3, 4, 8, 10, 11, 14, 15, 20, 21, 22, 24]
    assert (res.hit.first_card, res.hit.second_card) == (44, 43)
    assert verify_seed(res.hit.set, 12, 2, (SUM2, DIFF2))["ok"]
    assert res.examined == 5869


def test_seed_reproducibility_and_iter_hits():
    a = find_seed(cfg12(seed=7))
    b = find_seed(cfg12(seed=7))
    assert a == b
    hits = list(iter_hits(cfg12(seed=7)))
    assert hits and hits[0] == a.hit
    assert [h.index for h in hits] == sorted(h.index for h in hits)


def test_chunking_does_not_change_winner():
    assert find_seed(cfg12(), chunk=777).hit == find_seed(cfg12(), chunk=4096).hit


@pytest.mark.slow
def test_threads_do_not_change_winner():
    assert find_seed(cfg12(), threads=2).hit == find_seed(cfg12(), threads=1).hit


def test_budget_exhaustion_reports_miss():
    res = find_seed(cfg12(budget=100))
    assert not res.found and res.examined == 100
    assert res.to_dict()["found"] is False


@pytest.mark.parametrize("A", [TRIPLE_SEED_1, TRIPLE_SEED_2])
def test_triple_form_fixtures_verify(A):
    rep = verify_seed(A, 25, 3, (THREE, TWO_ONE))
    assert rep["in_range"] and rep["pnj"] and rep["ok"]
    assert rep["first_card"] > rep["second_card"]


def test_verify_seed_rejects_out_of_range():
    rep = verify_seed(IntSet([2, 5, 24]), 12, 2, (SUM2, DIFF2))
    assert not rep["in_range"] and not rep["ok"]
