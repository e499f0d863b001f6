import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mstd.density import (
    DensityParams,
    argmax_summand,
    bound_envelope,
    density_rows,
    eval_S,
    log_summand,
    predicted_umax,
    refined_lower_shape,
    summand,
)

mpmath.mp.dps = 40


def mp_S(a, b, c, n, r):
    a, b, c, r = (mpmath.mpf(x) for x in (a, b, c, r))
    total = mpmath.mpf(0)
    for k in range(n, int(mpmath.floor(r / 4)) + 1):
        total += mpmath.power(2, -a * k) * mpmath.power(1 - mpmath.power(2, -b * k), r / (c * k))
    return total


@pytest.mark.parametrize("e", range(7, 18))
def test_family_sum_matches_high_precision(e):
    p = DensityParams.family(8, 2**e)
    got = eval_S(p)
    want = mp_S(2, 0.5, 0.5, 8, 2**e)
    assert got == pytest.approx(float(want), rel=1e-10)


@given(
    st.floats(0.5, 3), st.floats(0.2, 1.5), st.floats(0.2, 1.5), st.integers(1, 6), st.integers(0, 2000)
)
@settings(max_examples=40, deadline=None)
def test_general_sum_matches_high_precision(a, b, c, n, extra):
    r = 4 * n + extra
    got = eval_S(DensityParams(a, b, c, n, r))
    want = float(mp_S(a, b, c, n, r))
    assert got == pytest.approx(want, rel=1e-10, abs=1e-300)


def test_tiny_summands_do_not_underflow_to_garbage():
    p = DensityParams.family(1, 4000)
    assert summand(p, 1) == 0.0 or summand(p, 1) < 1e-300
    assert math.isfinite(log_summand(p, 1))
    assert eval_S(p) > 0


def test_parameter_validation():
    with pytest.raises(ValueError):
        DensityParams(2, 0.5, 0.5, 8, 31)
    with pytest.raises(ValueError):
        DensityParams(0, 0.5, 0.5, 8, 100)
    with pytest.raises(ValueError):
        DensityParams(2, 0.5, 0.5, 0, 100)
    p = DensityParams.family(8, 32)
    assert list(p.ks()) == [8]


@pytest.mark.parametrize("e", [10, 13, 16])
def test_summand_is_unimodal(e):
    p = DensityParams.family(8, 2**e)
    vals = [log_summand(p, k) for k in p.ks()]
    k_star, _ = argmax_summand(p)
    i = k_star - p.n
    assert all(x < y for x, y in zip(vals[:i], vals[1 : i + 1]))
    assert all(x > y for x, y in zip(vals[i:], vals[i + 1 :]))


def test_argmax_ties_go_to_smallest_k():
    # a summand that is constant in k: b large enough that the second factor is 1 in floating point
    p = DensityParams(1e-9, 2000, 1, 1, 40)
    k, _ = argmax_summand(p)
    assert k == 1


def test_constant_for_family():
    p = DensityParams.family(8, 2**12)
    C = p.b * math.log(2) / (p.a * p.c)
    assert C == pytest.approx(math.log(2) / 2)


@pytest.mark.parametrize("e", range(12, 18))
def test_predicted_peak_tracks_argmax(e):
    p = DensityParams.family(8, 2**e)
    k_star, _ = argmax_summand(p)
    assert abs(k_star - math.log2(predicted_umax(p))) <= 2


@pytest.mark.parametrize("e", range(12, 18))
def test_first_order_residual_has_closed_form(e):
    # u = (Cr b / log Cr)^(1/b) gives u^b log u / (Cr) = 1 + (log b - log log Cr) / log Cr exactly
    p = DensityParams.family(8, 2**e)
    C = p.b * math.log(2) / (p.a * p.c)
    cr = C * p.r
    u = predicted_umax(p)
    ratio = u**p.b * math.log(u) / cr
    assert ratio == pytest.approx(1 + (math.log(p.b) - math.log(math.log(cr))) / math.log(cr), rel=1e-9)


def test_predicted_umax_needs_cr_above_one():
    with pytest.raises(ValueError):
        predicted_umax(DensityParams(20, 0.5, 0.5, 1, 4))


def test_scaled_sum_stays_in_band():
    vals = [2 ** (4 * e) * eval_S(DensityParams.family(8, 2**e)) for e in range(7, 18)]
    assert min(vals) > 900 and max(vals) < 3e5


def test_envelope_and_refined_shape():
    p = DensityParams.family(8, 2**12)
    lo, hi = bound_envelope(p, 0.1)
    assert lo == pytest.approx(2.0**-48)
    assert hi == pytest.approx(math.log(2**12) ** 4.1 * lo)
    assert refined_lower_shape(p) == pytest.approx((math.log(2**12) / 2**12) ** 4)
    with pytest.raises(ValueError):
        bound_envelope(p, 0)


def test_density_rows_columns():
    rows = density_rows(8, [7, 8])
    assert [r["r"] for r in rows] == [128, 256]
    assert set(rows[0]) == {"r", "S", "lower_shape", "upper_shape", "k_star", "predicted_log2_umax"}
    assert rows[0]["S"] > rows[1]["S"]
