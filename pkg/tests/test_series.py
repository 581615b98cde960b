import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plategap import DomainError, GapSeries, NumericError, PRESET, delta_gap, max_gap, normalized_delta_gap, upsilon
from plategap.series import phi_eval, sine_sum, tail_bound, upsilon_bar, upsilon_naive


def test_upsilon_first_modes():
    assert upsilon_bar(1) * 1e4 == pytest.approx(65.444, abs=5e-4)
    np.testing.assert_allclose(upsilon(np.arange(1, 60)), upsilon_naive(np.arange(1, 60)), rtol=1e-13)


def test_upsilon_large_modes_finite():
    m = np.array([1e3, 1e5, 1e8])
    v = upsilon(m)
    assert np.all(np.isfinite(v)) and np.all(v > 0)
    np.testing.assert_allclose(v * m**3, 1 / (3 + PRESET.sigma), rtol=1e-12)


def test_upsilon_decreasing():
    v = upsilon(np.arange(1, 20001))
    assert np.all(np.diff(v) < 0)


def test_upsilon_rejects_zero():
    with pytest.raises(DomainError):
        upsilon(0)


def test_tail_bound_dominates_tail():
    M = 200
    tail = upsilon(np.arange(M + 1, 400_001)).sum()
    assert tail <= tail_bound(M)


def test_phi_against_direct_sum():
    x = 0.7
    m = np.arange(1, 501)
    assert phi_eval(x, 500) == pytest.approx(float(np.sum(upsilon(m) * np.sin(m * x) ** 2)), rel=1e-13)
    assert phi_eval(0.0, 100) == 0.0


def test_phi_maximum_at_half_pi():
    x = np.linspace(0.05, math.pi - 0.05, 301)
    vals = phi_eval(x, 2000)
    assert abs(x[np.argmax(vals)] - math.pi / 2) < 0.02


def test_delta_gap_symmetry():
    a = delta_gap(0.4, 2000)
    b = delta_gap(math.pi - 0.4, 2000)
    x = np.linspace(0.1, 3.0, 9)
    np.testing.assert_allclose(a(x), b(math.pi - x), rtol=1e-12, atol=1e-18)


def test_delta_gap_domain():
    with pytest.raises(DomainError):
        delta_gap(0.0)
    with pytest.raises(DomainError):
        normalized_delta_gap(math.pi)


def test_normalized_delta_value_at_z():
    g = normalized_delta_gap(math.pi / 3, 4000)
    raw = delta_gap(math.pi / 3, 4000)
    assert g(math.pi / 3) == pytest.approx(math.sqrt(2 * raw(math.pi / 3)), rel=1e-12)


def test_max_gap_single_mode():
    g = GapSeries(np.array([0.0, 0.0, 2.5]))
    x, v = max_gap(g)
    assert v == pytest.approx(2.5, rel=1e-15)
    assert x == pytest.approx(math.pi / 6, abs=1e-10)


def test_max_gap_zero_series():
    assert max_gap(GapSeries(np.zeros(5))) == (0.0, 0.0)
    with pytest.raises(DomainError):
        max_gap(GapSeries(np.zeros(0)))


def test_max_gap_half_pi():
    x, v = max_gap(GapSeries([1.0]))
    assert x == pytest.approx(math.pi / 2, abs=1e-12)
    assert v == 1.0


def test_max_gap_tie_picks_smallest_abscissa():
    x, v = max_gap(GapSeries([0.0, 1.0]))
    assert x == pytest.approx(math.pi / 4, abs=1e-10)


def test_sine_sum_order_independent():
    rng = np.random.default_rng(3)
    c = rng.standard_normal(300)
    x = rng.uniform(0, math.pi, 50)
    whole = sine_sum(c, x)
    parts = np.concatenate([sine_sum(c, x[:17]), sine_sum(c, x[17:])])
    assert np.array_equal(whole, parts)


def test_gap_series_validation():
    with pytest.raises(NumericError):
        GapSeries([1.0, np.nan])
    with pytest.raises(DomainError):
        GapSeries([1.0], tail_bound=-1.0)


def test_gap_series_round_trips():
    g = delta_gap(1.0, 50)
    assert np.array_equal(GapSeries.from_csv(g.to_csv()).coefficients, g.coefficients)
    assert np.array_equal(GapSeries.from_dict(g.to_dict()).coefficients, g.coefficients)


def test_on_grid_matches_direct():
    g = delta_gap(1.1, 40)
    x, v = g.on_grid(200)
    np.testing.assert_allclose(v, sine_sum(g.coefficients, x), atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=12))
def test_max_gap_bounds_samples(c):
    g = GapSeries(c)
    _, v = max_gap(g)
    x = np.linspace(0, math.pi, 997)
    assert v >= np.max(np.abs(g(x))) - 1e-12
    assert v <= np.sum(np.abs(c)) + 1e-12
