import json
import math

import numpy as np
import pytest

from plategap import (DeltaPair, Empty, Field, PolygonalTruss, ResonantEigen, SeparableSine, SineModes, SinhAlpha,
                      SymmetricCrossN, max_gap, mode_solve, solve_weakened)
from plategap.cross import limit_gap, mode_constants, sin_g
from plategap.forces import CoshAlpha, scale_force
from plategap.modal.bvp import kernel
from plategap.modal.grid import make_y_grid
from plategap.series import delta_gap, upsilon


@pytest.mark.parametrize("m", [1.0, 4.0, 30.0])
def test_green_kernel(m):
    s = np.array([0.003, 0.01, 0.02])
    h = 1e-5
    # fourth-order operator annihilates the kernel away from the origin
    d4 = (kernel(s + h, m, 3) - kernel(s - h, m, 3)) / (2 * h)
    d2, d0 = kernel(s, m, 2), kernel(s, m, 0)
    np.testing.assert_allclose(d4 - 2 * m * m * d2 + m**4 * d0, 0, atol=1e-6 * np.abs(d4).max())
    fd = (kernel(s + h, m, 0) - kernel(s - h, m, 0)) / (2 * h)
    np.testing.assert_allclose(kernel(s, m, 1), fd, rtol=1e-6)
    assert kernel(1e-15, m, 3) - kernel(-1e-15, m, 3) == pytest.approx(1.0, rel=1e-9)
    np.testing.assert_allclose(kernel(-s, m, 1), -kernel(s, m, 1))


@pytest.mark.parametrize("m", [1, 5, 50])
def test_top_load_gap(m, cfg):
    p = mode_solve(m, lambda y: 0 * y, cfg, top=1.0)
    assert p.gap == pytest.approx(2 * upsilon(m, cfg) / (1 - cfg.sigma), rel=1e-12)
    assert p.bc_residual < 1e-8


@pytest.mark.parametrize("D", [Empty(), SymmetricCrossN(2, 0.3, 0.01)], ids=lambda D: D.label)
@pytest.mark.parametrize("m", [1, 3, 7])
def test_manufactured_cross_profile(D, m, cfg):
    mc = mode_constants(m, 100.5, SineModes(((1, 1.0), (3, 0.5), (7, 0.2))), D, cfg)
    grid = make_y_grid(cfg, breaks=(0.01,))
    p = mode_solve(m, np.vectorize(mc.rhs), cfg, grid)
    y = np.linspace(-cfg.ell, cfg.ell, 23)
    ref = np.array([mc.profile(t) for t in y])
    assert np.max(np.abs(p(y) - ref)) <= 1e-8 * np.max(np.abs(ref))
    assert p.gap == pytest.approx(mc.xi, rel=1e-8)


def test_zero_rhs_gives_zero(cfg):
    p = mode_solve(2, lambda y: 0 * y, cfg)
    assert np.all(p(np.linspace(-cfg.ell, cfg.ell, 5)) == 0)
    assert p.gap == 0


def test_grid_doubling(cfg):
    f = ResonantEigen(2)
    D = PolygonalTruss("Squares")
    _, g1, _ = solve_weakened(f, D, cfg, 8, panels=32)
    _, g2, _ = solve_weakened(f, D, cfg, 8, panels=64)
    assert max_gap(g1)[1] == pytest.approx(max_gap(g2)[1], rel=1e-8)


def test_linearity(cfg):
    f = SeparableSine(SineModes(((1, 1.0), (2, 0.3))), SinhAlpha(60.5))
    D = SymmetricCrossN(1, 0.3, 0.01)
    _, a, _ = solve_weakened(f, D, cfg, 20)
    _, b, _ = solve_weakened(scale_force(f, -2.5), D, cfg, 20)
    np.testing.assert_allclose(b.coefficients, -2.5 * a.coefficients, rtol=1e-12, atol=1e-20)


@pytest.mark.parametrize("D", [Empty(), SymmetricCrossN(3, 0.5, 0.01), PolygonalTruss("Squares")],
                         ids=lambda D: D.label)
def test_even_force_has_no_gap(D, cfg):
    f = SeparableSine(SineModes.single(1), CoshAlpha(50.5))
    _, g, rep = solve_weakened(f, D, cfg, 10)
    scale = abs(solve_weakened(SeparableSine(SineModes.single(1), SinhAlpha(50.5)), D, cfg, 10)[2].max_gap)
    assert rep.max_gap < 1e-12 * scale


@pytest.mark.parametrize("n", [1, 4])
@pytest.mark.parametrize("D", [Empty(), SymmetricCrossN(0, 0.5, 0.01), SymmetricCrossN(3, 0.3, 0.01)],
                         ids=lambda D: f"{D.label}-{getattr(D, 'mu', 0)}")
def test_limit_force_matches_analytic(n, D, cfg):
    f = SeparableSine(sin_g(n))
    _, g, rep = solve_weakened(f, D, cfg, 40)
    ref = limit_gap(sin_g(n), D, cfg, 40)
    np.testing.assert_allclose(g.coefficients, ref.coefficients, rtol=1e-9, atol=1e-12 * np.abs(ref.coefficients).max())
    assert rep.bc_residual < 1e-8


def test_delta_pair_matches_series(cfg):
    _, g, _ = solve_weakened(DeltaPair(1.0), Empty(), cfg, 200)
    np.testing.assert_allclose(g.coefficients, delta_gap(1.0, 200, cfg).coefficients, rtol=1e-10, atol=1e-20)


def test_strips_ratio_constant(cfg):
    empty = [solve_weakened(ResonantEigen(m), Empty(), cfg, 40)[2].max_gap for m in (1, 2)]
    strips = [solve_weakened(ResonantEigen(m), PolygonalTruss("Strips"), cfg, 40)[2].max_gap for m in (1, 2)]
    r = np.array(strips) / np.array(empty)
    assert r[0] == pytest.approx(r[1], rel=1e-3)
    assert r[0] < 1


def test_field_force_and_solution_sampler(cfg):
    f = Field(lambda x, y: np.sin(x) * y / cfg.ell)
    sol, g, rep = solve_weakened(f, Empty(), cfg, 6)
    x = math.pi / 3
    gap = sol(x, cfg.ell) - sol(x, -cfg.ell)
    assert gap == pytest.approx(g(x), rel=1e-10)
    assert np.abs(g.coefficients[1:]).max() < 1e-12 * abs(g.coefficients[0])
    assert sol.export_csv(3, 3).startswith("x,y,u\n")


def test_report_serialization(cfg):
    rep = solve_weakened(SeparableSine(), Empty(), cfg, 5)[2]
    d = json.loads(rep.to_json(timing=False))
    assert "wall_time" not in d and d["solver"] == "modal"
    assert d["coefficients"][0] == pytest.approx(rep.gap.coefficients[0])
