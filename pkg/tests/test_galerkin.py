import numpy as np
import pytest

from plategap import (DeltaPair, Empty, PolygonalTruss, ResonantEigen, SeparableSine, SineModes, SinhAlpha,
                      SymmetricCrossN, Tiles, solve_stiffened_galerkin, solve_weakened)
from plategap.errors import NumericError
from plategap.forces import CoshAlpha
from plategap.modal.galerkin import YBasis, _cholesky_solve


def test_basis_properties(cfg):
    b = YBasis(10, cfg.ell)
    y = np.linspace(-cfg.ell, cfg.ell, 21)
    v = b.values(y).T
    for k in range(b.size):
        np.testing.assert_allclose(v[k, ::-1], (-1) ** k * v[k], atol=1e-14 * np.abs(v[k]).max())
    x, w = np.polynomial.legendre.leggauss(20)
    yq = cfg.ell * x
    d2 = b.values(yq, 2).T[2:]
    gram = (d2 * w * cfg.ell) @ d2.T
    np.testing.assert_allclose(gram, np.eye(b.size - 2), atol=1e-10)


@pytest.mark.parametrize("f", [ResonantEigen(2), SeparableSine(SineModes.single(1)), DeltaPair(1.2),
                               SeparableSine(SineModes(((1, 1.0), (3, 0.2))), SinhAlpha(40.5))],
                         ids=["eigen", "limit", "delta", "sinh"])
@pytest.mark.parametrize("D", [SymmetricCrossN(1, 0.3, 0.01), PolygonalTruss("Squares")], ids=lambda D: D.label)
def test_agrees_with_modal_without_stiffening(f, D, cfg):
    cfg0 = cfg.replace(d=0.0)
    _, g, _ = solve_stiffened_galerkin(f, D, cfg0, (12, 8))
    _, ref, _ = solve_weakened(f, Empty(), cfg0, 12)
    scale = np.abs(ref.coefficients).max()
    tol = 1e-5 if isinstance(f, SeparableSine) and isinstance(f.profile, SinhAlpha) else 1e-9
    np.testing.assert_allclose(g.coefficients, ref.coefficients, atol=tol * scale)


def test_exact_for_polynomial_profiles(cfg):
    cfg0 = cfg.replace(d=0.0)
    f = ResonantEigen(1)
    _, g, rep = solve_stiffened_galerkin(f, Empty(), cfg0, (4, 12))
    _, ref, _ = solve_weakened(f, Empty(), cfg0, 4)
    assert g.coefficients[0] == pytest.approx(ref.coefficients[0], rel=1e-9)


def _random_tiles(rng, cfg):
    x0 = rng.uniform(0.2, 2.5)
    y0 = rng.uniform(-cfg.ell, 0.5 * cfg.ell)
    r1 = (x0, x0 + rng.uniform(0.1, 0.5), y0, y0 + rng.uniform(0.1, 0.5) * cfg.ell)
    x1 = rng.uniform(0.2, 2.5)
    r2 = (x1, x1 + rng.uniform(0.1, 0.5), -cfg.ell * 0.9, cfg.ell * rng.uniform(-0.5, 0.9))
    return Tiles((r1,)), Tiles((r1, r2))


@pytest.mark.parametrize("seed", range(5))
def test_energy_monotone_in_reinforcement(seed, cfg):
    rng = np.random.default_rng(seed)
    small, large = _random_tiles(rng, cfg)
    f = SeparableSine(SineModes(((1, 1.0), (2, -0.5))), SinhAlpha(30.5))
    e0 = solve_stiffened_galerkin(f, Empty(), cfg, (10, 6))[2].extras["energy"]
    e1 = solve_stiffened_galerkin(f, small, cfg, (10, 6))[2].extras["energy"]
    e2 = solve_stiffened_galerkin(f, large, cfg, (10, 6))[2].extras["energy"]
    assert e0 >= e1 * (1 - 1e-12)
    assert e1 >= e2 * (1 - 1e-12)


@pytest.mark.parametrize("D", [SymmetricCrossN(2, 0.5, 0.01), PolygonalTruss("Strips"), PolygonalTruss("Squares")],
                         ids=lambda D: D.label)
def test_even_force_no_gap_on_symmetric_reinforcement(D, cfg):
    even = SeparableSine(SineModes.single(1), CoshAlpha(50.5))
    odd = SeparableSine(SineModes.single(1), SinhAlpha(50.5))
    g_even = solve_stiffened_galerkin(even, D, cfg, (12, 8))[2].max_gap
    g_odd = solve_stiffened_galerkin(odd, D, cfg, (12, 8))[2].max_gap
    assert g_even <= 1e-10 * g_odd


def test_energy_increases_under_refinement(cfg):
    f = ResonantEigen(1)
    D = SymmetricCrossN(1, 0.3, 0.01)
    coarse = solve_stiffened_galerkin(f, D, cfg, (8, 6))[2].extras
    fine = solve_stiffened_galerkin(f, D, cfg, (32, 10))[2].extras
    # nested spaces: the discrete energy increases towards the exact one
    assert fine["energy"] >= coarse["energy"] * (1 - 1e-12)
    assert fine["energy_error_x"] < coarse["energy_error_x"]


def test_stiffening_lowers_gap(cfg):
    f = ResonantEigen(1)
    D = PolygonalTruss("Strips")
    soft = solve_stiffened_galerkin(f, D, cfg.replace(d=0.0), (8, 8))[2].max_gap
    stiff = solve_stiffened_galerkin(f, D, cfg, (8, 8))[2].max_gap
    assert stiff < soft


def test_solution_sampler_consistent_with_gap(cfg):
    sol, g, _ = solve_stiffened_galerkin(ResonantEigen(1), PolygonalTruss("Squares"), cfg, (8, 8))
    x = 1.3
    assert sol(x, cfg.ell) - sol(x, -cfg.ell) == pytest.approx(g(x), rel=1e-10)


def test_input_validation(cfg):
    with pytest.raises(ValueError):
        solve_stiffened_galerkin(ResonantEigen(1), Empty(), cfg, (4, 2))
    with pytest.raises(NumericError):
        _cholesky_solve(-np.eye(2), np.ones(2))
