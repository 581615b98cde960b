import math

import numpy as np
import pytest

from plategap import DomainError, PRESET, PlateConfig, torsional_eigenpair
from plategap.forces import MAX_RESONANT_MODE
from plategap.modal.eigen import admissible, bracket, determinant


@pytest.mark.parametrize("m", range(1, 6))
def test_eigenvalue_in_bracket(m, cfg):
    p = torsional_eigenpair(m, cfg)
    lo, hi = bracket(m, cfg)
    assert lo < p.nu < hi
    assert 0 < p.gamma * cfg.ell < math.pi / 2


@pytest.mark.parametrize("m", [1, 2, 5, 40, 500, MAX_RESONANT_MODE])
def test_boundary_and_ode_residuals(m, cfg):
    p = torsional_eigenpair(m, cfg)
    assert max(p.bc_residuals()) < 1e-10
    y = np.linspace(-cfg.ell, cfg.ell, 41)
    assert np.max(p.ode_residual(y)) < 1e-8


@pytest.mark.parametrize("m", [1, 3])
def test_profile_odd_and_vanishes_at_center(m, cfg):
    p = torsional_eigenpair(m, cfg)
    assert p(0.0) == 0.0
    y = np.linspace(0, cfg.ell, 9)
    np.testing.assert_allclose(p(-y), -p(y), atol=1e-14 * abs(p(cfg.ell)))
    assert p(cfg.ell) > 0


def _direct_determinant(nu, m, cfg):
    """Free-edge determinant built from unscaled sinh and sin columns."""
    s, ell = cfg.sigma, cfg.ell
    r = math.sqrt(nu)
    beta, gam = math.sqrt(m * m + r), math.sqrt(r - m * m)
    m2 = m * m
    a11 = (beta**2 - s * m2) * math.sinh(beta * ell)
    a12 = -(gam**2 + s * m2) * math.sin(gam * ell)
    a21 = (beta**3 - (2 - s) * m2 * beta) * math.cosh(beta * ell)
    a22 = (-gam**3 - (2 - s) * m2 * gam) * math.cos(gam * ell)
    return a11 * a22 - a12 * a21


@pytest.mark.parametrize("m", [1, 2, 4])
def test_determinant_oracle(m, cfg):
    p = torsional_eigenpair(m, cfg)
    lo, hi = bracket(m, cfg)
    for nu in np.linspace(lo, hi, 13)[1:-1]:
        a, b = determinant(nu, m, cfg), _direct_determinant(nu, m, cfg)
        assert np.sign(a) == np.sign(b)
    near = [_direct_determinant(p.nu * (1 + t), m, cfg) for t in (-1e-6, 1e-6)]
    assert near[0] * near[1] < 0


def test_unit_l2_normalization(cfg):
    p = torsional_eigenpair(2, cfg, "UnitL2")
    assert p.l2_norm_sq() == pytest.approx(1.0, rel=1e-12)
    raw = torsional_eigenpair(2, cfg, "Raw")
    ratio = p(cfg.ell) / raw(cfg.ell)
    assert p(0.3 * cfg.ell) == pytest.approx(ratio * raw(0.3 * cfg.ell), rel=1e-12)


def test_admissibility(cfg):
    assert admissible(MAX_RESONANT_MODE, cfg)
    assert not admissible(MAX_RESONANT_MODE + 1, cfg)
    with pytest.raises(DomainError):
        torsional_eigenpair(MAX_RESONANT_MODE + 1, cfg)
    with pytest.raises(DomainError):
        torsional_eigenpair(0, cfg)
    with pytest.raises(DomainError):
        torsional_eigenpair(1, cfg, "Peak")


def test_admissibility_depends_on_sigma():
    cfg = PlateConfig(sigma=0.9)
    assert not admissible(60, cfg)
    with pytest.raises(DomainError):
        torsional_eigenpair(60, cfg)


def test_determinant_domain(cfg):
    with pytest.raises(DomainError):
        determinant(0.5, 1, cfg)
