"""First torsional eigenpair of each x-mode.

The odd ansatz ``theta(y) = a sinh(beta y) + b sin(gamma y)`` with
``beta = sqrt(m^2 + sqrt(nu))`` and ``gamma = sqrt(sqrt(nu) - m^2)`` solves
``theta'''' - 2 m^2 theta'' + (m^4 - nu) theta = 0``. The free-edge rows at
``y = ell`` give a 2x2 determinant in ``nu``. Parametrizing by ``gamma`` maps
the bracket ``m^4 < nu < (m^2 + pi^2/(4 ell^2))^2`` onto
``0 < gamma ell < pi/2``.
"""

from __future__ import annotations

import dataclasses
import functools
import math

import numpy as np
from scipy.optimize import brentq

from ..config import PRESET, PlateConfig
from ..errors import DomainError, EigenvalueNotFoundError

SCAN_POINTS = 4000


def _det(gam: float, m: int, cfg: PlateConfig) -> float:
    """Boundary determinant divided by ``cosh(beta ell)``."""
    s, ell = cfg.sigma, cfg.ell
    m2 = m * m
    beta = math.sqrt(2 * m2 + gam * gam)
    b2, g2 = beta * beta, gam * gam
    return (-(b2 - s * m2) * math.tanh(beta * ell) * gam * (g2 + (2 - s) * m2) * math.cos(gam * ell)
            + (g2 + s * m2) * math.sin(gam * ell) * beta * (b2 - (2 - s) * m2))


def admissible(m: int, cfg: PlateConfig = PRESET) -> bool:
    """Condition ``tanh(sqrt2 m ell) > sigma^2/(2-sigma)^2 sqrt2 m ell``."""
    r = math.sqrt(2) * m * cfg.ell
    return math.tanh(r) > cfg.sigma**2 / (2 - cfg.sigma) ** 2 * r


def _sinh_ratio(beta, y, ell):
    """``sinh(beta y) / sinh(beta ell)`` without overflow."""
    y = np.asarray(y, dtype=float)
    return (np.exp(beta * (y - ell)) - np.exp(-beta * (y + ell))) / (-math.expm1(-2 * beta * ell))


def _cosh_ratio(beta, y, ell):
    y = np.asarray(y, dtype=float)
    return (np.exp(beta * (y - ell)) + np.exp(-beta * (y + ell))) / (-math.expm1(-2 * beta * ell))


@dataclasses.dataclass(frozen=True)
class TorsionalEigenpair:
    """Eigenvalue ``nu`` and profile ``theta(y)`` of the first torsional mode.

    ``theta(y) = a_hat sinh(beta y)/sinh(beta ell) + b sin(gamma y)``.

    Attributes:
        m: x-mode index.
        nu: Eigenvalue.
        beta: ``sqrt(m^2 + sqrt(nu))``.
        gamma: ``sqrt(sqrt(nu) - m^2)``.
        a_hat: Coefficient of the scaled hyperbolic part.
        b: Coefficient of ``sin(gamma y)``.
        normalization: ``UnitL2`` (``||sin(mx) theta||_{L2} = 1``) or ``Raw``.
        ell: Plate half-width.
        sigma: Poisson ratio.
    """

    m: int
    nu: float
    beta: float
    gamma: float
    a_hat: float
    b: float
    normalization: str
    ell: float
    sigma: float

    def derivative(self, y, k: int = 0):
        """k-th derivative of ``theta``."""
        bt, gm, ell = self.beta, self.gamma, self.ell
        hyp = _sinh_ratio(bt, y, ell) if k % 2 == 0 else _cosh_ratio(bt, y, ell)
        trig = [np.sin, np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t)][k % 4](gm * np.asarray(y, dtype=float))
        return self.a_hat * bt**k * hyp + self.b * gm**k * trig

    def __call__(self, y):
        return self.derivative(y, 0)

    def bc_residuals(self) -> tuple[float, float]:
        """Relative free-edge residuals at ``y = ell``."""
        m2, s, ell = self.m**2, self.sigma, self.ell
        d = [float(self.derivative(ell, k)) for k in range(4)]
        r1 = d[2] - s * m2 * d[0]
        r2 = d[3] - (2 - s) * m2 * d[1]
        scale1 = abs(d[2]) + s * m2 * abs(d[0])
        scale2 = abs(d[3]) + (2 - s) * m2 * abs(d[1])
        return abs(r1) / scale1, abs(r2) / scale2

    def ode_residual(self, y) -> np.ndarray:
        """Relative residual of ``theta'''' - 2 m^2 theta'' + (m^4 - nu) theta``."""
        m2 = self.m**2
        d4, d2, d0 = (self.derivative(y, k) for k in (4, 2, 0))
        res = d4 - 2 * m2 * d2 + (m2 * m2 - self.nu) * d0
        scale = np.abs(d4) + 2 * m2 * np.abs(d2) + abs(m2 * m2 - self.nu) * np.abs(d0)
        return np.abs(res) / np.maximum(scale, 1e-300)

    def l2_norm_sq(self) -> float:
        """``||sin(mx) theta(y)||^2`` over the plate."""
        x, w = np.polynomial.legendre.leggauss(64)
        edges = np.linspace(-self.ell, self.ell, 17)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            y = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
            total += 0.5 * (hi - lo) * float(np.sum(w * self(y) ** 2))
        return math.pi / 2 * total


def bracket(m: int, cfg: PlateConfig = PRESET) -> tuple[float, float]:
    """``(m^4, (m^2 + pi^2/(4 ell^2))^2)``."""
    return float(m) ** 4, (m * m + math.pi**2 / (4 * cfg.ell**2)) ** 2


@functools.lru_cache(maxsize=512)
def torsional_eigenpair(m: int, cfg: PlateConfig = PRESET,
                        normalization: str = "UnitL2") -> TorsionalEigenpair:
    """Smallest eigenvalue in the torsional bracket and its odd profile.

    Raises:
        DomainError: ``m < 1``, bad normalization tag, or the admissibility
            condition fails.
        EigenvalueNotFoundError: No sign change inside the bracket.
    """
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    if normalization not in ("UnitL2", "Raw"):
        raise DomainError("normalization must be 'UnitL2' or 'Raw'")
    if not admissible(m, cfg):
        raise DomainError(f"mode {m} violates the admissibility condition")
    top = math.pi / (2 * cfg.ell)
    g = np.linspace(0.0, top, SCAN_POINTS + 1)[1:-1]
    vals = np.array([_det(t, m, cfg) for t in g])
    change = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    if len(change) == 0:
        raise EigenvalueNotFoundError(f"no eigenvalue of mode {m} in the bracket")
    i = change[0]
    gam = brentq(_det, g[i], g[i + 1], args=(m, cfg), xtol=1e-14 * top, rtol=4 * np.finfo(float).eps)
    nu = (m * m + gam * gam) ** 2
    beta = math.sqrt(2 * m * m + gam * gam)
    s, ell = cfg.sigma, cfg.ell
    a_hat = (gam * gam + s * m * m) * math.sin(gam * ell)
    b = beta * beta - s * m * m
    pair = TorsionalEigenpair(int(m), nu, beta, gam, a_hat, b, "Raw", ell, s)
    if float(pair(ell)) < 0:
        pair = dataclasses.replace(pair, a_hat=-a_hat, b=-b)
    if normalization == "UnitL2":
        k = 1.0 / math.sqrt(pair.l2_norm_sq())
        pair = dataclasses.replace(pair, a_hat=pair.a_hat * k, b=pair.b * k, normalization="UnitL2")
    return pair


def determinant(nu: float, m: int, cfg: PlateConfig = PRESET) -> float:
    """Boundary determinant (divided by ``cosh(beta ell)``) as a function of ``nu``."""
    root = math.sqrt(nu)
    if root <= m * m:
        raise DomainError("nu must exceed m^4")
    return _det(math.sqrt(root - m * m), m, cfg)
