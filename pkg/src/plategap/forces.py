"""Force descriptors.

A force is either separable, ``f(x, y) = g(x) p(y)`` with ``g`` described by
a g-spec and ``p`` by a y-profile, a pair of boundary deltas, a resonant
torsional eigenfunction, or an arbitrary pointwise field.

Every g-spec can integrate ``g(x) sin(kx)`` exactly over arbitrary intervals,
which is what the solvers need to project forces weakened on a
reinforcement.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .config import PRESET, PlateConfig
from .errors import DomainError

MAX_RESONANT_MODE = 2734


# ----------------------------------------------------------------------------
# g-specs


def _cos_integral(q, a, b):
    """``int_a^b cos(q x) dx`` for broadcast arrays, stable for small ``b - a``."""
    h = 0.5 * (b - a)
    return 2 * h * np.cos(q * (a + b) / 2) * np.sinc(q * h / math.pi)


def _sin_integral(k, a, b):
    """``int_a^b sin(k x) dx``."""
    h = 0.5 * (b - a)
    return 2 * h * np.sin(k * (a + b) / 2) * np.sinc(k * h / math.pi)


class GSpec:
    """Base class of x-profiles ``g``."""

    def __call__(self, x):
        raise NotImplementedError

    def interval_integrals(self, ks, a, b) -> np.ndarray:
        """``int_a^b g(x) sin(k x) dx`` as a ``(len(ks), len(a))`` array."""
        raise NotImplementedError

    def c_g(self) -> float:
        """``int_0^pi |g|``."""
        raise NotImplementedError

    def sine_coefficients(self, ks, intervals=None) -> np.ndarray:
        """``(2/pi) int g sin(kx)`` over ``intervals`` (default ``[0, pi]``)."""
        ks = np.atleast_1d(np.asarray(ks, dtype=float))
        if intervals is None:
            intervals = np.array([[0.0, math.pi]])
        intervals = np.asarray(intervals, dtype=float).reshape(-1, 2)
        if len(intervals) == 0:
            return np.zeros(len(ks))
        vals = self.interval_integrals(ks, intervals[:, 0], intervals[:, 1])
        return (2 / math.pi) * vals.sum(axis=1)

    def scaled(self, lam: float) -> "GSpec":
        return _ScaledG(self, float(lam))


@dataclasses.dataclass(frozen=True)
class SineModes(GSpec):
    """Finite sine expansion ``g(x) = sum amp_n sin(n x)``.

    Attributes:
        modes: Tuple of ``(n, amp)`` pairs with integer ``n >= 1``.
    """

    modes: tuple = ((1, 1.0),)

    def __post_init__(self):
        if not self.modes:
            raise DomainError("empty mode list")
        for n, _ in self.modes:
            if int(n) != n or n < 1:
                raise DomainError(f"mode index must be a positive integer, got {n!r}")

    @classmethod
    def single(cls, n: int, amp: float = 1.0) -> "SineModes":
        return cls(((int(n), float(amp)),))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return sum(a * np.sin(n * x) for n, a in self.modes)

    def interval_integrals(self, ks, a, b):
        ks = np.asarray(ks, dtype=float)[:, None]
        a, b = np.asarray(a, dtype=float)[None, :], np.asarray(b, dtype=float)[None, :]
        out = np.zeros(np.broadcast(ks, a).shape)
        for n, amp in self.modes:
            out += 0.5 * amp * (_cos_integral(n - ks, a, b) - _cos_integral(n + ks, a, b))
        return out

    def primitive(self, x):
        return sum(-a * np.cos(n * x) / n for n, a in self.modes)

    def c_g(self) -> float:
        if len(self.modes) == 1:
            return 2.0 * abs(self.modes[0][1])
        nmax = max(n for n, _ in self.modes)
        grid = np.linspace(0.0, math.pi, 256 * nmax + 1)
        vals = self(grid)
        roots = [0.0]
        for i in np.flatnonzero(vals[:-1] * vals[1:] < 0):
            roots.append(brentq(self, grid[i], grid[i + 1], xtol=1e-15))
        roots += [float(grid[i]) for i in np.flatnonzero(vals == 0) if 0 < i < len(grid) - 1]
        roots = sorted(set(roots + [math.pi]))
        P = self.primitive(np.asarray(roots))
        return float(math.fsum(np.abs(np.diff(P))))


@dataclasses.dataclass(frozen=True)
class SampledG(GSpec):
    """Piecewise-linear ``g`` through samples ``(x_i, v_i)`` covering ``[0, pi]``."""

    x: tuple = ()
    values: tuple = ()

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if len(x) < 2 or len(x) != len(self.values) or np.any(np.diff(x) <= 0):
            raise DomainError("samples need increasing abscissae and matching values")
        if x[0] > 0 or x[-1] < math.pi:
            raise DomainError("samples must cover [0, pi]")

    def __call__(self, x):
        return np.interp(x, self.x, self.values)

    def _segments(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        slope = np.diff(v) / np.diff(x)
        return x[:-1], x[1:], v[:-1] - slope * x[:-1], slope

    def interval_integrals(self, ks, a, b):
        ks = np.asarray(ks, dtype=float)[:, None]
        x0, x1, p, s = self._segments()
        out = np.zeros((ks.shape[0], len(np.atleast_1d(a))))
        for j, (aj, bj) in enumerate(zip(np.atleast_1d(a), np.atleast_1d(b))):
            lo, hi = np.maximum(x0, aj), np.minimum(x1, bj)
            use = hi > lo
            if not use.any():
                continue
            lo, hi, pj, sj = lo[use][None, :], hi[use][None, :], p[use][None, :], s[use][None, :]
            # int (p + s x) sin(kx) = -p cos/k + s (sin/k^2 - x cos/k)
            def prim(t):
                return -pj * np.cos(ks * t) / ks + sj * (np.sin(ks * t) / ks**2 - t * np.cos(ks * t) / ks)
            out[:, j] = (prim(hi) - prim(lo)).sum(axis=1)
        return out

    def c_g(self) -> float:
        x0, x1, p, s = self._segments()
        total = []
        for lo, hi, pj, sj in zip(x0, x1, p, s):
            lo, hi = max(lo, 0.0), min(hi, math.pi)
            if hi <= lo:
                continue
            pts = [lo, hi]
            if sj != 0:
                r = -pj / sj
                if lo < r < hi:
                    pts = [lo, r, hi]
            for u, w in zip(pts, pts[1:]):
                total.append(abs(pj * (w - u) + 0.5 * sj * (w * w - u * u)))
        return math.fsum(total)


@dataclasses.dataclass(frozen=True)
class IndicatorG(GSpec):
    """Indicator of ``[z - eta, z + eta]``."""

    z: float = math.pi / 2
    eta: float = 0.1

    def __post_init__(self):
        if not 0 < self.eta < min(self.z, math.pi - self.z):
            raise DomainError("need 0 < eta < min(z, pi - z)")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return ((x > self.z - self.eta) & (x < self.z + self.eta)).astype(float)

    def interval_integrals(self, ks, a, b):
        ks = np.asarray(ks, dtype=float)[:, None]
        lo = np.maximum(np.asarray(a, dtype=float), self.z - self.eta)[None, :]
        hi = np.minimum(np.asarray(b, dtype=float), self.z + self.eta)[None, :]
        hi = np.maximum(hi, lo)
        return _sin_integral(ks, lo, hi)

    def c_g(self) -> float:
        return 2 * self.eta


@dataclasses.dataclass(frozen=True)
class _ScaledG(GSpec):
    base: GSpec
    lam: float

    def __call__(self, x):
        return self.lam * self.base(x)

    def interval_integrals(self, ks, a, b):
        return self.lam * self.base.interval_integrals(ks, a, b)

    def c_g(self) -> float:
        return abs(self.lam) * self.base.c_g()


# ----------------------------------------------------------------------------
# y-profiles


def _check_alpha(alpha: float) -> None:
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError("alpha must be positive")
    if alpha == round(alpha):
        raise DomainError("alpha must not be an integer")


@dataclasses.dataclass(frozen=True)
class SinhAlpha:
    """Odd profile ``R_alpha sinh(alpha y)``, ``R_alpha = alpha / (2 C_g (cosh(alpha ell) - 1))``."""

    alpha: float

    def __post_init__(self):
        _check_alpha(self.alpha)

    def __call__(self, y, c_g: float, cfg: PlateConfig = PRESET):
        a, ell = self.alpha, cfg.ell
        y = np.asarray(y, dtype=float)
        num = np.exp(a * (y - ell)) - np.exp(-a * (y + ell))
        return a / (2 * c_g) * num / (-np.expm1(-a * ell)) ** 2


@dataclasses.dataclass(frozen=True)
class CoshAlpha:
    """Even companion ``R_alpha cosh(alpha y)`` of :class:`SinhAlpha`."""

    alpha: float

    def __post_init__(self):
        _check_alpha(self.alpha)

    def __call__(self, y, c_g: float, cfg: PlateConfig = PRESET):
        a, ell = self.alpha, cfg.ell
        y = np.asarray(y, dtype=float)
        num = np.exp(a * (y - ell)) + np.exp(-a * (y + ell))
        return a / (2 * c_g) * num / (-np.expm1(-a * ell)) ** 2


@dataclasses.dataclass(frozen=True)
class ExpAlpha:
    """Profile ``K_alpha e^{alpha y}``, ``K_alpha = alpha / (2 C_g sinh(alpha ell))``."""

    alpha: float

    def __post_init__(self):
        _check_alpha(self.alpha)

    def __call__(self, y, c_g: float, cfg: PlateConfig = PRESET):
        a, ell = self.alpha, cfg.ell
        y = np.asarray(y, dtype=float)
        return a / (c_g * -np.expm1(-2 * a * ell)) * np.exp(a * (y - ell))


@dataclasses.dataclass(frozen=True)
class BoundaryLimit:
    """Trace limit ``alpha -> inf`` of the sinh (odd) or exp (top-only) profile.

    The sinh limit puts line loads ``+-g/(2 C_g)`` on ``y = +-ell``; the exp
    limit puts ``g / C_g`` on ``y = ell`` only. Both have the same odd part.
    """

    kind: str = "sinh"

    def __post_init__(self):
        if self.kind not in ("sinh", "exp"):
            raise DomainError("kind must be 'sinh' or 'exp'")

    def edge_weights(self) -> tuple[float, float]:
        """Multipliers of ``g / C_g`` on the top and bottom edges."""
        return (0.5, -0.5) if self.kind == "sinh" else (1.0, 0.0)


# ----------------------------------------------------------------------------
# Forces


class Force:
    """Base class of force descriptors."""

    label: str = ""

    def evaluate(self, x, y, cfg: PlateConfig = PRESET):
        """Pointwise density ``f(x, y)``."""
        raise DomainError(f"{type(self).__name__} has no pointwise density")


@dataclasses.dataclass(frozen=True)
class SeparableSine(Force):
    """``f(x, y) = scale * g(x) p(y)`` or its boundary-trace limit.

    The profiles are normalized by ``C_g``, so rescaling ``g`` alone leaves
    the force unchanged; ``scale`` multiplies the force itself.
    """

    g: GSpec = SineModes()
    profile: object = BoundaryLimit()
    label: str = ""
    scale: float = 1.0

    def evaluate(self, x, y, cfg=PRESET):
        if isinstance(self.profile, BoundaryLimit):
            return super().evaluate(x, y, cfg)
        return self.scale * self.g(x) * self.profile(y, self.g.c_g(), cfg)


def sine_force(n: int, profile=None, label: str | None = None) -> SeparableSine:
    """Force with ``g = sin(n x)``; the boundary-trace limit by default."""
    return SeparableSine(SineModes.single(n), profile or BoundaryLimit(),
                         f"f{n}" if label is None else label)


@dataclasses.dataclass(frozen=True)
class DeltaPair(Force):
    """Opposite unit deltas at ``(z, ell)`` and ``(z, -ell)``, each of mass 1/2.

    With ``normalized`` the pair is rescaled to unit dual norm.
    """

    z: float = math.pi / 2
    normalized: bool = False
    label: str = ""

    def __post_init__(self):
        if not 0 < self.z < math.pi:
            raise DomainError("z must lie in (0, pi)")


@dataclasses.dataclass(frozen=True)
class SmearedDelta(Force):
    """``R_alpha sinh(alpha y)`` times the indicator of ``[z-eta, z+eta]``."""

    z: float = math.pi / 2
    eta: float = 0.1
    alpha: float = 100.5
    label: str = ""

    def __post_init__(self):
        IndicatorG(self.z, self.eta)
        _check_alpha(self.alpha)

    def as_separable(self) -> SeparableSine:
        return SeparableSine(IndicatorG(self.z, self.eta), SinhAlpha(self.alpha), self.label)

    def evaluate(self, x, y, cfg=PRESET):
        return self.as_separable().evaluate(x, y, cfg)


@dataclasses.dataclass(frozen=True)
class ResonantEigen(Force):
    """First torsional eigenfunction of x-mode ``m`` used as a force."""

    m: int = 1
    normalization: str = "UnitL2"
    label: str = ""

    def __post_init__(self):
        if int(self.m) != self.m or not 1 <= self.m <= MAX_RESONANT_MODE:
            raise DomainError(f"m must be an integer in [1, {MAX_RESONANT_MODE}]")
        if self.normalization not in ("UnitL2", "Raw"):
            raise DomainError("normalization must be 'UnitL2' or 'Raw'")

    def eigenpair(self, cfg: PlateConfig = PRESET):
        from .modal.eigen import torsional_eigenpair

        return torsional_eigenpair(self.m, cfg, self.normalization)

    def evaluate(self, x, y, cfg=PRESET):
        return np.sin(self.m * np.asarray(x, dtype=float)) * self.eigenpair(cfg)(y)


@dataclasses.dataclass(frozen=True)
class Field(Force):
    """Arbitrary vectorized density ``fn(x, y)``."""

    fn: Callable = None
    label: str = "field"
    x_breaks: tuple = ()
    y_breaks: tuple = ()

    def evaluate(self, x, y, cfg=PRESET):
        return self.fn(np.asarray(x, dtype=float), np.asarray(y, dtype=float))


def scale_force(f: Force, lam: float) -> Force:
    """Returns ``lam * f`` for the force kinds that support scaling."""
    if isinstance(f, SeparableSine):
        return dataclasses.replace(f, scale=f.scale * lam)
    if isinstance(f, Field):
        fn = f.fn
        return dataclasses.replace(f, fn=lambda x, y: lam * fn(x, y))
    if isinstance(f, SmearedDelta):
        return scale_force(f.as_separable(), lam)
    raise DomainError(f"cannot scale {type(f).__name__}")
