"""Sine-series machinery for the free plate.

Holds the kernel ``Upsilon_m``, the function ``Phi``, gap series of boundary
delta loads and a generic :class:`GapSeries` with a deterministic, compensated
evaluator and a global maximizer.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math

import numpy as np
import scipy.fft
from scipy.optimize import brentq

from .config import PRESET, PlateConfig
from .errors import DomainError, NumericError

DELTA_TERMS = 10_000
CROSS_TERMS = 250


def _as_modes(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if np.any(m < 1):
        raise DomainError("mode index must be >= 1")
    return m


def _sech2(x):
    e = np.exp(-2.0 * np.abs(x))
    return 4.0 * e / (1.0 + e) ** 2


def upsilon(m, cfg: PlateConfig = PRESET):
    """Gap-series kernel ``Upsilon_m``, overflow-safe.

    Uses ``tanh(m*ell)^2 / (m^3 [(3+sigma) tanh + (1-sigma) m ell sech^2])``,
    which equals ``sinh^2 / (m^3 [(3+sigma) sinh cosh + (1-sigma) m ell])``.

    Args:
        m: Mode index or array of indices, each >= 1.
        cfg: Plate configuration.

    Raises:
        DomainError: Some ``m < 1``.
    """
    m = _as_modes(m)
    x = m * cfg.ell
    t = np.tanh(x)
    out = t * t / (m**3 * ((3 + cfg.sigma) * t + (1 - cfg.sigma) * x * _sech2(x)))
    return float(out) if out.ndim == 0 else out


def upsilon_naive(m, cfg: PlateConfig = PRESET):
    """Literal form of ``Upsilon_m``; overflows for large ``m*ell``."""
    m = _as_modes(m)
    x = m * cfg.ell
    out = np.sinh(x) ** 2 / (m**3 * ((3 + cfg.sigma) * np.sinh(x) * np.cosh(x) + (1 - cfg.sigma) * x))
    return float(out) if out.ndim == 0 else out


def upsilon_bar(m, cfg: PlateConfig = PRESET):
    """``Upsilon_m / (1 - sigma)``: gap of the unit boundary trace of ``sin(mx)``."""
    return upsilon(m, cfg) / (1 - cfg.sigma)


def tail_bound(M: int, cfg: PlateConfig = PRESET) -> float:
    """Upper bound ``ell/(4M)`` for ``sum_{m>M} Upsilon_m``."""
    return cfg.ell / (4 * M)


# ----------------------------------------------------------------------------
# Compensated evaluation


def sine_sum(coefficients, x, phase: float = 0.0) -> np.ndarray:
    """Evaluates ``sum_m c_m sin(m x + phase)`` with correctly rounded sums.

    Each abscissa is summed with :func:`math.fsum`, so the result is
    independent of term order and of how ``x`` is chunked.
    """
    c = np.asarray(coefficients, dtype=float)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    nz = np.flatnonzero(c)
    m, cn = (nz + 1).astype(float), c[nz]
    out = np.empty(x.shape)
    flat = x.ravel()
    res = out.ravel()
    chunk = max(1, 2_000_000 // max(len(nz), 1))
    for i in range(0, flat.size, chunk):
        terms = cn * np.sin(np.multiply.outer(flat[i:i + chunk], m) + phase)
        res[i:i + chunk] = [math.fsum(row) for row in terms]
    return res.reshape(x.shape)


def phi_eval(x, M: int, cfg: PlateConfig = PRESET):
    """Truncated ``Phi(x) = sum_{m<=M} Upsilon_m sin(m x)^2``."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    m = np.arange(1, M + 1, dtype=float)
    ups = upsilon(m, cfg)
    out = np.array([math.fsum(ups * np.sin(m * t) ** 2) for t in x_arr.ravel()])
    out = out.reshape(x_arr.shape)
    return float(out[0]) if np.ndim(x) == 0 else out


# ----------------------------------------------------------------------------
# Gap series


@dataclasses.dataclass(frozen=True)
class GapSeries:
    """Truncated sine series ``x -> sum_{m=1}^{M} c_m sin(m x)``.

    Attributes:
        coefficients: ``c_1 .. c_M`` as a float array.
        tail_bound: Estimated sup-norm truncation error, non-negative.
        label: Free-form description carried into reports.
    """

    coefficients: np.ndarray
    tail_bound: float = 0.0
    label: str = ""

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float).ravel()
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        if not (math.isfinite(self.tail_bound) and self.tail_bound >= 0):
            raise DomainError("tail_bound must be finite and non-negative")
        if not np.all(np.isfinite(c)):
            raise NumericError("non-finite gap coefficient")

    @property
    def terms(self) -> int:
        return len(self.coefficients)

    def __call__(self, x):
        out = sine_sum(self.coefficients, x)
        return float(out[0]) if np.ndim(x) == 0 else out

    def scaled(self, factor: float) -> "GapSeries":
        return GapSeries(self.coefficients * factor, self.tail_bound * abs(factor), self.label)

    def sample(self, n: int = 1001) -> tuple[np.ndarray, np.ndarray]:
        """Uniform samples ``(x, G(x))`` on ``[0, pi]`` for plotting."""
        x = np.linspace(0.0, math.pi, n)
        return x, sine_sum(self.coefficients, x)

    def on_grid(self, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Fast values on ``x_j = pi j/(n+1)``, ``j = 0..n+1``, endpoints included."""
        n = max(32 * self.terms, 1024) if n is None else n
        x, v = _grid_values(self.coefficients, n)
        return np.concatenate([[0.0], x, [math.pi]]), np.concatenate([[0.0], v, [0.0]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "c_m"])
        for m, c in enumerate(self.coefficients, 1):
            w.writerow([m, repr(float(c))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, tail_bound: float = 0.0, label: str = "") -> "GapSeries":
        rows = list(csv.reader(io.StringIO(text)))
        body = [r for r in rows[1:] if r]
        c = np.zeros(max((int(r[0]) for r in body), default=0))
        for r in body:
            c[int(r[0]) - 1] = float(r[1])
        return cls(c, tail_bound, label)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "terms": self.terms,
            "tail_bound": self.tail_bound,
            "coefficients": [float(c) for c in self.coefficients],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "GapSeries":
        return cls(np.asarray(d["coefficients"], dtype=float), float(d.get("tail_bound", 0.0)),
                   d.get("label", ""))

    def export_curve(self, n: int = 1001) -> str:
        """CSV text with columns ``x, gap``."""
        x, g = self.sample(n)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "gap"])
        for a, b in zip(x, g):
            w.writerow([repr(float(a)), repr(float(b))])
        return buf.getvalue()


def delta_gap(z: float, M: int = DELTA_TERMS, cfg: PlateConfig = PRESET) -> GapSeries:
    """Gap series of the boundary delta pair ``T_z``.

    Coefficients are ``4 Upsilon_m sin(m z) / (pi (1 - sigma))``.

    Raises:
        DomainError: ``z`` outside ``(0, pi)``.
    """
    if not 0 < z < math.pi:
        raise DomainError("z must lie in (0, pi)")
    m = np.arange(1, M + 1)
    pre = 4 / (math.pi * (1 - cfg.sigma))
    c = pre * upsilon(m, cfg) * np.sin(m * z)
    return GapSeries(c, pre * tail_bound(M, cfg), f"T_z z={z!r}")


def normalized_delta_gap(z: float, M: int = DELTA_TERMS, cfg: PlateConfig = PRESET) -> GapSeries:
    """Gap series of the unit-dual-norm load, ``sqrt(2) G_{T_z} / sqrt(G_{T_z}(z))``.

    Raises:
        DomainError: ``z`` outside ``(0, pi)``.
        NumericError: ``G_{T_z}(z) <= 0``, which signals a bad truncation.
    """
    g = delta_gap(z, M, cfg)
    gz = g(z)
    if not gz > 0:
        raise NumericError(f"G_Tz(z) = {gz} is not positive; increase the truncation")
    s = math.sqrt(2.0) / math.sqrt(gz)
    return GapSeries(g.coefficients * s, g.tail_bound * s, f"normalized T_z z={z!r}")


def _grid_values(c: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``G`` on ``x_j = pi j/(n+1)``, j = 1..n, via a type-I DST."""
    padded = np.zeros(n)
    padded[: len(c)] = c
    vals = scipy.fft.dst(padded, type=1) / 2
    x = math.pi * np.arange(1, n + 1) / (n + 1)
    return x, vals


def max_gap(series: GapSeries, xtol: float = 1e-12, candidates: int = 8) -> tuple[float, float]:
    """Global maximum of ``|G|`` on ``[0, pi]``.

    A type-I DST evaluates ``G`` on a uniform grid of at least ``32 M`` points.
    The best grid peaks are refined by Brent root finding on ``G'`` inside the
    two neighbouring grid cells, using the correctly rounded evaluator. Among
    maxima equal to within ``1e-12`` relative the smallest abscissa wins.

    Returns:
        ``(x_star, value)``; ``(0.0, 0.0)`` for an identically zero series.
    """
    c = series.coefficients
    if c.size == 0:
        raise DomainError("empty series")
    if not np.any(c):
        return 0.0, 0.0
    M = len(c)
    n = scipy.fft.next_fast_len(max(32 * M, 1024) + 1) - 1
    x, v = _grid_values(c, n)
    a = np.abs(v)
    ext = np.concatenate([[0.0], a, [0.0]])
    peak = np.flatnonzero((ext[1:-1] >= ext[:-2]) & (ext[1:-1] >= ext[2:]))
    order = peak[np.argsort(-a[peak], kind="stable")][:candidates]
    h = math.pi / (n + 1)
    dc = c * np.arange(1, M + 1)

    def slope(t):
        return sine_sum(dc, t, phase=math.pi / 2)[0]

    results = []
    for j in order:
        lo, hi = max(x[j] - h, 0.0), min(x[j] + h, math.pi)
        xs = float(x[j])
        s_lo, s_hi = slope(lo), slope(hi)
        if s_lo * s_hi < 0:
            xs = brentq(slope, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)
        elif s_lo == 0 or s_hi == 0:
            xs = lo if s_lo == 0 else hi
        val = abs(float(sine_sum(c, xs)[0]))
        if a[j] > val:
            xs, val = float(x[j]), float(a[j])
        results.append((xs, val))
    top = max(val for _, val in results)
    for xs, val in sorted(results):
        if val >= top * (1 - 1e-12):
            return xs, val
    raise NumericError("maximizer selection failed")
