"""Modal projection of weakened forces.

For the weakening model the mode-``k`` right-hand side is::

    h_k(y) = (2/pi) int_0^pi f(x, y) / (1 + d chi_D(x, y)) sin(k x) dx,

and boundary line loads project the same way against the trace of D on the
edge. Cross-sections of D are exact polygon slices, so the x-integrals split
exactly at the edges of D.
"""

from __future__ import annotations

import math

import numpy as np

from ..config import PRESET, PlateConfig
from ..errors import DomainError
from ..forces import (BoundaryLimit, DeltaPair, Field, Force, GSpec, ResonantEigen,
                      SeparableSine, SineModes, SmearedDelta)
from ..geometry import Reinforcement, Region, resolve
from ..series import DELTA_TERMS, delta_gap
from .grid import YGrid

GAUSS_ORDER = 8


def _nodes(y) -> np.ndarray:
    return y.nodes if isinstance(y, YGrid) else np.atleast_1d(np.asarray(y, dtype=float))


def weighted_sine_coefficients(g: GSpec, region: Region, ks, y, d: float) -> np.ndarray:
    """``(2/pi) int g(x) sin(kx) / (1 + d chi_D(x, y)) dx`` for every ``(k, y)``.

    Returns:
        Array of shape ``(len(ks), len(y))``.
    """
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    base = g.sine_coefficients(ks)
    out = np.repeat(base[:, None], len(y), axis=1)
    if region.is_empty or d == 0:
        return out
    damp = d / (1 + d)
    cache = {}
    for j, yj in enumerate(y):
        iv = region.intervals(yj)
        if len(iv) == 0:
            continue
        key = iv.tobytes()
        if key not in cache:
            cache[key] = g.sine_coefficients(ks, iv)
        out[:, j] -= damp * cache[key]
    return out


def _trace_coefficients(g: GSpec, region: Region, ks, d: float, side: int) -> np.ndarray:
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    base = g.sine_coefficients(ks)
    if region.is_empty or d == 0:
        return base
    iv = region.trace_intervals(side)
    if len(iv) == 0:
        return base
    return base - d / (1 + d) * g.sine_coefficients(ks, iv)


def _field_coefficients(f: Force, region: Region, ks, y, d: float, cfg) -> np.ndarray:
    """Composite Gauss projection for arbitrary pointwise densities."""
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    xg, wg = np.polynomial.legendre.leggauss(GAUSS_ORDER)
    hmax = min(2.0 / ks.max(), math.pi / 16)
    extra = list(getattr(f, "x_breaks", ()))
    out = np.empty((len(ks), len(y)))
    for j, yj in enumerate(y):
        iv = region.intervals(yj) if not region.is_empty else np.zeros((0, 2))
        br = np.unique(np.clip(np.concatenate([[0.0, math.pi], iv.ravel(), extra]), 0, math.pi))
        xs, ws = [], []
        for lo, hi in zip(br[:-1], br[1:]):
            if hi <= lo:
                continue
            n = max(1, math.ceil((hi - lo) / hmax))
            e = np.linspace(lo, hi, n + 1)
            a, b = e[:-1, None], e[1:, None]
            xs.append((0.5 * (b - a) * xg + 0.5 * (b + a)).ravel())
            ws.append((0.5 * (b - a) * wg).ravel())
        x, w = np.concatenate(xs), np.concatenate(ws)
        vals = f.evaluate(x, np.full_like(x, yj), cfg)
        if not region.is_empty and d > 0:
            vals = np.where(region.contains(x, np.full_like(x, yj)), vals / (1 + d), vals)
        out[:, j] = (2 / math.pi) * (np.sin(np.outer(ks, x)) @ (w * vals))
    return out


def modal_rhs(f: Force, D: Reinforcement, m, y, cfg: PlateConfig = PRESET) -> np.ndarray:
    """Interior right-hand side ``h_m(y)`` of the weakened problem.

    Args:
        f: Force with a pointwise density.
        D: Reinforcement.
        m: Mode index or array of indices.
        y: A :class:`YGrid` or an array of ordinates.
        cfg: Plate configuration.

    Returns:
        ``h_m`` at the nodes; shape ``(len(y),)`` for scalar ``m``, otherwise
        ``(len(m), len(y))``. Boundary-trace forces have a zero interior part.

    Raises:
        DomainError: ``f`` is a delta pair, which has no density.
    """
    ks = np.atleast_1d(np.asarray(m, dtype=float))
    yy = _nodes(y)
    region = resolve(D, cfg)
    if isinstance(f, DeltaPair):
        raise DomainError("delta pairs have no density; use boundary_loads")
    if isinstance(f, SmearedDelta):
        f = f.as_separable()
    if isinstance(f, SeparableSine):
        if isinstance(f.profile, BoundaryLimit):
            out = np.zeros((len(ks), len(yy)))
        else:
            p = f.scale * f.profile(yy, f.g.c_g(), cfg)
            out = weighted_sine_coefficients(f.g, region, ks, yy, cfg.d) * p[None, :]
    elif isinstance(f, ResonantEigen):
        theta = f.eigenpair(cfg)(yy)
        out = weighted_sine_coefficients(SineModes.single(f.m), region, ks, yy, cfg.d) * theta[None, :]
    elif isinstance(f, Field):
        out = _field_coefficients(f, region, ks, yy, cfg.d, cfg)
    else:
        raise DomainError(f"unsupported force {type(f).__name__}")
    return out[0] if np.ndim(m) == 0 else out


def boundary_loads(f: Force, D: Reinforcement, m, cfg: PlateConfig = PRESET,
                   norm_terms: int = DELTA_TERMS) -> tuple[np.ndarray, np.ndarray]:
    """Sine coefficients of the line loads on ``y = ell`` and ``y = -ell``.

    Returns:
        ``(top, bottom)`` arrays over the modes ``m``.
    """
    ks = np.atleast_1d(np.asarray(m, dtype=float))
    zero = np.zeros(len(ks))
    region = resolve(D, cfg)
    if isinstance(f, SeparableSine) and isinstance(f.profile, BoundaryLimit):
        wt, wb = f.profile.edge_weights()
        scale = f.scale / f.g.c_g()
        top = wt * scale * _trace_coefficients(f.g, region, ks, cfg.d, 1) if wt else zero
        bot = wb * scale * _trace_coefficients(f.g, region, ks, cfg.d, -1) if wb else zero
        return top, bot
    if isinstance(f, DeltaPair):
        base = (1 / math.pi) * np.sin(ks * f.z)
        wt = _trace_weight(region, f.z, 1, cfg.d)
        wb = _trace_weight(region, f.z, -1, cfg.d)
        k = 1.0
        if f.normalized:
            k = math.sqrt(2.0) / math.sqrt(delta_gap(f.z, norm_terms, cfg)(f.z))
        return k * wt * base, -k * wb * base
    return zero, zero


def _trace_weight(region: Region, z: float, side: int, d: float) -> float:
    if region.is_empty:
        return 1.0
    iv = region.trace_intervals(side)
    inside = np.any((iv[:, 0] < z) & (z < iv[:, 1])) if len(iv) else False
    return 1 / (1 + d) if inside else 1.0
