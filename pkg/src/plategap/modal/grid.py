"""Symmetric Gauss-Legendre panel grids in y."""

from __future__ import annotations

import dataclasses

import numpy as np

from ..config import PRESET, PlateConfig


@dataclasses.dataclass(frozen=True)
class YGrid:
    """Composite Gauss-Legendre rule on ``[-ell, ell]``.

    Attributes:
        edges: Panel boundaries, symmetric about 0.
        nodes: Quadrature nodes, increasing and exactly symmetric.
        weights: Quadrature weights.
        order: Nodes per panel.
    """

    edges: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    @property
    def size(self) -> int:
        return len(self.nodes)

    def refined(self) -> "YGrid":
        """Grid with every panel split in two."""
        e = self.edges
        mid = 0.5 * (e[:-1] + e[1:])
        return _from_edges(np.sort(np.concatenate([e, mid])), self.order)


def _from_edges(edges: np.ndarray, order: int) -> YGrid:
    half = edges[edges > 0]
    x, w = np.polynomial.legendre.leggauss(order)
    lo = np.concatenate([[0.0], half[:-1]])
    hi = half
    pos = (0.5 * (hi - lo)[:, None] * x[None, :] + 0.5 * (hi + lo)[:, None]).ravel()
    pw = (0.5 * (hi - lo)[:, None] * w[None, :]).ravel()
    nodes = np.concatenate([-pos[::-1], pos])
    weights = np.concatenate([pw[::-1], pw])
    full = np.concatenate([-half[::-1], [0.0], half])
    return YGrid(full, nodes, weights, order)


def make_y_grid(cfg: PlateConfig = PRESET, panels: int = 64, order: int = 8,
                breaks=()) -> YGrid:
    """Symmetric panel grid with extra breakpoints.

    Panels come from ``panels`` uniform cells (rounded up to an even count so
    that 0 is a breakpoint); each ``|b|`` in ``breaks`` and its mirror are
    added as well, and near-duplicates closer than ``1e-9 ell`` are merged.
    """
    ell = cfg.ell
    panels += panels % 2
    base = np.linspace(0.0, ell, panels // 2 + 1)[1:]
    extra = np.abs(np.asarray(list(breaks), dtype=float))
    extra = extra[(extra > 1e-9 * ell) & (extra < ell * (1 - 1e-9))]
    pts = np.unique(np.concatenate([base, extra]))
    keep = [pts[0]]
    for p in pts[1:]:
        if p - keep[-1] > 1e-9 * ell:
            keep.append(p)
        elif p in extra:
            keep[-1] = p
    keep[-1] = ell
    half = np.array(keep)
    return _from_edges(np.concatenate([-half[::-1], [0.0], half]), order)
