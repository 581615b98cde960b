"""Per-mode boundary value problems for the weakening model.

Mode ``m`` of ``Delta^2 u = f / (1 + d chi_D)`` reads::

    Y'''' - 2 m^2 Y'' + m^4 Y = h_m(y),      |y| < ell,
    Y'' - sigma m^2 Y = 0,  Y''' - (2 - sigma) m^2 Y' = 0,   y = +-ell.

A particular solution is the convolution with the decaying whole-line kernel
``G(s) = e^{-m|s|} (1 + m|s|) / (4 m^3)`` evaluated by Gauss quadrature.
Line loads on the edges enter as kernel translates sitting just inside the
plate. The odd and even parts are then corrected with
``{sinh, y cosh}`` and ``{cosh, y sinh}`` respectively, each through a 2x2
system at ``y = ell``. Homogeneous functions are stored divided by
``cosh(m ell)`` so nothing overflows.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time

import numpy as np

from ..config import PRESET, PlateConfig
from ..errors import NumericError
from ..forces import DeltaPair, Force
from ..geometry import Reinforcement, resolve
from ..series import CROSS_TERMS, GapSeries, max_gap
from .grid import YGrid, make_y_grid
from .rhs import boundary_loads, modal_rhs


def kernel(s, m, k: int = 0):
    """k-th derivative (0..3) of ``G`` at ``s``; one-sided ``s -> 0+`` at zero."""
    s = np.asarray(s, dtype=float)
    m = np.asarray(m, dtype=float)
    a = np.abs(s)
    e = np.exp(-m * a)
    if k == 0:
        v = e * (1 + m * a) / (4 * m**3)
    elif k == 1:
        v = -a * e / (4 * m)
    elif k == 2:
        v = (m * a - 1) * e / (4 * m)
    elif k == 3:
        v = (2 - m * a) * e / 4
    else:
        raise ValueError("k must be 0..3")
    return np.where(s < 0, (-1) ** k * v, v)


def _basis_at_ell(m, ell):
    """Derivatives 0..3 at ``ell`` of sinh, y cosh, cosh, y sinh over cosh(m ell)."""
    t = np.tanh(m * ell)
    S = np.array([t, m, m**2 * t, m**3])
    Yc = np.array([ell + 0 * m, 1 + m * ell * t, 2 * m * t + m**2 * ell, 3 * m**2 + m**3 * ell * t])
    Cc = np.array([1 + 0 * m, m * t, m**2, m**3 * t])
    Ys = np.array([ell * t, t + m * ell, 2 * m + m**2 * ell * t, 3 * m**2 * t + m**3 * ell])
    return S, Yc, Cc, Ys


def _bc(v, m, s):
    return v[2] - s * m**2 * v[0], v[3] - (2 - s) * m**2 * v[1]


def _solve2(a11, a12, a21, a22, r1, r2):
    det = a11 * a22 - a12 * a21
    scale = np.abs(a11 * a22) + np.abs(a12 * a21)
    if np.any(np.abs(det) <= 1e-14 * scale):
        raise NumericError("singular boundary system")
    return (r1 * a22 - a12 * r2) / det, (a11 * r2 - a21 * r1) / det


@dataclasses.dataclass(frozen=True)
class ModeSet:
    """Solutions of many modes on one grid.

    Attributes:
        ks: Mode indices.
        H: Right-hand sides on the grid nodes, shape ``(K, n)``.
        top: Line-load coefficients on ``y = ell``.
        bottom: Line-load coefficients on ``y = -ell``.
        grid: The y-grid.
        scaled: Columns ``(a, b, c, d)`` multiplying ``cosh, sinh, y cosh, y sinh``
            divided by ``cosh(m ell)``.
        gap: ``Y(ell) - Y(-ell)`` per mode.
        bc_residual: Largest relative free-edge residual per mode.
        ell: Half-width.
    """

    ks: np.ndarray
    H: np.ndarray
    top: np.ndarray
    bottom: np.ndarray
    grid: YGrid
    scaled: np.ndarray
    gap: np.ndarray
    bc_residual: np.ndarray
    bc_residual_abs: np.ndarray
    ell: float

    @property
    def coefficients(self) -> np.ndarray:
        """Unscaled ``(A, B, C, D)`` for ``cosh, sinh, y cosh, y sinh``; may overflow to 0."""
        with np.errstate(over="ignore"):
            return self.scaled / np.cosh(self.ks * self.ell)[:, None]

    def values(self, y, k: int = 0) -> np.ndarray:
        """k-th derivative (0..3) of every ``Y_m`` at ordinates ``y``; shape ``(K, len(y))``."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        m = self.ks[:, None]
        t, w = self.grid.nodes, self.grid.weights
        out = np.empty((len(self.ks), len(y)))
        for j, yj in enumerate(y):
            G = kernel(yj - t[None, :], m, k)
            part = (G * self.H) @ w if self.H.size else 0.0
            # edge loads sit just inside, so the kernel jumps are taken from inside
            if np.any(self.top):
                part = part + self.top * kernel(yj - self.ell, m[:, 0], k)
            if np.any(self.bottom):
                part = part + (-1) ** k * self.bottom * kernel(-(yj + self.ell), m[:, 0], k)
            out[:, j] = part + _hom(self.scaled, self.ks, yj, self.ell, k)
        return out


def _hom(scaled, m, y, ell, k):
    """k-th derivative of the scaled homogeneous part at ``y``."""
    ep = np.exp(m * (y - ell))
    em = np.exp(-m * (y + ell))
    den = 1 + np.exp(-2 * m * ell)
    ch = (ep + em) / den          # cosh(my)/cosh(m ell)
    sh = (ep - em) / den
    a, b, c, d = scaled.T
    even = k % 2 == 0
    c0, s0 = (ch, sh) if even else (sh, ch)
    c1, s1 = (sh, ch) if even else (ch, sh)
    mk = m**k
    mk1 = k * m ** (k - 1) if k else 0.0 * m
    return a * mk * c0 + b * mk * s0 + c * (mk * y * c0 + mk1 * c1) + d * (mk * y * s0 + mk1 * s1)


def solve_modes(ks, H, top, bottom, grid: YGrid, cfg: PlateConfig = PRESET) -> ModeSet:
    """Vectorized mode solver.

    Args:
        ks: Mode indices ``(K,)``.
        H: Right-hand sides on ``grid.nodes``, shape ``(K, n)``.
        top: Line-load coefficients on the upper edge ``(K,)``.
        bottom: Line-load coefficients on the lower edge ``(K,)``.
        grid: y-grid.
        cfg: Plate configuration.
    """
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    K = len(ks)
    H = np.asarray(H, dtype=float).reshape(K, grid.size)
    top = np.broadcast_to(np.asarray(top, dtype=float), (K,)).copy()
    bottom = np.broadcast_to(np.asarray(bottom, dtype=float), (K,)).copy()
    ell, s = cfg.ell, cfg.sigma
    m = ks[:, None]
    t, w = grid.nodes[None, :], grid.weights
    Ppl, Pmi = [], []
    for j in range(4):
        gp = kernel(ell - t, m, j)
        gm = kernel(-ell - t, m, j)
        g0 = kernel(0.0, ks, j)
        g2 = kernel(2 * ell, ks, j)
        Ppl.append((gp * H) @ w + top * g0 + bottom * g2)
        Pmi.append((gm * H) @ w + (-1) ** j * (top * g2 + bottom * g0))
    Ppl, Pmi = np.array(Ppl), np.array(Pmi)
    sgn = np.array([1, -1, 1, -1])[:, None]
    Po = 0.5 * (Ppl - sgn * Pmi)
    Pe = 0.5 * (Ppl + sgn * Pmi)
    S, Yc, Cc, Ys = _basis_at_ell(ks, ell)
    s1, s2 = _bc(S, ks, s)
    y1, y2 = _bc(Yc, ks, s)
    r1, r2 = _bc(Po, ks, s)
    b, c = _solve2(s1, y1, s2, y2, -r1, -r2)
    c1, c2 = _bc(Cc, ks, s)
    q1, q2 = _bc(Ys, ks, s)
    e1, e2 = _bc(Pe, ks, s)
    a, d = _solve2(c1, q1, c2, q2, -e1, -e2)
    scaled = np.column_stack([a, b, c, d])
    gap = 2 * (Po[0] + b * S[0] + c * Yc[0])
    # residuals at both edges from the assembled derivatives
    hom_p = a * Cc + d * Ys + b * S + c * Yc
    hom_m = sgn * (a * Cc + d * Ys) - sgn * (b * S + c * Yc)
    res, res_abs = np.zeros(K), np.zeros(K)
    for P, hom in ((Ppl, hom_p), (Pmi, hom_m)):
        full = P + hom
        for i, (u, v) in enumerate(((2, 0), (3, 1))):
            coef = s * ks**2 if i == 0 else (2 - s) * ks**2
            r = full[u] - coef * full[v]
            mag = np.abs(P[u]) + np.abs(hom[u]) + coef * (np.abs(P[v]) + np.abs(hom[v]))
            res = np.maximum(res, np.abs(r) / np.maximum(mag, 1e-300))
            res_abs = np.maximum(res_abs, np.abs(r))
    return ModeSet(ks, H, top, bottom, grid, scaled, gap, res, res_abs, ell)


@dataclasses.dataclass(frozen=True)
class ModeProfile:
    """Solution of one mode.

    Attributes:
        m: Mode index.
        coefficients: ``(A, B, C, D)`` of ``cosh, sinh, y cosh, y sinh``.
        particular: Particular solution sampled on ``y``.
        y: Grid nodes.
        h: Right-hand side samples.
        gap: ``Y(ell) - Y(-ell)``.
        bc_residual: Largest relative free-edge residual.
        bc_residual_abs: Largest absolute free-edge residual.
    """

    m: int
    coefficients: tuple
    particular: np.ndarray
    y: np.ndarray
    h: np.ndarray
    gap: float
    bc_residual: float
    bc_residual_abs: float
    _set: ModeSet = dataclasses.field(repr=False, compare=False)

    def __call__(self, y, k: int = 0):
        out = self._set.values(y, k)[0]
        return float(out[0]) if np.ndim(y) == 0 else out


def mode_solve(m: int, h, cfg: PlateConfig = PRESET, grid: YGrid | None = None,
               top: float = 0.0, bottom: float = 0.0) -> ModeProfile:
    """Solves one mode with interior load ``h`` and optional edge line loads.

    Args:
        m: Mode index.
        h: Callable of ``y`` or samples on ``grid.nodes``.
        cfg: Plate configuration.
        grid: y-grid; the default 64 x 8 grid when None.
        top: Line load on ``y = ell``.
        bottom: Line load on ``y = -ell``.
    """
    grid = grid or make_y_grid(cfg)
    hv = np.asarray(h(grid.nodes) if callable(h) else h, dtype=float)
    ms = solve_modes([m], hv[None, :], [top], [bottom], grid, cfg)
    part_set = dataclasses.replace(ms, scaled=np.zeros_like(ms.scaled))
    particular = part_set.values(grid.nodes)[0]
    return ModeProfile(int(m), tuple(float(v) for v in ms.coefficients[0]), particular,
                       grid.nodes, hv, float(ms.gap[0]), float(ms.bc_residual[0]),
                       float(ms.bc_residual_abs[0]), ms)


@dataclasses.dataclass(frozen=True)
class SolveReport:
    """Summary of a solve.

    Attributes:
        solver: Solver name.
        modes: Number of x-modes.
        max_gap: Maximal gap.
        argmax: Abscissa of the maximal gap.
        gap: Gap series.
        bc_residual: Largest relative boundary residual over modes.
        truncation_estimate: Heuristic sup-norm truncation error.
        wall_time: Seconds spent.
        grid_size: Number of y-nodes (or basis size for Galerkin).
        extras: Solver-specific diagnostics.
    """

    solver: str
    modes: int
    max_gap: float
    argmax: float
    gap: GapSeries
    bc_residual: float
    truncation_estimate: float
    wall_time: float
    grid_size: int
    extras: dict = dataclasses.field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        """Plain record; ``timing=False`` drops the wall time for reproducible output."""
        d = {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name != "gap"}
        d["wall_time"] = float(d["wall_time"])
        if not timing:
            del d["wall_time"]
        d["coefficients"] = [float(c) for c in self.gap.coefficients]
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


class Solution:
    """Sampler ``u(x, y) = sum_k Y_k(y) sin(k x)``."""

    def __init__(self, modes: ModeSet):
        self.modes = modes

    def __call__(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        uy, inv = np.unique(y.ravel(), return_inverse=True)
        Y = self.modes.values(uy)
        S = np.sin(np.outer(self.modes.ks, x.ravel()))
        vals = np.einsum("kj,kj->j", Y[:, inv], S)
        return vals.reshape(x.shape)

    def export_csv(self, nx: int = 101, ny: int = 21) -> str:
        """CSV text with columns ``x, y, u`` on a uniform grid."""
        xs = np.linspace(0, math.pi, nx)
        ys = np.linspace(-self.modes.ell, self.modes.ell, ny)
        X, Yg = np.meshgrid(xs, ys, indexing="ij")
        U = self(X, Yg)
        lines = ["x,y,u"]
        lines += [f"{a!r},{b!r},{c!r}" for a, b, c in zip(X.ravel().tolist(), Yg.ravel().tolist(), U.ravel().tolist())]
        return "\n".join(lines) + "\n"


def force_breaks(f: Force) -> tuple:
    return tuple(getattr(f, "y_breaks", ()))


def solve_weakened(f: Force, D: Reinforcement, cfg: PlateConfig = PRESET, M: int = CROSS_TERMS,
                   grid: YGrid | None = None, panels: int = 64, order: int = 8):
    """Solves the weakening model mode by mode.

    Args:
        f: Force.
        D: Reinforcement.
        cfg: Plate configuration.
        M: Number of x-modes.
        grid: y-grid; by default ``panels x order`` Gauss panels with
            breakpoints at every vertex ordinate of D.

    Returns:
        ``(solution, gap_series, report)``.
    """
    t0 = time.perf_counter()
    region = resolve(D, cfg)
    if grid is None:
        grid = make_y_grid(cfg, panels, order, tuple(region.y_breaks) + force_breaks(f))
    ks = np.arange(1, M + 1, dtype=float)
    if isinstance(f, DeltaPair):
        H = np.zeros((M, grid.size))
    else:
        H = modal_rhs(f, D, ks, grid, cfg)
    top, bottom = boundary_loads(f, D, ks, cfg)
    modes = solve_modes(ks, H, top, bottom, grid, cfg)
    series = GapSeries(modes.gap, _truncation(modes.gap), f"weakened {D.label}")
    x_star, value = max_gap(series)
    report = SolveReport(
        solver="modal", modes=M, max_gap=value, argmax=x_star, gap=series,
        bc_residual=float(modes.bc_residual.max()), truncation_estimate=series.tail_bound,
        wall_time=time.perf_counter() - t0, grid_size=grid.size,
        extras={"bc_residual_abs": float(modes.bc_residual_abs.max())},
    )
    return Solution(modes), series, report


def _truncation(c: np.ndarray) -> float:
    """Tail heuristic for coefficients decaying like ``1/k^2``: ``|c_M| M``."""
    tail = np.abs(c[-max(1, len(c) // 10):]).max() if len(c) else 0.0
    return float(tail * len(c))
