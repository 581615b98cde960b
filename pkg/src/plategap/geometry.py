"""Reinforcement geometries, indicator, area and cross-sections.

A reinforcement is an immutable description of a region D inside the plate.
Concrete geometry depends on the plate half-width, so every geometric query
takes a :class:`PlateConfig`. Descriptions are resolved into a
:class:`Region`, a clipped polygon union with cached edge tables that the
solvers use for x cross-sections.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from typing import ClassVar, Sequence

import numpy as np
import shapely
from scipy.optimize import brentq
from shapely.affinity import scale as _reflect
from shapely.geometry import LineString, Polygon, box
from shapely.ops import unary_union

from .config import PRESET, PlateConfig
from .errors import DomainError, EmptyClassError

W_DEFAULT = math.pi / 750
X_DEFAULT = 1046 * math.pi / 750**2
# Reported widths of the triangular and hexagonal transverse trusses. They do
# not reproduce the stated transverse area, so the builders calibrate widths
# instead and keep these only for reference.
REPORTED_TRIANGLE_WIDTH = 0.00287159
REPORTED_HEXAGON_WIDTH = 0.0215211

TRUSS_PRESETS = ("Strips", "Triangles", "Squares", "Hexagons")


class Reinforcement:
    """Base class of all reinforcement descriptions."""

    kind: ClassVar[str] = "abstract"

    @property
    def label(self) -> str:
        return self.kind

    def polygons(self, cfg: PlateConfig = PRESET) -> list[Polygon]:
        """Component polygons before union and clipping."""
        raise NotImplementedError

    def validate(self, cfg: PlateConfig = PRESET) -> None:
        """Raises DomainError when the description violates its invariants."""

    def parameters(self) -> dict:
        return {
            f.name: _jsonable(getattr(self, f.name))
            for f in dataclasses.fields(self)
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(u) for u in v]
    return v


def _rect(x0, x1, y0, y1) -> Polygon:
    return box(x0, y0, x1, y1)


def _parallelogram(xa, ya, xb, yb, width) -> Polygon:
    """Bar of perpendicular width ``width`` around segment a-b, with
    horizontal end faces at ``ya`` and ``yb``."""
    dx, dy = xb - xa, yb - ya
    h = 0.5 * width * math.hypot(dx, dy) / abs(dy)
    return Polygon([(xa - h, ya), (xa + h, ya), (xb + h, yb), (xb - h, yb)])


@dataclasses.dataclass(frozen=True)
class Empty(Reinforcement):
    """No reinforcement."""

    kind: ClassVar[str] = "Empty"

    @property
    def label(self) -> str:
        return "∅"

    def polygons(self, cfg=PRESET):
        return []


@dataclasses.dataclass(frozen=True)
class Cross(Reinforcement):
    """Vertical arms of half-width ``mu`` at ``x_centers`` and full-length
    horizontal arms of half-width ``eps`` at ``y_centers``."""

    x_centers: tuple = ()
    mu: float = 0.0
    y_centers: tuple = ()
    eps: float = 0.0
    kind: ClassVar[str] = "Cross"

    def validate(self, cfg=PRESET):
        xs, ys = sorted(self.x_centers), sorted(self.y_centers)
        if self.mu < 0 or self.eps < 0:
            raise DomainError("half-widths must be non-negative")
        if any(b - a <= 2 * self.mu for a, b in zip(xs, xs[1:])):
            raise DomainError("vertical arms overlap")
        if any(b - a <= 2 * self.eps for a, b in zip(ys, ys[1:])):
            raise DomainError("horizontal arms overlap")
        if xs and (xs[0] - self.mu < 0 or xs[-1] + self.mu > math.pi):
            raise DomainError("vertical arm leaves the plate")
        if ys and (ys[0] - self.eps < -cfg.ell or ys[-1] + self.eps > cfg.ell):
            raise DomainError("horizontal arm leaves the plate")

    def polygons(self, cfg=PRESET):
        ell = cfg.ell
        out = []
        if self.mu > 0:
            out += [_rect(x - self.mu, x + self.mu, -ell, ell) for x in self.x_centers]
        if self.eps > 0:
            out += [_rect(0, math.pi, y - self.eps, y + self.eps) for y in self.y_centers]
        return out


@dataclasses.dataclass(frozen=True)
class SymmetricCrossN(Reinforcement):
    """Horizontal strip ``|y| < eps`` plus ``2N+1`` evenly spaced vertical arms.

    Arm ``i`` is centred at ``pi*i/(2N+2)`` with half-width ``mu/(2N+1)``, so
    the total area does not depend on ``N``. ``mu = 0`` gives the bare strip.
    """

    n: int = 0
    mu: float = 0.3
    eps: float = 0.01
    kind: ClassVar[str] = "SymmetricCrossN"

    @property
    def label(self) -> str:
        return f"D{self.n}"

    @property
    def arm_halfwidth(self) -> float:
        return self.mu / (2 * self.n + 1)

    @property
    def arm_centers(self) -> np.ndarray:
        i = np.arange(1, 2 * self.n + 2)
        return math.pi * i / (2 * self.n + 2)

    def arm_intervals(self) -> np.ndarray:
        """(2N+1, 2) array of arm x-intervals; empty when ``mu = 0``."""
        if self.mu == 0:
            return np.zeros((0, 2))
        c, h = self.arm_centers, self.arm_halfwidth
        return np.column_stack([c - h, c + h])

    def validate(self, cfg=PRESET):
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError("N must be a non-negative integer")
        bound = (2 * self.n + 1) * math.pi / (4 * (self.n + 1))
        if not 0 <= self.mu < bound:
            raise DomainError(f"mu must lie in [0, {bound:.6g}) for N={self.n}")
        if not 0 <= self.eps < cfg.ell:
            raise DomainError("eps must lie in [0, ell)")

    def polygons(self, cfg=PRESET):
        ell = cfg.ell
        out = [_rect(a, b, -ell, ell) for a, b in self.arm_intervals()]
        if self.eps > 0:
            out.append(_rect(0, math.pi, -self.eps, self.eps))
        return out


@dataclasses.dataclass(frozen=True)
class Tiles(Reinforcement):
    """Finite union of axis-aligned rectangles ``(x0, x1, y0, y1)``."""

    rects: tuple = ()
    eps: float = 0.0
    kind: ClassVar[str] = "Tiles"

    def validate(self, cfg=PRESET):
        for x0, x1, y0, y1 in self.rects:
            if min(x1 - x0, y1 - y0) / 2 < self.eps:
                raise DomainError("tile inradius below eps")
            if x0 < 0 or x1 > math.pi or y0 < -cfg.ell or y1 > cfg.ell:
                raise DomainError("tile leaves the plate")

    def polygons(self, cfg=PRESET):
        return [_rect(*r) for r in self.rects]


@dataclasses.dataclass(frozen=True)
class NetworkTube(Reinforcement):
    """Tube of radius ``eps`` around a polyline, clipped to the plate."""

    vertices: tuple = ()
    eps: float = 0.0
    length_bound: float = math.inf
    kind: ClassVar[str] = "NetworkTube"

    @property
    def length(self) -> float:
        v = np.asarray(self.vertices, dtype=float)
        return float(np.sum(np.hypot(*np.diff(v, axis=0).T))) if len(v) > 1 else 0.0

    def validate(self, cfg=PRESET):
        if self.eps <= 0:
            raise DomainError("tube radius must be positive")
        if self.length > self.length_bound:
            raise DomainError("polyline longer than its length bound")

    def polygons(self, cfg=PRESET):
        if len(self.vertices) < 2:
            return []
        return [LineString(self.vertices).buffer(self.eps, quad_segs=16)]


@dataclasses.dataclass(frozen=True)
class PolygonalTruss(Reinforcement):
    """Edge strips plus a transverse truss pattern.

    Every preset has total area ``2*pi*X``. ``Strips`` puts all of it in two
    edge strips of width ``X``; the other presets use edge strips of width
    ``W`` and spend the remaining ``2*pi*(X - W)`` on transverse bars. When
    ``width`` is None the bar width is calibrated so the clipped union has
    exactly that area.

    Attributes:
        preset: One of ``Strips``, ``Triangles``, ``Squares``, ``Hexagons``.
        X: Edge-strip width of the ``Strips`` preset.
        W: Edge-strip width of the other presets.
        width: Transverse bar width, or None to calibrate.
        b: Distance from a hexagon Y-junction to the plate edge it points to;
            None means ``ell`` (junction on the midline).
    """

    preset: str = "Strips"
    X: float = X_DEFAULT
    W: float = W_DEFAULT
    width: float | None = None
    b: float | None = None
    kind: ClassVar[str] = "PolygonalTruss"

    @property
    def label(self) -> str:
        return self.preset

    def validate(self, cfg=PRESET):
        if self.preset not in TRUSS_PRESETS:
            raise DomainError(f"unknown truss preset {self.preset!r}")
        if not 0 < self.W < self.X < cfg.ell:
            raise DomainError("need 0 < W < X < ell")
        b = cfg.ell if self.b is None else self.b
        if self.preset == "Hexagons" and not self.W < b < 2 * cfg.ell - self.W:
            raise DomainError("hexagon junction must lie between the edge strips")

    def bars(self, t: float, cfg=PRESET) -> list[Polygon]:
        """Transverse bars of width ``t``."""
        ell, W = cfg.ell, self.W
        top = ell - W
        out = []
        if self.preset in ("Squares", "Triangles"):
            for k in range(1, 75):
                x = k * math.pi / 75
                out.append(_rect(x - t / 2, x + t / 2, -top, top))
        if self.preset == "Triangles":
            for k in range(75):
                x0, x1 = k * math.pi / 75 + W, (k + 1) * math.pi / 75 - W
                ya, yb = (-top, top) if k % 2 == 0 else (top, -top)
                out.append(_parallelogram(x0, ya, x1, yb, t))
        if self.preset == "Hexagons":
            b = ell if self.b is None else self.b
            s = math.pi / 36
            for k in range(19):
                x = k * math.pi / 18
                up = 1 if k % 2 else -1
                yj = up * (ell - b)
                if 0 < k < 18:
                    lo, hi = sorted((yj, up * top))
                    out.append(_rect(x - t / 2, x + t / 2, lo, hi))
                for side in (-1, 1):
                    xe = x + side * s
                    if -s / 2 < xe < math.pi + s / 2:
                        out.append(_parallelogram(x, yj, xe, -up * top, t))
        return out

    def polygons(self, cfg=PRESET):
        ell = cfg.ell
        if self.preset == "Strips":
            return [_rect(0, math.pi, ell - self.X, ell), _rect(0, math.pi, -ell, -ell + self.X)]
        t = self.width if self.width is not None else _calibrated_width(self, cfg)
        edges = [_rect(0, math.pi, ell - self.W, ell), _rect(0, math.pi, -ell, -ell + self.W)]
        return edges + self.bars(t, cfg)

    def target_area(self) -> float:
        return 2 * math.pi * self.X


@functools.lru_cache(maxsize=64)
def _calibrated_width(truss: PolygonalTruss, cfg: PlateConfig) -> float:
    plate = box(0, -cfg.ell, math.pi, cfg.ell)
    target = truss.target_area()
    edges = [_rect(0, math.pi, cfg.ell - truss.W, cfg.ell),
             _rect(0, math.pi, -cfg.ell, -cfg.ell + truss.W)]

    def excess(t):
        return unary_union(edges + truss.bars(t, cfg)).intersection(plate).area - target

    return brentq(excess, 1e-7, 2 * truss.W, xtol=1e-16, rtol=1e-15)


def truss_width(truss: PolygonalTruss, cfg: PlateConfig = PRESET) -> float:
    """Transverse bar width actually used for a truss preset."""
    if truss.preset == "Strips":
        return truss.X
    return truss.width if truss.width is not None else _calibrated_width(truss, cfg)


@dataclasses.dataclass(frozen=True)
class PolygonUnion(Reinforcement):
    """Union of simple polygons given as vertex tuples."""

    vertices: tuple = ()
    kind: ClassVar[str] = "PolygonUnion"

    def validate(self, cfg=PRESET):
        for v in self.vertices:
            p = Polygon(v)
            if not p.is_valid or len(v) < 3:
                raise DomainError("polygon is not simple")

    def polygons(self, cfg=PRESET):
        return [shapely.geometry.polygon.orient(Polygon(v)) for v in self.vertices]


class Region:
    """Resolved reinforcement: clipped union plus edge tables.

    Attributes:
        geom: Shapely geometry of D clipped to the closed plate.
        ell: Plate half-width the region was resolved against.
        area: Lebesgue measure of D.
        y_breaks: Sorted vertex ordinates strictly inside ``(-ell, ell)``.
        symmetric: Whether D is invariant under ``y -> -y``.
    """

    def __init__(self, geom, ell: float):
        self.geom = geom
        self.ell = ell
        self.area = float(geom.area)
        segs = []
        for poly in getattr(geom, "geoms", [geom]):
            if poly.is_empty or poly.geom_type != "Polygon":
                continue
            for ring in [poly.exterior, *poly.interiors]:
                c = np.asarray(ring.coords)
                segs.append(np.column_stack([c[:-1], c[1:]]))
        e = np.concatenate(segs) if segs else np.zeros((0, 4))
        e = e[e[:, 1] != e[:, 3]]
        self._edges = e
        ys = np.unique(np.concatenate([e[:, 1], e[:, 3]])) if len(e) else np.zeros(0)
        ys = ys[(ys > -ell) & (ys < ell)]
        self.y_breaks = _merge_close(ys, 1e-13 * ell)
        if self.area == 0:
            self.symmetric = True
        else:
            mirrored = _reflect(geom, 1.0, -1.0, origin=(0, 0))
            self.symmetric = geom.symmetric_difference(mirrored).area <= 1e-12 * self.area

    @property
    def is_empty(self) -> bool:
        return self.area == 0

    def contains(self, x, y) -> np.ndarray:
        """Open-set membership test, vectorized."""
        if self.is_empty:
            return np.zeros(np.broadcast(x, y).shape, dtype=bool)
        return shapely.contains_xy(self.geom, x, y)

    def intervals(self, y: float) -> np.ndarray:
        """(k, 2) array of x-intervals of the cross-section ``D ∩ {y}``.

        Edges use a half-open ordinate rule, so ``y`` should avoid vertex
        ordinates; callers sample inside panels delimited by ``y_breaks``.
        """
        e = self._edges
        if len(e) == 0:
            return np.zeros((0, 2))
        y0, y1 = e[:, 1], e[:, 3]
        hit = ((y0 <= y) & (y < y1)) | ((y1 <= y) & (y < y0))
        if not hit.any():
            return np.zeros((0, 2))
        h = e[hit]
        xs = h[:, 0] + (y - h[:, 1]) * (h[:, 2] - h[:, 0]) / (h[:, 3] - h[:, 1])
        xs.sort()
        if len(xs) % 2:
            raise DomainError("odd number of edge crossings; malformed region")
        iv = xs.reshape(-1, 2)
        return iv[iv[:, 1] > iv[:, 0]]

    def trace_intervals(self, side: int = 1) -> np.ndarray:
        """Cross-section in the limit ``y -> side*ell`` from inside."""
        if self.is_empty:
            return np.zeros((0, 2))
        ell = self.ell
        inner = self.y_breaks
        if side > 0:
            edge = inner[-1] if len(inner) else -ell
            y1, y2 = edge + 0.5 * (ell - edge), edge + 0.75 * (ell - edge)
            target = ell
        else:
            edge = inner[0] if len(inner) else ell
            y1, y2 = edge - 0.5 * (edge + ell), edge - 0.75 * (edge + ell)
            target = -ell
        a, b = self.intervals(y1), self.intervals(y2)
        if a.shape != b.shape:
            raise DomainError("cross-section changes inside the edge panel")
        return np.clip(a + (b - a) * (target - y1) / (y2 - y1), 0.0, math.pi)


def _merge_close(v: np.ndarray, tol: float) -> np.ndarray:
    if len(v) == 0:
        return v
    keep = np.concatenate([[True], np.diff(v) > tol])
    return v[keep]


@functools.lru_cache(maxsize=128)
def resolve(D: Reinforcement, cfg: PlateConfig = PRESET) -> Region:
    """Validates ``D`` and resolves it into a clipped :class:`Region`."""
    D.validate(cfg)
    plate = box(0, -cfg.ell, math.pi, cfg.ell)
    polys = D.polygons(cfg)
    geom = unary_union(polys).intersection(plate) if polys else Polygon()
    if geom.geom_type == "GeometryCollection":
        geom = unary_union([g for g in geom.geoms if g.geom_type in ("Polygon", "MultiPolygon")])
    return Region(geom, cfg.ell)


def _check_in_plate(x, y, cfg):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    tol = 1e-14
    if np.any((x < -tol) | (x > math.pi + tol) | (np.abs(y) > cfg.ell * (1 + tol))):
        raise DomainError("point outside the closed plate")
    return x, y


def indicator(D: Reinforcement, x, y, cfg: PlateConfig = PRESET):
    """Indicator of the open region D (boundary points count as outside).

    Args:
        D: Reinforcement description.
        x: Abscissa or array of abscissae in ``[0, pi]``.
        y: Ordinate or array in ``[-ell, ell]``.
        cfg: Plate configuration.

    Returns:
        0/1 integer (array) of the broadcast shape.

    Raises:
        DomainError: A point lies outside the closed plate.
    """
    x, y = _check_in_plate(x, y, cfg)
    out = resolve(D, cfg).contains(x, y).astype(int)
    return int(out) if out.ndim == 0 else out


def area(D: Reinforcement, cfg: PlateConfig = PRESET) -> float:
    """Exact area of D: closed forms for crosses and strips, union area otherwise."""
    D.validate(cfg)
    if isinstance(D, Empty):
        return 0.0
    if isinstance(D, SymmetricCrossN):
        if D.mu == 0:
            return 2 * math.pi * D.eps
        return 2 * math.pi * D.eps + 4 * D.mu * (cfg.ell - D.eps)
    if isinstance(D, Cross):
        nx = len(D.x_centers) if D.mu > 0 else 0
        ny = len(D.y_centers) if D.eps > 0 else 0
        return (nx * 4 * D.mu * cfg.ell + ny * 2 * math.pi * D.eps
                - nx * ny * 4 * D.mu * D.eps)
    if isinstance(D, PolygonalTruss) and D.preset == "Strips":
        return 2 * math.pi * D.X
    return resolve(D, cfg).area


def is_symmetric(D: Reinforcement, cfg: PlateConfig = PRESET) -> bool:
    """True iff ``(x, y) in D`` exactly when ``(x, -y) in D``."""
    return resolve(D, cfg).symmetric


# ----------------------------------------------------------------------------
# Parity utilities


def _check_symmetric_grid(y: np.ndarray) -> None:
    y = np.asarray(y, dtype=float)
    scale = max(float(np.max(np.abs(y))), 1e-300) if y.size else 1.0
    if y.ndim != 1 or not np.allclose(y, -y[::-1], rtol=0, atol=1e-13 * scale):
        raise DomainError("sample grid is not symmetric about y = 0")


def parity_split(field, y) -> tuple[np.ndarray, np.ndarray]:
    """Even and odd parts in y of a field sampled on a symmetric grid.

    Args:
        field: Array whose last axis is indexed by ``y``.
        y: Increasing ordinates, symmetric about 0.

    Returns:
        ``(even, odd)`` with ``even + odd == field``.
    """
    _check_symmetric_grid(y)
    f = np.asarray(field, dtype=float)
    flipped = f[..., ::-1]
    return 0.5 * (f + flipped), 0.5 * (f - flipped)


def parity_norm_check(phi, y, p: float, weights=None, tol: float = 1e-12):
    """Compares the Lp norm of the odd part of ``phi`` with that of ``phi``.

    Args:
        phi: Samples on the symmetric grid ``y``.
        y: Symmetric ordinates.
        p: Exponent in ``[1, inf]``.
        weights: Symmetric quadrature weights; trapezoid weights by default.
        tol: Relative tolerance used for the assertion and the strictness flag.

    Returns:
        ``(odd_norm, norm, strict)``.

    Raises:
        DomainError: ``p < 1`` or non-symmetric grid.
        NumericError: The inequality fails beyond tolerance.
    """
    from .errors import NumericError

    if not p >= 1:
        raise DomainError("p must be at least 1")
    y = np.asarray(y, dtype=float)
    _, odd = parity_split(phi, y)
    phi = np.asarray(phi, dtype=float)
    if math.isinf(p):
        n_odd, n = float(np.max(np.abs(odd))), float(np.max(np.abs(phi)))
    else:
        if weights is None:
            dy = np.diff(y)
            weights = np.zeros_like(y)
            weights[:-1] += dy / 2
            weights[1:] += dy / 2
        n_odd = float(np.sum(weights * np.abs(odd) ** p) ** (1 / p))
        n = float(np.sum(weights * np.abs(phi) ** p) ** (1 / p))
    slack = tol * max(n, 1e-300)
    if n_odd > n + slack:
        raise NumericError(f"odd-part norm {n_odd} exceeds norm {n}")
    return n_odd, n, n_odd < n - slack


# ----------------------------------------------------------------------------
# Class enumeration


@dataclasses.dataclass(frozen=True)
class CrossFamily:
    """Cross reinforcements ``D^N`` for ``N`` in ``n_values``."""

    n_values: tuple = tuple(range(6))
    mu: float = 0.3
    eps: float = 0.01


@dataclasses.dataclass(frozen=True)
class TrussPresets:
    """The four polygonal truss presets."""

    X: float = X_DEFAULT
    W: float = W_DEFAULT
    b: float | None = None


@dataclasses.dataclass(frozen=True)
class TileGrid:
    """Regular grids of equal rectangles covering a fixed fraction of the plate.

    Each ``(nx, ny)`` in ``shapes`` splits the plate into ``nx*ny`` cells and
    places in each cell a centred rectangle scaled by ``sqrt(fill)``.
    """

    shapes: tuple = ((10, 1), (20, 1))
    fill: float = 0.25
    eps: float = 0.0


def enumerate_class(spec, kappa: float | None = None, cfg: PlateConfig = PRESET) -> list:
    """Finite ordered list of admissible reinforcements of a class.

    Args:
        spec: A :class:`CrossFamily`, :class:`TrussPresets` or :class:`TileGrid`.
        kappa: Optional area; members whose area differs from it by more than
            a relative ``1e-12`` are dropped.
        cfg: Plate configuration.

    Raises:
        DomainError: A member violates the class invariants.
        EmptyClassError: Nothing is left after filtering.
    """
    if isinstance(spec, CrossFamily):
        members = [SymmetricCrossN(int(n), spec.mu, spec.eps) for n in spec.n_values]
    elif isinstance(spec, TrussPresets):
        members = [PolygonalTruss(p, spec.X, spec.W, None, spec.b) for p in TRUSS_PRESETS]
    elif isinstance(spec, TileGrid):
        members = []
        s = math.sqrt(spec.fill)
        for nx, ny in spec.shapes:
            cw, chh = math.pi / nx, 2 * cfg.ell / ny
            rects = []
            for i in range(nx):
                for j in range(ny):
                    xc, yc = (i + 0.5) * cw, -cfg.ell + (j + 0.5) * chh
                    rects.append((xc - s * cw / 2, xc + s * cw / 2, yc - s * chh / 2, yc + s * chh / 2))
            members.append(Tiles(tuple(rects), spec.eps))
    else:
        raise DomainError(f"unknown class spec {spec!r}")
    for D in members:
        D.validate(cfg)
    if kappa is not None:
        members = [D for D in members if abs(area(D, cfg) - kappa) <= 1e-12 * abs(kappa)]
    if not members:
        raise EmptyClassError("no admissible reinforcement in the class")
    return members


# ----------------------------------------------------------------------------
# JSON records

_KINDS = {c.kind: c for c in (Empty, Cross, SymmetricCrossN, Tiles, NetworkTube,
                              PolygonalTruss, PolygonUnion)}


def _tuplify(v):
    if isinstance(v, list):
        return tuple(_tuplify(u) for u in v)
    return v


def reinforcement_to_dict(D: Reinforcement, cfg: PlateConfig = PRESET) -> dict:
    """JSON record ``{type, parameters, vertices}`` of the resolved region."""
    geom = resolve(D, cfg).geom
    verts = []
    for poly in getattr(geom, "geoms", [geom]):
        if not poly.is_empty and poly.geom_type == "Polygon":
            verts.append([list(c) for c in poly.exterior.coords[:-1]])
    return {"type": D.kind, "parameters": D.parameters(), "vertices": verts}


def reinforcement_from_dict(record: dict) -> Reinforcement:
    """Inverse of :func:`reinforcement_to_dict` (vertices are recomputed)."""
    try:
        cls = _KINDS[record["type"]]
    except KeyError as exc:
        raise DomainError(f"unknown reinforcement type in {record!r}") from exc
    params = {k: _tuplify(v) for k, v in record.get("parameters", {}).items()}
    return cls(**params)


def polygon_union(polys: Sequence[Sequence[Sequence[float]]]) -> PolygonUnion:
    """Convenience constructor from nested vertex lists."""
    return PolygonUnion(tuple(tuple(tuple(map(float, p)) for p in poly) for poly in polys))
