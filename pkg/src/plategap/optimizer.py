"""Worst-force and best-reinforcement searches over finite classes."""

from __future__ import annotations

import dataclasses
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from .config import PRESET, PlateConfig
from .cross import finite_alpha_gap, limit_gap
from .errors import DomainError, PlateGapError
from .forces import BoundaryLimit, DeltaPair, Field, Force, ResonantEigen, SeparableSine, SinhAlpha
from .geometry import Empty, PolygonalTruss, Reinforcement, SymmetricCrossN, TRUSS_PRESETS
from .series import CROSS_TERMS, DELTA_TERMS, GapSeries, delta_gap, max_gap, normalized_delta_gap

SOLVERS = ("auto", "analytic", "modal", "galerkin")
THREADS_ENV = "PLATEGAP_THREADS"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def analytic_available(f: Force, D: Reinforcement) -> bool:
    """True when a closed-form gap series exists for ``(f, D)``."""
    if isinstance(f, DeltaPair):
        return isinstance(D, Empty)
    if isinstance(f, SeparableSine) and isinstance(D, (Empty, SymmetricCrossN)):
        return isinstance(f.profile, (BoundaryLimit, SinhAlpha))
    return False


def gap_series(f: Force, D: Reinforcement, cfg: PlateConfig = PRESET, solver: str = "auto",
               M: int | None = None, **options) -> GapSeries:
    """Gap series of ``(f, D)`` from the selected solver.

    Args:
        f: Force.
        D: Reinforcement.
        cfg: Plate configuration.
        solver: ``auto`` (closed form when available, modal otherwise),
            ``analytic``, ``modal`` or ``galerkin``.
        M: Number of x-modes; defaults to 10000 for delta pairs, else 250.
        **options: Passed to the numerical solver.
    """
    if solver not in SOLVERS:
        raise DomainError(f"solver must be one of {SOLVERS}")
    if M is None:
        M = DELTA_TERMS if isinstance(f, DeltaPair) else CROSS_TERMS
    if solver == "analytic" or (solver == "auto" and analytic_available(f, D)):
        if not analytic_available(f, D):
            raise DomainError(f"no closed form for {type(f).__name__} on {D.label}")
        if isinstance(f, DeltaPair):
            return (normalized_delta_gap if f.normalized else delta_gap)(f.z, M, cfg)
        if isinstance(f.profile, BoundaryLimit):
            s = limit_gap(f.g, D, cfg, M)
        else:
            s = finite_alpha_gap(f.g, D, f.profile.alpha, cfg, M)
        return s.scaled(f.scale) if f.scale != 1 else s
    if solver == "galerkin":
        from .modal.galerkin import solve_stiffened_galerkin

        return solve_stiffened_galerkin(f, D, cfg, (M, options.get("degree", 12)))[1]
    from .modal.bvp import solve_weakened

    return solve_weakened(f, D, cfg, M, **options)[1]


def evaluate(f: Force, D: Reinforcement, cfg: PlateConfig = PRESET, solver: str = "auto",
             M: int | None = None, **options) -> tuple[float, float]:
    """``(x_star, G_inf)`` of the pair ``(f, D)``."""
    return max_gap(gap_series(f, D, cfg, solver, M, **options))


def _label(obj, i: int) -> str:
    return getattr(obj, "label", "") or f"#{i}"


@dataclasses.dataclass(frozen=True)
class MaxmaxResult:
    """Worst force for one reinforcement.

    Attributes:
        index: Position of the worst force in the class.
        force: The worst force.
        value: Its maximal gap.
        values: Maximal gap per force; NaN marks failed cells.
        argmax: Abscissa of each maximal gap.
        failed: Per-force failure flags.
    """

    index: int
    force: Force
    value: float
    values: tuple
    argmax: tuple
    failed: tuple


def _cells(pairs, cfg, solver, M, options):
    def run(pair):
        f, D = pair
        try:
            return evaluate(f, D, cfg, solver, M, **options) + ("",)
        except PlateGapError as exc:
            return (math.nan, math.nan, f"{type(exc).__name__}: {exc}")

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(run, pairs))
    return [run(p) for p in pairs]


def _pick_row(values: np.ndarray, allow_failed: bool, errors: Sequence[str], name: str) -> int:
    bad = np.isnan(values)
    if bad.any() and not allow_failed:
        first = int(np.flatnonzero(bad)[0])
        raise PlateGapError(f"cell {name}/{first} failed: {errors[first]}")
    if bad.all():
        raise PlateGapError(f"every cell of {name} failed")
    return int(np.nanargmax(values))


def maxmax(D: Reinforcement, forces: Sequence[Force], solver: str = "auto",
           cfg: PlateConfig = PRESET, M: int | None = None, allow_failed: bool = False,
           **options) -> MaxmaxResult:
    """Worst force of a finite class for a fixed reinforcement.

    Ties go to the earliest force. Failed cells raise unless ``allow_failed``.

    Raises:
        DomainError: Empty force class.
        PlateGapError: A failed cell without ``allow_failed``, or a fully failed row.
    """
    if not forces:
        raise DomainError("force class is empty")
    cells = _cells([(f, D) for f in forces], cfg, solver, M, options)
    xs = np.array([c[0] for c in cells])
    vals = np.array([c[1] for c in cells])
    errors = [c[2] for c in cells]
    i = _pick_row(vals, allow_failed, errors, D.label)
    return MaxmaxResult(i, forces[i], float(vals[i]), tuple(vals.tolist()), tuple(xs.tolist()),
                        tuple(bool(e) for e in errors))


@dataclasses.dataclass(frozen=True)
class MinimaxReport:
    """Full value matrix of a minimaxmax search.

    Rows are reinforcements and columns are forces.

    Attributes:
        d_labels: Reinforcement labels.
        f_labels: Force labels.
        values: Maximal gap per cell; NaN for failed cells.
        argmax: Abscissa of each maximal gap.
        failed: Failure flag per cell.
        errors: Error text per cell, empty on success.
        worst_force: Column index of each row maximum.
        row_max: Row maxima.
        best_d: Row index of the smallest row maximum.
        value: The minimaxmax value.
        solver: Solver choice.
        terms: Number of modes used.
    """

    d_labels: tuple
    f_labels: tuple
    values: np.ndarray
    argmax: np.ndarray
    failed: np.ndarray
    errors: tuple
    worst_force: tuple
    row_max: tuple
    best_d: int
    value: float
    solver: str
    terms: int | None

    @property
    def optimum(self) -> tuple[str, str]:
        """``(force label, reinforcement label)`` of the optimal couple."""
        return self.f_labels[self.worst_force[self.best_d]], self.d_labels[self.best_d]

    def recompute(self) -> float:
        """Minimaxmax value recomputed from the matrix."""
        return float(np.min(np.nanmax(self.values, axis=1)))

    def to_dict(self) -> dict:
        def clean(a):
            return [[None if math.isnan(v) else float(v) for v in row] for row in np.asarray(a)]

        return {
            "d_labels": list(self.d_labels),
            "f_labels": list(self.f_labels),
            "values": clean(self.values),
            "argmax": clean(self.argmax),
            "failed": np.asarray(self.failed).tolist(),
            "errors": [list(r) for r in self.errors],
            "worst_force": list(self.worst_force),
            "row_max": list(self.row_max),
            "best_d": self.best_d,
            "optimum": list(self.optimum),
            "value": self.value,
            "solver": self.solver,
            "terms": self.terms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_csv(self, scale: float = 1e4) -> str:
        lines = ["," + ",".join(self.f_labels)]
        for lab, row in zip(self.d_labels, self.values):
            lines.append(lab + "," + ",".join("" if math.isnan(v) else repr(float(v) * scale) for v in row))
        return "\n".join(lines) + "\n"


def minimaxmax(classD: Sequence[Reinforcement], classF: Sequence[Force], solver: str = "auto",
               cfg: PlateConfig = PRESET, M: int | None = None, allow_failed: bool = False,
               **options) -> MinimaxReport:
    """Best reinforcement against the worst force of a finite class.

    Every cell is evaluated, then the smallest row maximum is selected. Ties
    go to the earliest class member in both directions.

    Raises:
        DomainError: An empty class.
        PlateGapError: A failed cell without ``allow_failed``, or a fully failed row.
    """
    if not classD or not classF:
        raise DomainError("classes must be nonempty")
    pairs = [(f, D) for D in classD for f in classF]
    cells = _cells(pairs, cfg, solver, M, options)
    shape = (len(classD), len(classF))
    xs = np.array([c[0] for c in cells]).reshape(shape)
    vals = np.array([c[1] for c in cells]).reshape(shape)
    errs = [c[2] for c in cells]
    errors = tuple(tuple(errs[i * shape[1]:(i + 1) * shape[1]]) for i in range(shape[0]))
    worst = tuple(_pick_row(vals[i], allow_failed, errors[i], _label(D, i)) for i, D in enumerate(classD))
    row_max = tuple(float(vals[i, j]) for i, j in enumerate(worst))
    best = int(np.argmin(row_max))
    return MinimaxReport(
        tuple(_label(D, i) for i, D in enumerate(classD)),
        tuple(_label(f, j) for j, f in enumerate(classF)),
        vals, xs, np.isnan(vals), errors, worst, row_max, best, row_max[best], solver, M,
    )


def worst_delta_scan(z_grid, M: int = DELTA_TERMS, cfg: PlateConfig = PRESET) -> list[tuple[float, float, float]]:
    """Rows ``(z, G_inf of the normalized pair, G_inf of the raw pair)``.

    Raises:
        DomainError: A grid point outside ``(0, pi)``.
    """
    rows = []
    for z in np.atleast_1d(np.asarray(z_grid, dtype=float)):
        raw = delta_gap(float(z), M, cfg)
        norm = raw.scaled(math.sqrt(2.0) / math.sqrt(raw(float(z))))
        rows.append((float(z), max_gap(norm)[1], max_gap(raw)[1]))
    return rows


def sine_class(n_max: int = 10) -> list[SeparableSine]:
    """Boundary-trace limits ``f^1 .. f^n`` of ``g = sin(n x)``."""
    from .forces import sine_force

    return [sine_force(n) for n in range(1, n_max + 1)]


def resonant_class(m_max: int = 5) -> list[ResonantEigen]:
    return [ResonantEigen(m, label=f"e{m}") for m in range(1, m_max + 1)]


def truss_class(cfg: PlateConfig = PRESET) -> list[Reinforcement]:
    """``[Empty, Strips, Triangles, Squares, Hexagons]``."""
    return [Empty()] + [PolygonalTruss(p) for p in TRUSS_PRESETS]


def _sign_field() -> Field:
    return Field(lambda x, y: np.sign(y), "sign(y)", (), (0.0,))


def _competitor(rng: np.random.Generator, cfg: PlateConfig, amplitude: float) -> Field:
    """Random non-odd perturbation of ``sign(y)`` clipped to sup norm 1."""
    a = rng.uniform(-1, 1, (3, 3))
    ell = cfg.ell

    def fn(x, y, a=a):
        s = y / ell
        r = sum(a[i, j] * np.cos(i * x) * s**j for i in range(3) for j in range(3)) / 9
        return np.clip(np.sign(y) + amplitude * r, -1.0, 1.0)

    return Field(fn, "competitor", (), (0.0,))


def conjecture_suite(cfg: PlateConfig = PRESET, scan_points: int = 999, scan_terms: int = 2000,
                     competitors: int = 20, seed: int = 0, field_terms: int = 32) -> dict:
    """Numerical evidence for the four optimality conjectures.

    The report is evidence gathered on finite samples, not proof.

    Args:
        cfg: Plate configuration.
        scan_points: Interior points ``z_k = k pi/(scan_points + 1)``.
        scan_terms: Series terms for the delta scan.
        competitors: Number of random competitors of ``sign(y)``.
        seed: RNG seed.
        field_terms: x-modes for the modal solves of pointwise forces.
    """
    out = {"kind": "evidence, not proof"}
    z = math.pi * np.arange(1, scan_points + 1) / (scan_points + 1)
    scan = worst_delta_scan(z, scan_terms, cfg)
    vals = np.array([r[1] for r in scan])
    k = int(np.argmax(vals))
    out["delta_scan"] = {"argmax_z": float(z[k]), "value": float(vals[k]),
                         "holds": bool(abs(z[k] - math.pi / 2) < 1e-12)}

    from .modal.bvp import solve_weakened

    rng = np.random.default_rng(seed)
    base = solve_weakened(_sign_field(), Empty(), cfg, field_terms)[2].max_gap
    comp = [solve_weakened(_competitor(rng, cfg, rng.uniform(0.05, 0.5)), Empty(), cfg, field_terms)[2].max_gap
            for _ in range(competitors)]
    out["odd_sign_force"] = {"gap": base, "competitors": comp,
                             "holds": bool(all(c <= base for c in comp))}

    t1 = minimaxmax([Empty()] + [SymmetricCrossN(n) for n in range(6)], sine_class(10), cfg=cfg)
    out["cross_minimax"] = {"optimum": list(t1.optimum), "value": t1.value,
                            "holds": t1.optimum == ("f1", "D0")}
    t2 = minimaxmax(truss_class(cfg), resonant_class(5), cfg=cfg, M=300)
    out["truss_minimax"] = {"optimum": list(t2.optimum), "value": t2.value,
                            "holds": t2.optimum == ("e1", "Strips")}
    return out
