"""Gap between the long edges of a reinforced, partially hinged thin plate.

The plate ``]0, pi[ x ]-ell, ell[`` is hinged on its short edges and free on
its long edges. The package computes the gap ``u(x, ell) - u(x, -ell)`` under
external forces for reinforced plates, and searches finite classes of forces
and reinforcements for the worst force and the best reinforcement.
"""

from .config import PRESET, PlateConfig
from .cross import limit_gap, finite_alpha_gap
from .errors import (DomainError, EigenvalueNotFoundError, EmptyClassError, NearResonanceError,
                     NumericError, PlateGapError)
from .forces import (BoundaryLimit, CoshAlpha, DeltaPair, ExpAlpha, Field, IndicatorG, ResonantEigen,
                     SampledG, SeparableSine, SineModes, SinhAlpha, SmearedDelta, sine_force)
from .geometry import (Cross, CrossFamily, Empty, NetworkTube, PolygonalTruss, PolygonUnion,
                       SymmetricCrossN, Tiles, TrussPresets, area, enumerate_class, indicator, resolve)
from .modal import mode_solve, solve_weakened, torsional_eigenpair
from .modal.galerkin import solve_stiffened_galerkin
from .optimizer import maxmax, minimaxmax, worst_delta_scan
from .series import GapSeries, delta_gap, max_gap, normalized_delta_gap, upsilon

__all__ = [
    "PRESET", "PlateConfig", "limit_gap", "finite_alpha_gap", "DomainError", "EigenvalueNotFoundError",
    "EmptyClassError", "NearResonanceError", "NumericError", "PlateGapError", "BoundaryLimit", "CoshAlpha",
    "DeltaPair", "ExpAlpha", "Field", "IndicatorG", "ResonantEigen", "SampledG", "SeparableSine",
    "SineModes", "SinhAlpha", "SmearedDelta", "sine_force", "Cross", "CrossFamily", "Empty",
    "NetworkTube", "PolygonalTruss", "PolygonUnion", "SymmetricCrossN", "Tiles", "TrussPresets", "area",
    "enumerate_class", "indicator", "resolve", "mode_solve", "solve_weakened", "torsional_eigenpair",
    "solve_stiffened_galerkin", "maxmax", "minimaxmax", "worst_delta_scan", "GapSeries", "delta_gap",
    "max_gap", "normalized_delta_gap", "upsilon",
]
