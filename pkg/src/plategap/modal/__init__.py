"""Mode-by-mode solvers in the transverse variable."""

from .bvp import ModeProfile, ModeSet, Solution, SolveReport, kernel, mode_solve, solve_modes, solve_weakened
from .eigen import TorsionalEigenpair, admissible, determinant, torsional_eigenpair
from .grid import YGrid, make_y_grid
from .rhs import boundary_loads, modal_rhs, weighted_sine_coefficients

__all__ = [
    "ModeProfile", "ModeSet", "Solution", "SolveReport", "kernel", "mode_solve", "solve_modes",
    "solve_weakened", "TorsionalEigenpair", "admissible", "determinant", "torsional_eigenpair",
    "YGrid", "make_y_grid", "boundary_loads", "modal_rhs", "weighted_sine_coefficients",
]
