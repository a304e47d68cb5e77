"""Brute-force spectral checks of the closed-form results."""
from .grids import ModeSumGrid, OracleConvergenceError
from .modesum import mean_energy_modesum, mean_force_modesum, two_wall_force_modesum
from .report import OracleReport
from .variance import VARIANCE_GRID, variance_modesum
from .wick import contraction_expectation, fock_expectation, quadratic_form_variance

__all__ = [
    "ModeSumGrid", "OracleConvergenceError", "OracleReport", "VARIANCE_GRID",
    "contraction_expectation", "fock_expectation", "mean_energy_modesum",
    "mean_force_modesum", "quadratic_form_variance", "two_wall_force_modesum",
    "variance_modesum",
]
