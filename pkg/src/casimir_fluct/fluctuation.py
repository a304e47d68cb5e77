"""Time-averaged fluctuation of the Casimir-Polder force.

The single-wall results depend on the measurement window only through
``x = cT/d``.  Everything is evaluated in log space so that extreme ratios
(the two-wall case reaches ``exp(-1e10)``) stay representable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .mean_force import TwoWalls
from .quantities import CONSTANTS

#: Coefficients of the even polynomial under the square root, x^0 .. x^14.
FLUCT_COEFFS = (5, 40, 145, 317, 400, 285, 10, 86)

SMALL_D_COEFF = math.sqrt(86.0) / 6.0
LARGE_D_COEFF = math.sqrt(5.0) / 6.0

#: The simplified two-wall expression is trusted only for cT/L at least this.
TWO_WALL_VALIDITY = 10.0

WINDOW_KINDS = ("lorentzian",)


class BracketError(ValueError):
    def __init__(self, message, bracket, values):
        super().__init__(f"{message}: bracket={bracket}, values={values}")
        self.bracket = bracket
        self.values = values


@dataclass(frozen=True)
class MeasurementWindow:
    T: float
    kind: str = "lorentzian"

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("integration time T must be positive")
        if self.kind not in WINDOW_KINDS:
            raise ValueError(f"unsupported response function {self.kind!r}")


@dataclass(frozen=True)
class FluctStats:
    """``std`` is None where only the relative fluctuation is known (two walls).

    ``relative`` is 0.0 when it underflows; ``log_relative`` is always exact.
    """

    std: float | None
    relative: float
    log_relative: float
    x: float | None = None
    valid: bool = True
    underflow: bool = False


def window_attenuation(window, omega):
    """Spectral attenuation of the response function at angular frequency ``omega``."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("frequency must be non-negative")
    out = np.exp(-omega * window.T)
    return float(out) if out.ndim == 0 else out


def log_fluct_poly(x):
    """``ln P(x)`` for the fluctuation polynomial, safe for huge ``x``."""
    x = abs(x)
    if x <= 1.0:
        y = x * x
        return math.log(sum(c * y**i for i, c in enumerate(FLUCT_COEFFS)))
    y = 1.0 / (x * x)
    return 14.0 * math.log(x) + math.log(sum(c * y**(7 - i) for i, c in enumerate(FLUCT_COEFFS)))


def _log1p_sq(x):
    if x <= 1.0:
        return math.log1p(x * x)
    return 2.0 * math.log(x) + math.log1p(1.0 / (x * x))


def log_relative_single_wall(x):
    """``ln`` of (std / |mean|) as a function of ``x = cT/d`` alone."""
    if not x > 0:
        raise ValueError("x = cT/d must be positive")
    return 0.5 * log_fluct_poly(x) - math.log(6.0) - 5.0 * math.log(x) - 4.0 * _log1p_sq(x)


def std_natural(x):
    """std in units of ``hbar c alpha / d^5`` for ``x = cT/d``."""
    return math.exp(0.5 * log_fluct_poly(x) - 4.0 * _log1p_sq(x) - 5.0 * math.log(x)) / (4 * math.pi)


def _x(d, window):
    if not d > 0:
        raise ValueError("distance must be positive")
    return CONSTANTS.c * window.T / d


def force_std_single_wall(atom, d, window):
    x = _x(d, window)
    if atom.alpha_static == 0:
        return 0.0
    cT = CONSTANTS.c * window.T
    log_std = (math.log(CONSTANTS.hbar * CONSTANTS.c * atom.alpha_static / (4 * math.pi))
               - 5.0 * math.log(cT) - 4.0 * _log1p_sq(x) + 0.5 * log_fluct_poly(x))
    return math.exp(log_std)


def relative_fluct_single_wall(atom, d, window):
    if not atom.alpha_static > 0:
        raise ValueError("relative fluctuation is undefined for a vanishing polarizability")
    x = _x(d, window)
    log_rel = log_relative_single_wall(x)
    rel = math.exp(log_rel)
    return FluctStats(force_std_single_wall(atom, d, window), rel, log_rel, x,
                      underflow=(rel == 0.0))


def asymptotic_relative(regime, d, cT):
    if not (d > 0 and cT > 0):
        raise ValueError("d and cT must be positive")
    r = d / cT
    if regime == "small_d":
        return SMALL_D_COEFF * r**6
    if regime == "large_d":
        return LARGE_D_COEFF * r**5
    raise ValueError(f"regime must be 'small_d' or 'large_d', got {regime!r}")


@dataclass(frozen=True)
class CrossoverResult:
    T: float
    x: float
    residual: float
    T_small_d: float
    T_large_d: float

    @property
    def d_over_cT(self):
        return 1.0 / self.x


def crossover_report(d, x_bracket=(1e-3, 1e3), n_check=401):
    """Solve relative(d, T) = 1 on the exact ratio.

    The ratio is checked to be strictly decreasing in ``x`` over the bracket
    before the root is accepted, so the root is unique there.
    """
    if not d > 0:
        raise ValueError("distance must be positive")
    lo, hi = (math.log(v) for v in x_bracket)
    f = lambda s: log_relative_single_wall(math.exp(s))
    flo, fhi = f(lo), f(hi)
    if not (flo > 0 > fhi):
        raise BracketError("relative fluctuation does not cross 1", x_bracket, (flo, fhi))
    grid = np.linspace(lo, hi, n_check)
    vals = np.array([f(s) for s in grid])
    if not np.all(np.diff(vals) < 0):
        raise BracketError("relative fluctuation is not monotone over the bracket",
                           x_bracket, (flo, fhi))
    s = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    x = math.exp(s)
    c = CONSTANTS.c
    return CrossoverResult(
        T=x * d / c,
        x=x,
        residual=abs(math.exp(f(s)) - 1.0),
        T_small_d=d * SMALL_D_COEFF ** (1 / 6) / c,
        T_large_d=d * LARGE_D_COEFF ** (1 / 5) / c,
    )


def crossover_time(d):
    return crossover_report(d).T


def log_geometry_factor(a):
    """``ln[cos^6 a / |sin 3a - 11 sin a|]`` for ``a = pi d / L`` in (0, pi/2)."""
    return _log_geometry(math.log(a))


def _log_geometry(s, cos_a=None):
    a = math.exp(s)
    if a < 1e-4:
        # sin 3a - 11 sin a = -8a (1 + a^2/3 + ...), ln cos a = -a^2/2 + ...
        return -math.log(8.0) - s - (10.0 / 3.0) * a * a
    if cos_a is None:
        cos_a = math.cos(a)
    return 6.0 * math.log(cos_a) - math.log(abs(math.sin(3 * a) - 11 * math.sin(a)))


def log_two_wall_prefactor(L, T):
    r = CONSTANTS.c * T / L
    return -math.pi * r - 2.5 * math.log(2.0 * math.pi * r)


def relative_fluct_two_walls(L, d, window):
    """Simplified (large cT/L) relative fluctuation between two walls.

    ``valid`` is False when cT/L < 10, where the simplification is not
    expected to hold; the value is still reported.
    """
    if d == 0:
        raise ValueError("mean force vanishes at d = 0; relative fluctuation diverges")
    geom = TwoWalls(L, d)
    a = math.pi * abs(d) / L
    cos_a = math.sin(math.pi * geom.wall_distance / L)
    log_rel = log_two_wall_prefactor(L, window.T) + _log_geometry(math.log(a), cos_a)
    rel = math.exp(log_rel) if log_rel > -745.0 else 0.0
    return FluctStats(None, rel, log_rel, CONSTANTS.c * window.T / L,
                      valid=CONSTANTS.c * window.T / L >= TWO_WALL_VALIDITY,
                      underflow=(rel == 0.0))


def log_relative_two_walls_at_log_offset(L, log_d, window):
    """As :func:`relative_fluct_two_walls` but takes ``ln d`` (d may underflow)."""
    s = log_d + math.log(math.pi / L)
    if s >= math.log(math.pi / 2):
        raise ValueError("offset must satisfy |d| < L/2")
    return log_two_wall_prefactor(L, window.T) + _log_geometry(s)


def two_wall_threshold_log_offset(L, window):
    """``ln d*`` such that the relative fluctuation exceeds 1 for |d| < d*."""
    pre = log_two_wall_prefactor(L, window.T)
    f = lambda s: pre + _log_geometry(s)
    hi = math.log(math.pi / 2) - 1e-12
    if f(hi) > 0:
        return math.log(L / 2)
    lo = min(-1.0, 2.0 * pre - 10.0)
    if f(lo) < 0:
        raise BracketError("no threshold offset found", (lo, hi), (f(lo), f(hi)))
    s = brentq(f, lo, hi, xtol=1e-12, rtol=1e-15, maxiter=500)
    return s + math.log(L / math.pi)


def transit_time(cavity_length, mean_speed):
    if not (cavity_length > 0 and mean_speed > 0):
        raise ValueError("cavity length and mean speed must be positive")
    return cavity_length / mean_speed


def mb_mean_speed(mass, temperature):
    """Maxwell-Boltzmann mean speed sqrt(8 k_B T / (pi m))."""
    if not (mass > 0 and temperature > 0):
        raise ValueError("mass and temperature must be positive")
    return math.sqrt(8.0 * CONSTANTS.k_B * temperature / (math.pi * mass))
