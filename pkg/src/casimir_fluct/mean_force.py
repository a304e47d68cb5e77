"""Closed-form mean Casimir-Polder force and interaction energy (far zone).

Sign conventions: for a single wall the force is along +d (away from the
wall), so the attractive result is negative.  Between two walls at
``z = +-L/2`` the force is along +z and the atom is pulled towards the
nearer wall, so ``sign(F) == sign(d)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .quantities import CONSTANTS, NaturalScales

#: Below this distance to a wall (in units of L) the two-wall force is
#: evaluated from its single-wall limit.
NEAR_WALL_SWITCH = 1e-6


@dataclass(frozen=True)
class SingleWall:
    d: float

    def __post_init__(self):
        if not self.d > 0:
            raise ValueError(f"distance must satisfy d > 0, got {self.d!r}")


@dataclass(frozen=True)
class TwoWalls:
    L: float
    d: float

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError(f"gap must satisfy L > 0, got {self.L!r}")
        if not abs(self.d) < self.L / 2:
            raise ValueError(f"offset must satisfy |d| < L/2 (d={self.d!r}, L={self.L!r})")

    @property
    def wall_distance(self):
        return self.L / 2 - abs(self.d)


@dataclass(frozen=True)
class ForceValue:
    """Force in newtons together with ``ln|F|`` and the natural-unit value."""

    value: float
    log_magnitude: float
    natural: float
    scales: NaturalScales

    @property
    def attractive_to(self):
        if self.value == 0:
            return None
        return "negative" if self.value < 0 else "positive"


def _log_prefactor(atom):
    return math.log(CONSTANTS.hbar * CONSTANTS.c * atom.alpha_static) if atom.alpha_static > 0 \
        else -math.inf


def _force(natural, log_magnitude, scales):
    return ForceValue(natural * scales.force_scale, log_magnitude, natural, scales)


def energy_single_wall(atom, d, scales=None):
    """Interaction energy ``-3 hbar c alpha / (8 pi d^4)`` in joules.

    This is the antiderivative of the mean force that vanishes at infinity;
    the mode-sum oracle checks it independently.
    """
    SingleWall(d)
    scales = scales or NaturalScales(d, atom.alpha_static)
    dn = d / scales.length_scale
    return -3.0 / (8.0 * math.pi * dn**4) * scales.energy_scale


def mean_force_single_wall(atom, d, scales=None):
    SingleWall(d)
    scales = scales or NaturalScales(d, atom.alpha_static)
    dn = d / scales.length_scale
    natural = -3.0 / (2.0 * math.pi * dn**5)
    log_mag = math.log(3.0 / (2.0 * math.pi)) + _log_prefactor(atom) - 5.0 * math.log(d)
    return _force(natural, log_mag, scales)


def _two_wall_shape(L, d):
    """Return (numerator, cos(pi d / L)) of the two-wall force, both accurate near the walls."""
    a = math.pi * d / L
    num = math.sin(3.0 * a) - 11.0 * math.sin(a)
    cos_a = math.sin(math.pi * (L / 2 - abs(d)) / L)
    return num, cos_a


def mean_force_two_walls(atom, L, d, scales=None):
    geom = TwoWalls(L, d)
    scales = scales or NaturalScales(L, atom.alpha_static)
    Ln = L / scales.length_scale
    dn = d / scales.length_scale
    z = geom.wall_distance
    if z < NEAR_WALL_SWITCH * L:
        zn = z / scales.length_scale
        natural = math.copysign(3.0 / (2.0 * math.pi * zn**5), d)
        log_mag = math.log(3.0 / (2.0 * math.pi)) + _log_prefactor(atom) - 5.0 * math.log(z)
        return _force(natural, log_mag, scales)
    num, cos_a = _two_wall_shape(Ln, dn)
    if num == 0:
        return _force(0.0, -math.inf, scales)
    natural = -(math.pi**4 / (8.0 * Ln**5)) * num / cos_a**5
    log_mag = (math.log(math.pi**4 / 8.0) + _log_prefactor(atom) - 5.0 * math.log(L)
               + math.log(abs(num)) - 5.0 * math.log(cos_a))
    return _force(natural, log_mag, scales)


def single_wall_limit_of_two_walls(atom, z, L):
    """Ratio of the two-wall force at distance ``z`` from one wall to the
    single-wall force at the same distance; tends to 1 as ``L/z`` grows."""
    if not 0 < z < L / 2:
        raise ValueError("wall distance must satisfy 0 < z < L/2")
    two = mean_force_two_walls(atom, L, L / 2 - z)
    one = mean_force_single_wall(atom, z)
    return -two.value / one.value


# ln of the ratio above as a power series in u = pi z / L (coefficients of u^6 .. u^12)
_LIMIT_SERIES = (-2.0 / 189.0, -1.0 / 135.0, -4.0 / 1485.0, -8942.0 / 11609325.0)


def single_wall_limit_deviation(z, L):
    """``ratio - 1`` for :func:`single_wall_limit_of_two_walls`, accurate even
    when it is far below rounding level (it behaves as ``-(2/189)(pi z/L)^6``)."""
    if not 0 < z < L / 2:
        raise ValueError("wall distance must satisfy 0 < z < L/2")
    u = math.pi * z / L
    if u < 0.1:
        u2 = u * u
        log_ratio = u2**3 * sum(c * u2**i for i, c in enumerate(_LIMIT_SERIES))
    else:
        log_ratio = (5.0 * math.log(u / math.sin(u))
                     + math.log((math.cos(3 * u) + 11 * math.cos(u)) / 12.0))
    return math.expm1(log_ratio)
