"""Abel-regularized mode sums for the mean energy and mean force.

Vacuum averages of the interaction and force operators reduce to
``E = -(hbar c alpha / pi^2) int d^3k k S(k, d)`` and
``F = +(hbar c alpha / pi^2) int d^3k k dS/dd`` over the positive octant,
with ``S`` the polarization-summed squared mode function.  The integrals
are only conditionally convergent, so each is damped by ``exp(-eta k)``,
evaluated on a decreasing ``eta`` schedule and extrapolated to ``eta = 0``.
"""
from __future__ import annotations

import math

import numpy as np

from .. import cavity_modes as cm
from ..mean_force import (SingleWall, TwoWalls, energy_single_wall, mean_force_single_wall,
                          mean_force_two_walls)
from ..quantities import NaturalScales
from .grids import ModeSumGrid, continuum_kz, extrapolate, octant_nodes
from .report import OracleReport

_KZ_CHUNK = 256


def _octant_integral(kz, wz, t_max, grid, integrand):
    total = 0.0
    for a in range(0, kz.size, _KZ_CHUNK):
        nodes = octant_nodes(kz[a:a + _KZ_CHUNK], wz[a:a + _KZ_CHUNK], t_max, grid)
        total += float(np.sum(nodes.weight * integrand(nodes)))
    return total


def _energy_kernel(z, eta):
    def f(nodes):
        shifted = cm.intensity_sum(nodes.pdiag, nodes.kz, z) - cm.intensity_sum_far(nodes.pdiag)
        return -nodes.k * np.exp(-eta * nodes.k) * shifted / math.pi**2
    return f


def _force_kernel(z, eta):
    def f(nodes):
        return nodes.k * np.exp(-eta * nodes.k) * cm.intensity_sum_dz(nodes.pdiag, nodes.kz, z) \
            / math.pi**2
    return f


def _single_wall_series(kernel, grid):
    """Natural units with d = 1; the oscillation period along k_z is pi."""
    values = []
    for eta in grid.eta_schedule:
        k_max = grid.k_max or grid.decay / eta
        kz, wz = continuum_kz(k_max, math.pi, grid)
        values.append(_octant_integral(kz, wz, k_max, grid, kernel(1.0, eta)))
    return values


def mean_energy_modesum(atom, d, grid=None):
    SingleWall(d)
    grid = grid or ModeSumGrid()
    scales = NaturalScales(d, atom.alpha_static)
    values = _single_wall_series(_energy_kernel, grid)
    nat, err, trace = extrapolate(grid.eta_schedule, values)
    unit = scales.energy_scale
    return OracleReport("mean_energy_single_wall", nat * unit, energy_single_wall(atom, d),
                        "J", unit, err * unit, trace, {"d": d, "alpha": atom.alpha_static})


def mean_force_modesum(atom, d, grid=None):
    SingleWall(d)
    grid = grid or ModeSumGrid()
    scales = NaturalScales(d, atom.alpha_static)
    values = _single_wall_series(_force_kernel, grid)
    nat, err, trace = extrapolate(grid.eta_schedule, values)
    unit = scales.force_scale
    return OracleReport("mean_force_single_wall", nat * unit,
                        mean_force_single_wall(atom, d).value, "N", unit, err * unit, trace,
                        {"d": d, "alpha": atom.alpha_static})


def two_wall_force_modesum(atom, L, d, grid=None):
    """Discrete k_z = n pi / L, continuum transverse plane (L1 -> infinity).

    The damping schedule is scaled by the distance to the nearer wall, which
    sets the radius of analyticity in eta.
    """
    geom = TwoWalls(L, d)
    grid = grid or ModeSumGrid()
    scales = NaturalScales(L, atom.alpha_static)
    dn = d / L
    z = dn + 0.5
    near = geom.wall_distance / L
    etas = tuple(near * e for e in grid.eta_schedule)
    values = []
    for eta in etas:
        k_max = grid.k_max or grid.decay / eta
        n = np.arange(int(math.ceil(k_max / math.pi)) + 1)
        kz = n * math.pi
        wz = np.full(kz.size, math.pi)
        values.append(_octant_integral(kz, wz, k_max, grid, _force_kernel(z, eta)))
    nat, err, trace = extrapolate(etas, values, floor=1e-9)
    unit = scales.force_scale
    return OracleReport("mean_force_two_walls", nat * unit,
                        mean_force_two_walls(atom, L, d).value, "N", unit, err * unit, trace,
                        {"L": L, "d": d, "alpha": atom.alpha_static})
