"""Windowed force variance from Wick contractions over mode pairs.

With free-field evolution, the time-averaged force operator is a quadratic
form in ``A_k = a_k - a_k^dagger`` whose pair terms pick up the Fourier
transform of the response function once per time integral.  For the
Lorentzian that is ``exp(-omega T)`` per integral, hence
``exp(-2 (omega_k + omega_k') T)`` on a pair in the variance.  Only the
``a a`` / ``a^dag a^dag`` contraction survives after removing the squared
mean, which gives

    Var = 2 (hbar c alpha / V)^2 pi^2 sum_{k,k'} k k' W(k, k')^2 G(k, k')^2

with ``G`` the d-derivative of the mode bilinear.  In the continuum, with
lateral phases averaged and polarizations summed through the projector,

    Var = (8 (hbar c alpha)^2 / pi^4) int d^3k d^3k' k k' W^2
          sum_a P_aa(k) P_aa(k') D_a(k, k')^2

where D_x = D_y = d/dd[sin(k_z d) sin(k'_z d)], D_z = d/dd[cos(k_z d) cos(k'_z d)].
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .. import _kernels
from ..cavity_modes import polarization_diagonal
from ..fluctuation import MeasurementWindow, force_std_single_wall, window_attenuation
from ..mean_force import SingleWall
from ..quantities import CONSTANTS, NaturalScales
from .grids import ModeSumGrid, OracleConvergenceError, continuum_kz, octant_nodes
from .report import OracleReport

VARIANCE_PREFACTOR = 8.0 / math.pi**4

#: Decay exponent at which the pair weights are truncated.
VARIANCE_DECAY = 40.0

#: Default pair-quadrature grid; the sum is quadratic in the node count.
VARIANCE_GRID = ModeSumGrid(n_radial=12, n_angular=32)


def variance_nodes(x, grid):
    """Octant nodes for ``x = cT/d`` with the pair-attenuation folded into the weights."""
    win = MeasurementWindow(x)
    k_max = grid.k_max or VARIANCE_DECAY / (2.0 * x)
    kz, wz = continuum_kz(k_max, math.pi, grid)
    nodes = octant_nodes(kz, wz, k_max, grid)
    # weight * |k| * window^2: one attenuation factor per response-function integral
    w = nodes.weight * nodes.k * window_attenuation(win, nodes.k) ** 2
    return nodes, w


def variance_natural_quadrature(x, grid, kernel=None):
    """Variance in units of (hbar c alpha / d^5)^2 by the full pair sum."""
    kernel = kernel or _kernels.variance_pair_sum
    nodes, w = variance_nodes(x, grid)
    p = nodes.pdiag
    s = kernel(w, np.ascontiguousarray(p[:, 0]), np.ascontiguousarray(p[:, 1]),
               np.ascontiguousarray(p[:, 2]), np.ascontiguousarray(nodes.kz), 1.0)
    return VARIANCE_PREFACTOR * s, len(nodes)


GAMMA_SHAPE = 5.0


def _sample_wavevectors(rng, n, rate):
    k = rng.gamma(GAMMA_SHAPE, 1.0 / rate, size=n)
    u = rng.random(n)
    phi = rng.random(n) * (math.pi / 2)
    st = np.sqrt(1.0 - u * u)
    kvec = np.stack([k * st * np.cos(phi), k * st * np.sin(phi), k * u], axis=-1)
    # d^3k = k^2 dk du dphi; density in (k, u, phi) is gamma(k) * 2/pi
    log_gamma = ((GAMMA_SHAPE - 1) * np.log(k) - rate * k + GAMMA_SHAPE * math.log(rate)
                 - math.lgamma(GAMMA_SHAPE))
    return kvec, k, np.exp(-log_gamma) * (math.pi / 2) * k * k


def variance_natural_mc(x, grid, kernel=None):
    """Seeded Monte Carlo estimate of the same 6-D integral.

    Returns (variance, standard error, samples).  Blocks are drawn and
    reduced in a fixed order, so identical seeds give identical results.
    """
    kernel = kernel or _kernels.variance_pair_terms
    n = grid.mc_samples
    rng = np.random.default_rng(grid.seed)
    win = MeasurementWindow(x)
    rate = 2.0 * x
    sums, sq = [], []
    done = 0
    while done < n:
        m = min(grid.mc_block, n - done)
        k1, kn1, j1 = _sample_wavevectors(rng, m, rate)
        k2, kn2, j2 = _sample_wavevectors(rng, m, rate)
        p1, p2 = polarization_diagonal(k1), polarization_diagonal(k2)
        g = (j1 * kn1 * window_attenuation(win, kn1) ** 2
             * j2 * kn2 * window_attenuation(win, kn2) ** 2)
        terms = g * kernel(p1[:, 0].copy(), p1[:, 1].copy(), p1[:, 2].copy(), k1[:, 2].copy(),
                           p2[:, 0].copy(), p2[:, 1].copy(), p2[:, 2].copy(), k2[:, 2].copy(),
                           1.0)
        sums.append(math.fsum(terms))
        sq.append(math.fsum(terms * terms))
        done += m
    mean = math.fsum(sums) / n
    var = max(math.fsum(sq) / n - mean * mean, 0.0)
    stderr = math.sqrt(var / (n - 1))
    return VARIANCE_PREFACTOR * mean, VARIANCE_PREFACTOR * stderr, n


def variance_modesum(atom, d, window, grid=None, tolerance=0.02):
    """Compare sqrt(variance) with the closed-form std.

    Uses the full pair quadrature unless ``grid.mc_samples`` is set.  The
    trace records one refinement level (coarse grid, then ``grid``).
    """
    SingleWall(d)
    grid = grid or VARIANCE_GRID
    x = CONSTANTS.c * window.T / d
    scales = NaturalScales(d, atom.alpha_static)
    unit = scales.force_scale
    if grid.mc_samples:
        var, err, n = variance_natural_mc(x, grid)
        std_nat = math.sqrt(var)
        rel_se = 0.5 * err / var
        trace = [{"samples": n, "std_natural": std_nat, "rel_stderr": rel_se}]
        if rel_se > tolerance / 2:
            raise OracleConvergenceError(
                f"Monte Carlo standard error {rel_se:.3g} exceeds half the tolerance; "
                "increase mc_samples", trace)
        uncertainty = rel_se * std_nat
    else:
        coarse = replace(grid, n_radial=max(8, grid.n_radial // 2),
                         n_angular=max(8, grid.n_angular // 2))
        trace = []
        for level, g in (("coarse", coarse), ("grid", grid)):
            var, n = variance_natural_quadrature(x, g)
            trace.append({"level": level, "nodes": n, "std_natural": math.sqrt(var)})
        std_nat = trace[-1]["std_natural"]
        uncertainty = abs(std_nat - trace[0]["std_natural"])
    closed = force_std_single_wall(atom, d, window)
    return OracleReport("force_std_single_wall", std_nat * unit, closed, "N", unit,
                        uncertainty * unit, trace,
                        {"d": d, "T": window.T, "x": x, "alpha": atom.alpha_static,
                         "method": "monte_carlo" if grid.mc_samples else "pair_quadrature"})
