"""Quadrature grids over the positive wavevector octant and eta -> 0 extrapolation."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..cavity_modes import polarization_diagonal


class OracleConvergenceError(RuntimeError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


@dataclass(frozen=True)
class ModeSumGrid:
    """Discretization of the oracle integrals, in natural units of the geometry.

    Lengths are measured in the characteristic length (atom-wall distance, or
    gap for two walls); ``eta_schedule`` holds Abel damping lengths in units
    of the distance to the nearest wall.

    n_radial    Gauss nodes per oscillation period along k_z.
    n_angular   Gauss nodes along the transverse axis (k - k_z), 8 per panel.
    n_azimuth   Gauss nodes in the azimuth; 2 already integrates the
                projector-weighted integrands exactly.
    k_max       cutoff on |k_z| and k - k_z; None picks ``decay/eta`` (mean
                quantities) or ``decay/(2 cT)`` (variance).
    """

    k_max: float | None = None
    n_radial: int = 16
    n_angular: int = 128
    n_azimuth: int = 2
    eta_schedule: tuple = (0.4, 0.3, 0.2, 0.1, 0.05)
    decay: float = 45.0
    min_panels: int = 4
    mc_samples: int | None = None
    seed: int = 0
    mc_block: int = 1 << 18

    def __post_init__(self):
        if self.k_max is not None and not self.k_max > 0:
            raise ValueError("k_max must be positive")
        if self.n_radial < 8 or self.n_angular < 8:
            raise ValueError("node counts must be at least 8")
        if self.n_azimuth < 1:
            raise ValueError("n_azimuth must be at least 1")
        eta = tuple(float(e) for e in self.eta_schedule)
        if len(eta) < 2 or any(e <= 0 for e in eta) or any(b >= a for a, b in zip(eta, eta[1:])):
            raise ValueError("eta_schedule must be positive and strictly decreasing")
        object.__setattr__(self, "eta_schedule", eta)
        if self.mc_samples is not None and self.mc_samples < 2:
            raise ValueError("mc_samples must be at least 2")

    def refined(self, factor=2):
        """Same grid with ``factor`` times more nodes along every axis."""
        return replace(self, n_radial=self.n_radial * factor, n_angular=self.n_angular * factor)


def gauss_panels(a, b, panels, order):
    x, w = leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    return (half * x + 0.5 * (hi + lo)).ravel(), (half * w).ravel()


@dataclass
class OctantNodes:
    """Flat arrays of wavevector nodes with d^3k quadrature weights."""

    kvec: np.ndarray
    k: np.ndarray
    weight: np.ndarray
    pdiag: np.ndarray

    @property
    def kz(self):
        return self.kvec[:, 2]

    def __len__(self):
        return self.k.size


def octant_nodes(kz_nodes, kz_weights, t_max, grid):
    """Tensor grid in (k_z, t = |k| - k_z, phi) over the positive octant.

    With ``q`` the transverse magnitude, ``d^3k = dk_z q dq dphi`` and
    ``q dq = |k| d|k|``, so the weight carries a factor ``|k|``.
    ``kz_nodes`` may be a continuum rule or a discrete sum (weights pi/L).
    """
    t, wt = gauss_panels(0.0, t_max, max(1, math.ceil(grid.n_angular / 8)), 8)
    ph, wp = gauss_panels(0.0, math.pi / 2, 1, grid.n_azimuth)
    KZ, TT, PH = np.meshgrid(kz_nodes, t, ph, indexing="ij")
    W = (kz_weights[:, None, None] * wt[None, :, None] * wp[None, None, :])
    k = KZ + TT
    q = np.sqrt(TT * (2.0 * KZ + TT))
    kvec = np.stack([q * np.cos(PH), q * np.sin(PH), KZ], axis=-1).reshape(-1, 3)
    k = k.ravel()
    keep = k > 0
    kvec, k, W = kvec[keep], k[keep], (W.ravel() * k)[keep]
    return OctantNodes(kvec, k, W, polarization_diagonal(kvec))


def continuum_kz(k_max, period, grid):
    panels = max(grid.min_panels, math.ceil(k_max / period))
    return gauss_panels(0.0, k_max, panels, grid.n_radial)


def neville_to_zero(h, y):
    """Polynomial extrapolation of y(h) to h = 0; returns the diagonal of the tableau."""
    h = np.asarray(h, dtype=float)
    col = np.asarray(y, dtype=float)
    diag = [col[-1]]
    for m in range(1, len(h)):
        col = (h[m:] * col[:-1] - h[:-m] * col[1:]) / (h[m:] - h[:-m])
        diag.append(col[-1])
    return diag


def extrapolate(etas, values, floor=0.0):
    """eta -> 0 limit with a convergence check.

    Successive tableau corrections must shrink (corrections below ``floor``
    count as converged); otherwise the schedule is not resolving the
    analytic dependence on eta.
    """
    diag = neville_to_zero(etas, values)
    corr = np.abs(np.diff(diag))
    trace = [{"eta": float(e), "value": float(v)} for e, v in zip(etas, values)]
    trace += [{"order": m + 1, "extrapolated": float(v)} for m, v in enumerate(diag[1:])]
    live = np.maximum(corr, floor)
    if np.any((np.diff(live) >= 0) & (live[1:] > floor)):
        raise OracleConvergenceError("eta extrapolation is not converging", trace)
    return float(diag[-1]), float(corr[-1]), trace
