"""Cavity mode functions for a single wall and for two parallel walls.

Single wall: cube ``-L/2 < x, y < L/2``, ``0 < z < L`` (the wall at z = 0
survives the limit ``L -> inf``).  Two walls: ``-L1/2 < x, y < L1/2``,
``-L/2 < z < L/2``.  Mode functions are ``f_a = e_a * g_a`` with ``g`` the
trigonometric profile returned by the ``mode_profile_*`` functions.
Polarization sums go through :func:`polarization_sum`; an explicit basis is
only provided for orthonormality checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quantities import CONSTANTS

SQRT8 = math.sqrt(8.0)

#: Refuse to enumerate more modes than this unless told otherwise.
DEFAULT_MODE_BUDGET = 5_000_000


class ModeBudgetError(ValueError):
    def __init__(self, estimate, budget):
        super().__init__(f"about {estimate:.3g} modes requested, budget is {budget}")
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class ModeIndex:
    k: tuple
    j: int
    lmn: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.j not in (1, 2):
            raise ValueError("polarization index j must be 1 or 2")
        if len(self.k) != 3 or min(self.k) < 0:
            raise ValueError("k must be a 3-tuple with non-negative components")

    @property
    def k_norm(self):
        return math.sqrt(sum(c * c for c in self.k))

    @property
    def omega(self):
        return CONSTANTS.c * self.k_norm


@dataclass(frozen=True)
class BoxSpec:
    """Either a single-wall cube (``kind='single_wall'``, side ``L_box``) or
    a two-wall slab (``kind='two_walls'``, transverse side ``L1``, gap ``L``)."""

    kind: str
    L_box: float | None = None
    L1: float | None = None
    L: float | None = None

    def __post_init__(self):
        if self.kind == "single_wall":
            if self.L_box is None or not self.L_box > 0:
                raise ValueError("single-wall box needs L_box > 0")
        elif self.kind == "two_walls":
            if self.L1 is None or self.L is None or not (self.L1 > 0 and self.L > 0):
                raise ValueError("two-wall box needs L1 > 0 and L > 0")
        else:
            raise ValueError(f"unknown box kind {self.kind!r}")

    @classmethod
    def cube(cls, L_box):
        return cls("single_wall", L_box=L_box)

    @classmethod
    def slab(cls, L1, L):
        return cls("two_walls", L1=L1, L=L)

    @property
    def transverse(self):
        return self.L_box if self.kind == "single_wall" else self.L1

    @property
    def normal(self):
        return self.L_box if self.kind == "single_wall" else self.L

    @property
    def volume(self):
        return self.transverse**2 * self.normal

    @property
    def z_range(self):
        if self.kind == "single_wall":
            return 0.0, self.L_box
        return -self.L / 2, self.L / 2

    def steps(self):
        """Wavevector spacing (pi/Lx, pi/Ly, pi/Lz)."""
        t = math.pi / self.transverse
        return t, t, math.pi / self.normal


def _check_inside(box, r):
    r = np.asarray(r, dtype=float)
    half = box.transverse / 2
    z0, z1 = box.z_range
    tol = 1e-12 * max(box.transverse, box.normal)
    if (np.any(np.abs(r[..., 0]) > half + tol) or np.any(np.abs(r[..., 1]) > half + tol)
            or np.any(r[..., 2] < z0 - tol) or np.any(r[..., 2] > z1 + tol)):
        raise ValueError("position lies outside the cavity")
    return r


def _profile(k, r, half_t, z_shift):
    k = np.asarray(k, dtype=float)
    kx, ky, kz = k[..., 0], k[..., 1], k[..., 2]
    px = kx * (r[..., 0] + half_t)
    py = ky * (r[..., 1] + half_t)
    pz = kz * (r[..., 2] + z_shift)
    sx, cx = np.sin(px), np.cos(px)
    sy, cy = np.sin(py), np.cos(py)
    sz, cz = np.sin(pz), np.cos(pz)
    return SQRT8 * np.stack([cx * sy * sz, sx * cy * sz, sx * sy * cz], axis=-1)


def mode_profile_single_wall(k, r, box):
    if box.kind != "single_wall":
        raise ValueError("expected a single-wall box")
    r = _check_inside(box, r)
    return _profile(k, r, box.L_box / 2, 0.0)


def mode_profile_two_walls(k, r, box):
    if box.kind != "two_walls":
        raise ValueError("expected a two-wall box")
    r = _check_inside(box, r)
    return _profile(k, r, box.L1 / 2, box.L / 2)


def transverse_basis(k):
    """Two orthonormal polarization vectors perpendicular to ``k``."""
    k = np.asarray(k, dtype=float)
    n = np.linalg.norm(k)
    if n == 0:
        raise ValueError("zero wavevector has no transverse plane")
    khat = k / n
    ref = np.array([0.0, 0.0, 1.0]) if abs(khat[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(ref, khat)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(khat, e1)
    return e1, e2


def _mode_function(profile, mode, r, box, polarization):
    if polarization is None:
        polarization = transverse_basis(mode.k)[mode.j - 1]
    return np.asarray(polarization, dtype=float) * profile(mode.k, r, box)


def mode_function_single_wall(mode, r, box, polarization=None):
    return _mode_function(mode_profile_single_wall, mode, r, box, polarization)


def mode_function_two_walls(mode, r, box, polarization=None):
    return _mode_function(mode_profile_two_walls, mode, r, box, polarization)


def polarization_sum(k):
    """Transverse projector ``delta_ab - khat_a khat_b``; works on (..., 3) arrays."""
    k = np.asarray(k, dtype=float)
    n = np.linalg.norm(k, axis=-1, keepdims=True)
    if np.any(n == 0):
        raise ValueError("polarization sum undefined for a zero wavevector")
    khat = k / n
    return np.eye(3) - khat[..., :, None] * khat[..., None, :]


def polarization_diagonal(k):
    """Diagonal of :func:`polarization_sum` without forming the 3x3 blocks."""
    k = np.asarray(k, dtype=float)
    n2 = np.sum(k * k, axis=-1, keepdims=True)
    if np.any(n2 == 0):
        raise ValueError("polarization sum undefined for a zero wavevector")
    return 1.0 - k * k / n2


def intensity_sum(pdiag, kz, z):
    """Polarization-summed ``|f|^2`` at height ``z`` above a wall.

    Lateral phases are averaged (each squared lateral sine or cosine -> 1/2),
    which is the continuum limit of the lateral mode sum at the box centre.
    """
    s2 = np.sin(kz * z) ** 2
    return 2.0 * ((pdiag[..., 0] + pdiag[..., 1]) * s2 + pdiag[..., 2] * (1.0 - s2))


def intensity_sum_far(pdiag):
    """Limit of :func:`intensity_sum` far from the wall (squares -> 1/2)."""
    return pdiag[..., 0] + pdiag[..., 1] + pdiag[..., 2]


def intensity_sum_dz(pdiag, kz, z):
    return 2.0 * kz * np.sin(2.0 * kz * z) * (pdiag[..., 0] + pdiag[..., 1] - pdiag[..., 2])


def estimate_mode_count(box, k_max):
    sx, sy, sz = box.steps()
    return 2 * (math.pi / 6) * (k_max / sx) * (k_max / sy) * (k_max / sz)


def enumerate_modes(box, k_max, budget=DEFAULT_MODE_BUDGET):
    """Yield all discrete modes with ``|k| <= k_max`` ordered by (|k|, l, m, n, j).

    Triples with two or more zero indices carry an identically vanishing
    field and are skipped.
    """
    if not k_max > 0:
        raise ValueError("k_max must be positive")
    est = estimate_mode_count(box, k_max)
    if est > budget:
        raise ModeBudgetError(est, budget)
    sx, sy, sz = box.steps()
    lmax, mmax, nmax = (int(math.floor(k_max / s * (1 + 1e-12))) for s in (sx, sy, sz))
    l, m, n = np.meshgrid(np.arange(lmax + 1), np.arange(mmax + 1), np.arange(nmax + 1),
                          indexing="ij")
    l, m, n = l.ravel(), m.ravel(), n.ravel()
    k2 = (l * sx) ** 2 + (m * sy) ** 2 + (n * sz) ** 2
    keep = (k2 <= k_max**2 * (1 + 1e-12)) & ((l == 0).astype(int) + (m == 0) + (n == 0) <= 1)
    l, m, n, k2 = l[keep], m[keep], n[keep], k2[keep]
    # quantize |k|^2 so that degenerate shells compare equal despite rounding
    shell = np.rint(k2 / k_max**2 * 2.0**40).astype(np.int64)
    order = np.lexsort((n, m, l, shell))
    for i in order:
        li, mi, ni = int(l[i]), int(m[i]), int(n[i])
        k = (li * sx, mi * sy, ni * sz)
        for j in (1, 2):
            yield ModeIndex(k, j, (li, mi, ni))
