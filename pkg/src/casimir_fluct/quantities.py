"""Physical constants, atom data and the dimensionless reduction.

Everything downstream works in natural units built from one length scale
``l``: lengths in ``l``, times in ``l/c``, forces in ``hbar*c*alpha/l**5``
and energies in ``hbar*c*alpha/l**4``.  Polarizabilities are Gaussian
(volume) polarizabilities, so ``hbar*c*alpha/d**5`` is a force.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from scipy import constants as _sc

UNIT_CONVENTION = "gaussian-alpha"

#: Far-zone margin: the check passes when d*omega0/c exceeds this.
FAR_ZONE_THRESHOLD = 10.0


@dataclass(frozen=True)
class Constants:
    hbar: float = _sc.hbar
    c: float = _sc.c
    k_B: float = _sc.k
    epsilon_0: float = _sc.epsilon_0

    def __post_init__(self):
        for name in ("hbar", "c", "k_B", "epsilon_0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"constant {name} must be positive")


CONSTANTS = Constants()


@dataclass(frozen=True)
class AtomSpec:
    """Static (far-zone) description of the atom.

    ``alpha_static`` is the Gaussian polarizability in m^3.  Use
    :meth:`from_si` for an SI polarizability in C m^2 / V.
    """

    alpha_static: float
    omega0: float | None = None
    label: str = ""
    mass_kg: float | None = None

    def __post_init__(self):
        if not (self.alpha_static >= 0 and math.isfinite(self.alpha_static)):
            raise ValueError("alpha_static must be a finite non-negative volume (m^3)")
        if self.omega0 is not None and not self.omega0 > 0:
            raise ValueError("omega0 must be positive when given")
        if self.mass_kg is not None and not self.mass_kg > 0:
            raise ValueError("mass_kg must be positive when given")

    @classmethod
    def from_si(cls, alpha_si, **kwargs):
        return cls(alpha_si / (4 * math.pi * CONSTANTS.epsilon_0), **kwargs)


def load_species(path, key=None):
    """Read an :class:`AtomSpec` from a JSON species file.

    The file holds either one species object or a mapping of keys to
    species objects.  A species object has ``label``, ``alpha``,
    ``alpha_convention`` (``"gaussian"`` or ``"si"``) and optional
    ``mass_kg`` and ``omega0_rad_s``.
    """
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError("species file must contain a JSON object")
    if "alpha" not in data:
        if key is None:
            if len(data) != 1:
                raise ValueError(f"species file holds {sorted(data)}; choose one with a key")
            key = next(iter(data))
        if key not in data:
            raise ValueError(f"species {key!r} not found; available: {sorted(data)}")
        data = data[key]
    return species_from_dict(data, default_label=key or "")


def species_from_dict(entry, default_label=""):
    try:
        alpha = float(entry["alpha"])
    except KeyError:
        raise ValueError("species entry needs an 'alpha' value") from None
    convention = entry.get("alpha_convention", "gaussian")
    kwargs = dict(
        label=str(entry.get("label", default_label)),
        omega0=entry.get("omega0_rad_s"),
        mass_kg=entry.get("mass_kg"),
    )
    if convention == "gaussian":
        return AtomSpec(alpha, **kwargs)
    if convention == "si":
        return AtomSpec.from_si(alpha, **kwargs)
    raise ValueError(f"alpha_convention must be 'gaussian' or 'si', got {convention!r}")


_DIMENSIONS = ("length", "time", "force", "energy")


@dataclass(frozen=True)
class NaturalScales:
    """Conversion factors for one length scale.

    ``alpha`` defaults to ``length_scale**3``, i.e. polarizability measured
    in units of the length scale cubed.
    """

    length_scale: float
    alpha: float | None = None
    constants: Constants = CONSTANTS

    def __post_init__(self):
        if not self.length_scale > 0:
            raise ValueError("length_scale must be positive")

    @property
    def time_scale(self):
        return self.length_scale / self.constants.c

    @property
    def force_scale(self):
        alpha = self.length_scale**3 if self.alpha is None else self.alpha
        return self.constants.hbar * self.constants.c * alpha / self.length_scale**5

    @property
    def energy_scale(self):
        return self.force_scale * self.length_scale

    def unit(self, dimension):
        if dimension == "length":
            return self.length_scale
        if dimension == "time":
            return self.time_scale
        if dimension == "force":
            return self.force_scale
        if dimension == "energy":
            return self.energy_scale
        raise ValueError(f"unsupported dimension {dimension!r}; expected one of {_DIMENSIONS}")


def to_natural(value, dimension, scales):
    return value / scales.unit(dimension)


def from_natural(value, dimension, scales):
    return value * scales.unit(dimension)


@dataclass(frozen=True)
class FarZoneCheck:
    """``status`` is True/False, or None when the atom has no omega0."""

    status: bool | None
    ratio: float | None
    threshold: float = FAR_ZONE_THRESHOLD

    @property
    def label(self):
        return "unknown" if self.status is None else str(self.status).lower()


def far_zone_check(atom, d, threshold=FAR_ZONE_THRESHOLD):
    if not d > 0:
        raise ValueError("distance must be positive")
    if atom.omega0 is None:
        return FarZoneCheck(None, None, threshold)
    ratio = d * atom.omega0 / CONSTANTS.c
    return FarZoneCheck(ratio > threshold, ratio, threshold)
