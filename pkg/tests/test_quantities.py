import json
import math

import pytest
from hypothesis import given, strategies as st

from casimir_fluct.quantities import (CONSTANTS, AtomSpec, NaturalScales, far_zone_check,
                                      from_natural, load_species, to_natural)

C = 2.99792458e8


def test_constants_positive():
    assert CONSTANTS.hbar > 0 and CONSTANTS.c == C and CONSTANTS.k_B > 0


def test_to_natural_examples():
    s = NaturalScales(1e-6)
    assert to_natural(1e-6, "length", s) == 1.0
    assert s.time_scale == pytest.approx(3.3356409519815204e-15, rel=1e-12)
    assert to_natural(1e-14, "time", s) == pytest.approx(2.99792458, rel=1e-12)
    assert to_natural(0.0, "force", s) == 0.0


def test_unsupported_dimension_named():
    with pytest.raises(ValueError, match="charge"):
        to_natural(1.0, "charge", NaturalScales(1.0))


@given(mag=st.floats(-30, 30), dim=st.sampled_from(["length", "time", "force", "energy"]),
       scale=st.floats(-12, 2))
def test_round_trip(mag, dim, scale):
    v = 10.0**mag
    s = NaturalScales(10.0**scale, alpha=2.4e-29)
    back = from_natural(to_natural(v, dim, s), dim, s)
    assert back == pytest.approx(v, rel=1e-12)


def test_force_scale_uses_alpha():
    s = NaturalScales(2.0, alpha=3.0)
    assert s.force_scale == pytest.approx(CONSTANTS.hbar * C * 3.0 / 32.0, rel=1e-15)
    assert s.energy_scale == pytest.approx(CONSTANTS.hbar * C * 3.0 / 16.0, rel=1e-15)


def test_far_zone_check():
    atom = AtomSpec(1e-30, omega0=2.5e15)
    res = far_zone_check(atom, 1e-6)
    assert res.ratio == pytest.approx(1e-6 * 2.5e15 / C, rel=1e-12)
    assert res.ratio == pytest.approx(8.339, abs=1e-3)
    assert res.status is False
    assert far_zone_check(AtomSpec(1e-30), 1e-6).label == "unknown"
    # exactly at threshold: strict inequality
    boundary = AtomSpec(1e-30, omega0=C)
    assert far_zone_check(boundary, 10.0).status is False
    assert far_zone_check(boundary, 10.5).status is True
    with pytest.raises(ValueError):
        far_zone_check(atom, 0.0)


def test_atom_validation_and_si():
    with pytest.raises(ValueError):
        AtomSpec(-1.0)
    a = AtomSpec.from_si(4 * math.pi * CONSTANTS.epsilon_0 * 2e-29)
    assert a.alpha_static == pytest.approx(2e-29, rel=1e-14)


def test_species_file(tmp_path):
    p = tmp_path / "species.json"
    p.write_text(json.dumps({
        "na": {"label": "Na", "alpha": 24.1e-30, "alpha_convention": "gaussian",
               "mass_kg": 3.818e-26, "omega0_rad_s": 3.2e15},
        "si_atom": {"alpha": 4 * math.pi * CONSTANTS.epsilon_0 * 1e-30, "alpha_convention": "si"},
    }))
    na = load_species(p, "na")
    assert na.alpha_static == 24.1e-30 and na.mass_kg == 3.818e-26 and na.label == "Na"
    assert load_species(p, "si_atom").alpha_static == pytest.approx(1e-30, rel=1e-14)
    with pytest.raises(ValueError, match="available"):
        load_species(p, "k")
    with pytest.raises(ValueError):
        load_species(p)
    single = tmp_path / "one.json"
    single.write_text(json.dumps({"label": "x", "alpha": 1e-30}))
    assert load_species(single).label == "x"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"alpha": 1.0, "alpha_convention": "cgs"}))
    with pytest.raises(ValueError, match="alpha_convention"):
        load_species(bad)
