"""Casimir-Polder force on an atom near conducting walls: mean value,
time-averaged quantum fluctuation, and spectral oracles that check them."""
from .fluctuation import (FluctStats, MeasurementWindow, asymptotic_relative, crossover_report,
                          crossover_time, force_std_single_wall, mb_mean_speed,
                          relative_fluct_single_wall, relative_fluct_two_walls, transit_time,
                          window_attenuation)
from .mean_force import (ForceValue, SingleWall, TwoWalls, energy_single_wall,
                         mean_force_single_wall, mean_force_two_walls,
                         single_wall_limit_deviation, single_wall_limit_of_two_walls)
from .quantities import (CONSTANTS, AtomSpec, NaturalScales, far_zone_check, from_natural,
                         load_species, to_natural)

__version__ = "0.1.0"

__all__ = [
    "AtomSpec", "CONSTANTS", "FluctStats", "ForceValue", "MeasurementWindow", "NaturalScales",
    "SingleWall", "TwoWalls", "asymptotic_relative", "crossover_report", "crossover_time",
    "energy_single_wall", "far_zone_check", "force_std_single_wall", "from_natural",
    "load_species", "mb_mean_speed", "mean_force_single_wall", "mean_force_two_walls",
    "relative_fluct_single_wall", "relative_fluct_two_walls", "single_wall_limit_deviation",
    "single_wall_limit_of_two_walls", "to_natural", "transit_time", "window_attenuation",
]
