"""Hardness gadget generators: 3-SAT to interval graphs, vertex cover to partial grids."""

from .sat_interval import CnfFormula, IntervalInstance, ReductionError, parse_dimacs, sat_to_intervals, sat_witness_geodetic
from .vc_grid import F1Graph, PRESETS, RotationSystem, rotation_from_coordinates, vc_to_partial_grid, vc_witness_geodetic

__all__ = [
    "CnfFormula",
    "F1Graph",
    "IntervalInstance",
    "PRESETS",
    "ReductionError",
    "RotationSystem",
    "parse_dimacs",
    "rotation_from_coordinates",
    "sat_to_intervals",
    "sat_witness_geodetic",
    "vc_to_partial_grid",
    "vc_witness_geodetic",
]
