"""Minimum geodetic set solvers, structure checks and instance generators."""

from .exact import SolveBudget, SolveResult, certify, min_geodetic_blocks, min_geodetic_bruteforce
from .graph import Graph, build_graph
from .metric import interval_between, interval_closure, is_edge_geodetic, is_geodetic

__all__ = [
    "Graph",
    "SolveBudget",
    "SolveResult",
    "build_graph",
    "certify",
    "interval_between",
    "interval_closure",
    "is_edge_geodetic",
    "is_geodetic",
    "min_geodetic_blocks",
    "min_geodetic_bruteforce",
]
