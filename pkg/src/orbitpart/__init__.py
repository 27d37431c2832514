"""Partition generic point sets so that one point per convex hull forms a free orbit polytope."""
from ._accel import backend
from .catalog import CatalogEntry, catalog_list, resolve
from .errors import OrbitPartError
from .groups import FiniteGroup, OrthogonalRepresentation
from .partition import OrbitPartition, assemble, verify
from .pipeline import run
from .solver import ColorClasses, SolverResult, barany_onn_solve, brute_force_solve, min_norm_point, solve_with_restarts
from .testmap import Configuration, build_testmap, required_N

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry", "ColorClasses", "Configuration", "FiniteGroup", "OrbitPartError", "OrbitPartition",
    "OrthogonalRepresentation", "SolverResult", "assemble", "backend", "barany_onn_solve", "brute_force_solve",
    "build_testmap", "catalog_list", "min_norm_point", "required_N", "resolve", "run", "solve_with_restarts", "verify",
]
