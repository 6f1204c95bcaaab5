"""
The `renewbound.boundary` package computes the free boundary that separates the waiting region
from the installation region: the constant boundary without price impact, the terminal condition,
and the curved boundary obtained by integrating the boundary ODE.
"""

from ._model import FreeBoundary, BoundaryKind, BracketInterval, boundary_inverse
from ._solve import bracket, solve_constant_boundary, solve_terminal, solve_terminal_bracketed, BracketException
from ._integrate import integrate_free_boundary, constant_free_boundary, capacity_grid, SCHEMES
from ._io import write_free_boundary, read_free_boundary, write_boundary_csv, boundary_metadata, BOUNDARY_CSV, BOUNDARY_JSON

__all__ = [
    "FreeBoundary",
    "BoundaryKind",
    "BracketInterval",
    "boundary_inverse",
    "bracket",
    "solve_constant_boundary",
    "solve_terminal",
    "solve_terminal_bracketed",
    "BracketException",
    "integrate_free_boundary",
    "constant_free_boundary",
    "capacity_grid",
    "SCHEMES",
    "write_free_boundary",
    "read_free_boundary",
    "write_boundary_csv",
    "boundary_metadata",
    "BOUNDARY_CSV",
    "BOUNDARY_JSON",
]
