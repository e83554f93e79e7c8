"""Shared numeric helpers for the Bohr radius toolkit."""

from bohr_shared.helpers.roots import (
    BisectionResult,
    bisect,
)
from bohr_shared.helpers.quadrature import (
    adaptive_gauss_legendre,
    gauss_legendre,
    periodic_trapezoid,
)
from bohr_shared.helpers.grids import (
    circle_points,
    polar_grid,
)
from bohr_shared.helpers.formatting import (
    debug_lines,
    format_number,
    parse_debug_lines,
)

__all__ = [
    # Roots
    "BisectionResult",
    "bisect",
    # Quadrature
    "adaptive_gauss_legendre",
    "gauss_legendre",
    "periodic_trapezoid",
    # Grids
    "circle_points",
    "polar_grid",
    # Formatting
    "debug_lines",
    "format_number",
    "parse_debug_lines",
]
