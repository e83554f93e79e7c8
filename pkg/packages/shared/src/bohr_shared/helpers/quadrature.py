"""Adaptive Gauss-Legendre quadrature and periodic trapezoid sums."""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import lru_cache

import numpy as np

from bohr_shared.constants import GAUSS_LEGENDRE_NODES, MAX_QUADRATURE_DEPTH, QUADRATURE_TOL


logger = logging.getLogger(__name__)

VectorFunction = Callable[[np.ndarray], np.ndarray]

# Per-panel tolerance never drops below tol / MIN_TOL_SHARE, so endpoint
# refinement terminates at a depth set by the singularity, not by the halving.
MIN_TOL_SHARE = 64


@lru_cache(maxsize=8)
def _legendre_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(func: VectorFunction, a: float, b: float, nodes: int = GAUSS_LEGENDRE_NODES) -> float:
    """Fixed-order Gauss-Legendre rule on one panel."""
    x, w = _legendre_rule(nodes)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return float(half * np.dot(w, func(mid + half * x)))


def adaptive_gauss_legendre(
    func: VectorFunction,
    a: float,
    b: float,
    tol: float = QUADRATURE_TOL,
    nodes: int = GAUSS_LEGENDRE_NODES,
    max_depth: int = MAX_QUADRATURE_DEPTH,
) -> tuple[float, float]:
    """Integrate a vectorized function by panel bisection.

    A panel is accepted once its single-rule value and the sum over its two
    halves agree to the panel's share of ``tol``. Panels touching an endpoint
    singularity of the derivative keep splitting there until they agree.

    Args:
        func: Function accepting and returning numpy arrays
        a: Lower limit
        b: Upper limit
        tol: Absolute error target
        nodes: Gauss-Legendre nodes per panel
        max_depth: Maximum number of halvings of any panel

    Returns:
        Tuple of (integral, accumulated error estimate)
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = adaptive_gauss_legendre(func, b, a, tol, nodes, max_depth)
        return -value, error

    total = 0.0
    error = 0.0
    # explicit stack keeps deep endpoint refinement off the Python call stack
    stack = [(a, b, gauss_legendre(func, a, b, nodes), tol, 0)]
    panels = 0
    while stack:
        lo, hi, whole, panel_tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = gauss_legendre(func, lo, mid, nodes)
        right = gauss_legendre(func, mid, hi, nodes)
        diff = abs(left + right - whole)
        if diff <= panel_tol or depth >= max_depth:
            if depth >= max_depth and diff > panel_tol:
                logger.warning("quadrature.max_depth panel=(%.6g, %.6g) diff=%.3g", lo, hi, diff)
            total += left + right
            error += diff
            panels += 1
            continue
        child_tol = max(0.5 * panel_tol, tol / MIN_TOL_SHARE)
        stack.append((mid, hi, right, child_tol, depth + 1))
        stack.append((lo, mid, left, child_tol, depth + 1))

    logger.debug("quadrature.done a=%.6g b=%.6g panels=%d error=%.3g", a, b, panels, error)
    return total, error


def periodic_trapezoid(func: VectorFunction, points: int) -> float:
    """Mean of a 2*pi-periodic function over ``points`` equispaced angles."""
    theta = 2.0 * np.pi * np.arange(points) / points
    return float(np.mean(func(theta)))
