"""Sample grids in the unit disk."""

from __future__ import annotations

import numpy as np


def polar_grid(size: int, radius: float) -> np.ndarray:
    """Return a ``size`` x ``size`` polar grid of complex points.

    Radii run over ``radius * (i + 1) / size`` for ``i < size`` so the outer
    ring sits exactly at ``radius``; angles are ``2*pi*j / size`` and include
    the positive real axis.
    """
    radii = radius * np.arange(1, size + 1) / size
    angles = 2.0 * np.pi * np.arange(size) / size
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def circle_points(count: int, radius: float = 1.0) -> np.ndarray:
    """Equispaced points on the circle ``|z| = radius``."""
    return radius * np.exp(2j * np.pi * np.arange(count) / count)
