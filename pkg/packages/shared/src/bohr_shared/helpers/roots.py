"""Bracketing bisection with a sign-change certificate."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

from bohr_shared.constants import BISECTION_TOL, MAX_BISECTION_ITERATIONS
from bohr_shared.errors import BracketError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BisectionResult:
    """Final bracket of a bisection run.

    ``f_lo`` and ``f_hi`` have opposite signs (or one is zero), so the
    bracket provably contains a root of a continuous function.
    """

    root: float
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    residual: float
    iterations: int

    @property
    def width(self) -> float:
        return self.hi - self.lo


def _sign(value: float) -> int:
    if math.isnan(value):
        raise BracketError("function returned NaN inside the bracket")
    return int(value > 0) - int(value < 0)


def bisect(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = BISECTION_TOL,
    max_iterations: int = MAX_BISECTION_ITERATIONS,
) -> BisectionResult:
    """Locate a root of ``func`` in ``[lo, hi]`` by bisection.

    Args:
        func: Continuous function with a sign change on the bracket
        lo: Left endpoint
        hi: Right endpoint
        tol: Stop once ``hi - lo <= tol``
        max_iterations: Safety cap on halvings

    Returns:
        BisectionResult with the midpoint as root and the final bracket

    Raises:
        BracketError: If the endpoints do not bracket a sign change
    """
    if not lo < hi:
        raise BracketError(f"empty bracket ({lo}, {hi})")
    if tol <= 0:
        raise BracketError(f"tolerance must be positive, got {tol}")

    f_lo = float(func(lo))
    f_hi = float(func(hi))
    s_lo = _sign(f_lo)
    s_hi = _sign(f_hi)
    if s_lo == 0:
        return BisectionResult(lo, lo, lo, f_lo, f_lo, abs(f_lo), 0)
    if s_hi == 0:
        return BisectionResult(hi, hi, hi, f_hi, f_hi, abs(f_hi), 0)
    if s_lo == s_hi:
        raise BracketError(f"no sign change on ({lo}, {hi}): f={f_lo:.6g}, {f_hi:.6g}")

    iterations = 0
    while hi - lo > tol and iterations < max_iterations:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = float(func(mid))
        s_mid = _sign(f_mid)
        iterations += 1
        if s_mid == 0:
            lo = hi = mid
            f_lo = f_hi = f_mid
            break
        if s_mid == s_lo:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    root = 0.5 * (lo + hi)
    residual = abs(float(func(root)))
    if hi - lo > tol:
        logger.warning("roots.bisect.tolerance_not_reached width=%.3g tol=%.3g", hi - lo, tol)
    logger.debug("roots.bisect.done root=%.15g iterations=%d residual=%.3g", root, iterations, residual)
    return BisectionResult(root, lo, hi, f_lo, f_hi, residual, iterations)
