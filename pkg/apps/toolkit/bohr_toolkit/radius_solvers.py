"""Bohr radii: closed forms, certified bisection and the lambda_0 threshold."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from bohr_shared.errors import DomainError, EvaluationError
from bohr_shared.helpers import adaptive_gauss_legendre, bisect
from bohr_shared.models import (
    FAMILY_PARAMETERS,
    RadiusFamily,
    RadiusMethod,
    RadiusResult,
    SweepRow,
    SweepSpec,
)

from bohr_toolkit.bohr_engine import quasiconformal_k
from bohr_toolkit.config import settings


logger = logging.getLogger(__name__)

E = math.e

# K -> infinity limits of the harmonic univalent and convex radii
QC_UNIVALENT_LIMIT = 5.0 - 2.0 * math.sqrt(6.0)
QC_CONVEX_LIMIT = 0.2

# Right end of the locally univalent bracket
LOC_UNIVALENT_UPPER = 1.0 - 1e-9

SQRT_ZETA2_MINUS_ONE = math.sqrt(math.pi ** 2 / 6.0 - 1.0)

# Quintic whose root in (0, 1) separates the two branches of the log-U radius,
# coefficients in increasing degree
QUINTIC_COEFFS = (
    2.0 - 4.0 / E,
    5.0 - 8.0 / E,
    -4.0 / E,
    -2.0,
    -2.0,
    1.0,
)


def _closed_form(value: float, residual: float) -> RadiusResult:
    return RadiusResult(
        value=value,
        bracket=(value, value),
        residual=abs(residual),
        method=RadiusMethod.CLOSED_FORM,
        tol=0.0,
    )


def _bisection_result(
    name: str,
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Optional[float],
    method: RadiusMethod = RadiusMethod.BISECTION,
) -> RadiusResult:
    tol = tol or settings.bisection_tol
    found = bisect(func, lo, hi, tol=tol)
    logger.info(
        "radius.bisection.done family=%s value=%.12g iterations=%d residual=%.3g",
        name, found.root, found.iterations, found.residual,
    )
    return RadiusResult(
        value=found.root,
        bracket=(found.lo, found.hi),
        residual=found.residual,
        method=method,
        tol=tol,
        endpoint_values=(found.f_lo, found.f_hi),
        iterations=found.iterations,
    )


# -- K-quasiconformal harmonic mappings ----------------------------------------


def radius_qc_univalent(K: float) -> RadiusResult:
    """Radius for univalent holomorphic part.

    Smaller root of ``r^2 - (6 + 4k) r + 1 = 0``, written as
    ``1 / ((3+2k) + sqrt((3+2k)^2 - 1))`` to avoid cancellation at large K.
    """
    k = quasiconformal_k(K)
    b = 3.0 + 2.0 * k
    value = 1.0 / (b + math.sqrt(b * b - 1.0))
    residual = value * value - 2.0 * b * value + 1.0
    return _closed_form(value, residual)


def radius_qc_convex(K: float) -> RadiusResult:
    """Radius for convex holomorphic part, ``(K+1)/(5K+1) = 1/(3+2k)``."""
    k = quasiconformal_k(K)
    value = 1.0 / (3.0 + 2.0 * k)
    residual = 2.0 * (1.0 + k) * value / (1.0 - value) - 1.0
    return _closed_form(value, residual)


def psi_qc_bounded(K: float, r: float) -> float:
    """``2(1+k) r/(1-r) + 2k log(1-r) - 1``, increasing on ``(0, 1)``."""
    k = quasiconformal_k(K)
    return 2.0 * (1.0 + k) * r / (1.0 - r) + 2.0 * k * math.log1p(-r) - 1.0


def radius_qc_bounded(K: float, tol: Optional[float] = None) -> RadiusResult:
    """Radius for a holomorphic part bounded by one.

    ``K = 1`` is the classical Bohr radius 1/3. Otherwise the root of
    :func:`psi_qc_bounded` lies in ``(0, 1/3)``.
    """
    k = quasiconformal_k(K)
    if k == 0.0:
        return _closed_form(1.0 / 3.0, psi_qc_bounded(1.0, 1.0 / 3.0))
    return _bisection_result("qc-bounded", lambda r: psi_qc_bounded(K, r), 0.0, 1.0 / 3.0, tol)


def radius_qc_bounded_limit(tol: Optional[float] = None) -> RadiusResult:
    """K -> infinity root of ``4r/(1-r) + 2 log(1-r) = 1``."""
    return radius_qc_bounded(math.inf, tol)


# -- uniformly locally univalent functions ---------------------------------------


def F_lambda(lam: float, x: float, tol: Optional[float] = None) -> float:
    """``F_lambda(x) = int_0^x ((1+t)/(1-t))^lambda dt`` on ``[-1, 1)``.

    Negative arguments use ``u = -t``, giving the bounded integrand
    ``((1-u)/(1+u))^lambda`` on ``[0, |x|]``; ``x = -1`` is the improper endpoint.
    ``tol`` defaults to ``settings.quadrature_tol``.

    Raises:
        DomainError: If ``lambda <= 0`` or ``x`` is outside ``[-1, 1)``
    """
    return _F_lambda(float(lam), float(x), tol or settings.quadrature_tol)


@lru_cache(maxsize=256)
def _F_lambda(lam: float, x: float, tol: float) -> float:
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if not -1.0 <= x < 1.0:
        raise DomainError(f"x must lie in [-1, 1), got {x}")
    if x == 0.0:
        return 0.0
    if x < 0.0:
        value, error = adaptive_gauss_legendre(
            lambda u: np.power((1.0 - u) / (1.0 + u), lam), 0.0, -x, tol=tol
        )
        value = -value
    else:
        value, error = adaptive_gauss_legendre(
            lambda t: np.power((1.0 + t) / (1.0 - t), lam), 0.0, x, tol=tol
        )
    logger.debug("radius.F_lambda lambda=%.12g x=%.12g value=%.15g error=%.3g", lam, x, value, error)
    return value


def phi_locally_univalent(lam: float, r: float) -> float:
    """``r + r sqrt(exp(4 l^2 r^2/(1-r^2)) - 1) sqrt(pi^2/6 - 1) + F_lambda(-1)``.

    Increasing on ``(0, 1)``; overflow of the exponential reads as ``+inf``.
    """
    exponent = 4.0 * lam * lam * r * r / (1.0 - r * r)
    try:
        grown = math.expm1(exponent)
    except OverflowError:
        return math.inf
    return r + r * math.sqrt(grown) * SQRT_ZETA2_MINUS_ONE + F_lambda(lam, -1.0)


def radius_locally_univalent(lam: float, tol: Optional[float] = None) -> RadiusResult:
    """Bohr radius for ``||P_f|| <= 2 lambda``, threshold ``-F_lambda(-1)``."""
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam}")
    return _bisection_result(
        "loc-univalent",
        lambda r: phi_locally_univalent(lam, r),
        0.0,
        LOC_UNIVALENT_UPPER,
        tol,
        method=RadiusMethod.QUADRATURE_BISECTION,
    )


# -- logarithmic coefficients ----------------------------------------------------


def radius_log_S() -> RadiusResult:
    """``1 - 1/sqrt(e)`` for univalent functions."""
    value = -math.expm1(-0.5)
    return _closed_form(value, -2.0 * math.log1p(-value) - 1.0)


def radius_log_inverse() -> RadiusResult:
    """``(sqrt(e) - 1)/e`` for inverses of univalent functions."""
    value = (math.sqrt(E) - 1.0) / E
    closed = 2.0 * math.log(2.0 / (1.0 + math.sqrt(1.0 - 4.0 * value)))
    return _closed_form(value, closed - 1.0)


def radius_log_convex() -> RadiusResult:
    """``1 - 1/e`` for convex functions."""
    value = -math.expm1(-1.0)
    return _closed_form(value, -math.log1p(-value) - 1.0)


def quintic_g(lam: float) -> float:
    """``l^5 - 2l^4 - 2l^3 - (4/e) l^2 + (5 - 8/e) l + (2 - 4/e)``."""
    result = 0.0
    for coeff in reversed(QUINTIC_COEFFS):
        result = result * lam + coeff
    return result


def lambda0(tol: Optional[float] = None) -> RadiusResult:
    """Unique root of :func:`quintic_g` in ``(0, 1)``.

    Bisection gives the certified value; the companion-matrix roots confirm
    there is exactly one real root in the interval.

    Raises:
        EvaluationError: If the interval does not hold exactly one real root
    """
    return _lambda0(tol or settings.bisection_tol)


@lru_cache(maxsize=8)
def _lambda0(tol: float) -> RadiusResult:
    roots = Polynomial(QUINTIC_COEFFS).roots()
    inside = [
        float(root.real) for root in roots
        if abs(root.imag) < 1e-9 and 0.0 < root.real < 1.0
    ]
    if len(inside) != 1:
        raise EvaluationError(f"expected one quintic root in (0, 1), found {len(inside)}")
    result = _bisection_result("lambda0", quintic_g, 0.0, 1.0, tol)
    if abs(result.value - inside[0]) > 1e-8:
        logger.warning("radius.lambda0.mismatch bisection=%.15g roots=%.15g", result.value, inside[0])
    return result


def log_u_branch_bound(lam: float) -> float:
    """``(1 + l^2) / (2(1 + l))``, the range where the subordination chain applies."""
    return (1.0 + lam * lam) / (2.0 * (1.0 + lam))


def radius_log_U(lam: float) -> RadiusResult:
    """Bohr radius for the logarithmic coefficients of ``U(lambda)``.

    For ``lambda >= lambda_0`` it is the smaller root of
    ``r^2 - (1 + 1/l) r + (1/l)(1 - 1/e) = 0``; below ``lambda_0`` it is
    :func:`log_u_branch_bound`.
    """
    if not 0.0 < lam <= 1.0:
        raise DomainError(f"lambda must lie in (0, 1], got {lam}")
    if lam < lambda0().value:
        return _closed_form(log_u_branch_bound(lam), 0.0)
    c = 1.0 - 1.0 / E
    b = 1.0 + lam
    value = 2.0 * c / (b + math.sqrt(b * b - 4.0 * lam * c))
    residual = value * value - (1.0 + 1.0 / lam) * value + c / lam
    return _closed_form(value, residual)


# -- dispatch -----------------------------------------------------------------------


def solve_radius(family: RadiusFamily, param: Optional[float] = None,
                 tol: Optional[float] = None) -> RadiusResult:
    """Radius of ``family``; ``param`` is K or lambda as the family requires.

    Raises:
        DomainError: If ``param`` is missing for a parameterized family
    """
    family = RadiusFamily(family)
    if family in FAMILY_PARAMETERS and param is None:
        name = FAMILY_PARAMETERS[family][0]
        raise DomainError(f"family {family.value} needs --{name}")
    if family is RadiusFamily.QC_UNIVALENT:
        return radius_qc_univalent(param)
    if family is RadiusFamily.QC_CONVEX:
        return radius_qc_convex(param)
    if family is RadiusFamily.QC_BOUNDED:
        return radius_qc_bounded(param, tol)
    if family is RadiusFamily.LOC_UNIVALENT:
        return radius_locally_univalent(param, tol)
    if family is RadiusFamily.LOG_U:
        return radius_log_U(param)
    if family is RadiusFamily.LOG_S:
        return radius_log_S()
    if family is RadiusFamily.LOG_INVERSE:
        return radius_log_inverse()
    return radius_log_convex()


def sweep(spec: SweepSpec, tol: Optional[float] = None) -> list[SweepRow]:
    """Radius at every parameter value of ``spec``, in input order."""
    rows = []
    for value in spec.values():
        result = solve_radius(spec.family, value, tol)
        rows.append(SweepRow(param=value, r0=result.value, residual=result.residual))
    logger.info("radius.sweep.done family=%s rows=%d", spec.family.value, len(rows))
    return rows
