"""Randomized oracle checks of the coefficient inequalities used by the radii.

Every check compares a truncated left side with a truncated right side plus
a tail allowance taken from decay certificates. Truncated sums of moduli are
lower bounds for the full sums, so only the right side needs an allowance.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
from pydantic import Field

from bohr_shared.constants import FLOAT_SLACK
from bohr_shared.errors import DomainError
from bohr_shared.helpers import adaptive_gauss_legendre, periodic_trapezoid
from bohr_shared.models import FrozenModel

from bohr_toolkit.bohr_engine import bohr_sum
from bohr_toolkit.harness.samplers import DecayCertificate, LocallyUnivalentSample, SchwarzSample
from bohr_toolkit.radius_solvers import log_u_branch_bound
from bohr_toolkit.series_core import (
    TruncatedSeries,
    cauchy_mul,
    compose,
    differentiate,
    exp_series,
    integrate_from_zero,
)


LEMMA_RADIUS = 1.0 / 3.0
LEBEDEV_MILIN_RADIUS = 0.5

# Area integral: angular trapezoid points and agreement with the coefficient sum
AREA_THETA_POINTS = 256
AREA_IDENTITY_TOL = 1e-8


class CheckOutcome(FrozenModel):
    """Result of one inequality check on one sample."""
    check: str
    r: float
    lhs: float = Field(description="Truncated left side")
    rhs: float = Field(description="Truncated right side")
    allowance: float = Field(ge=0.0, description="Certified tail added to the right side")
    margin: float = Field(description="rhs + allowance - lhs")
    passed: bool
    details: dict[str, float] = Field(default_factory=dict)


def _outcome(check: str, r: float, lhs: float, rhs: float, allowance: float,
             extra_ok: bool = True, details: Optional[dict[str, float]] = None) -> CheckOutcome:
    margin = rhs + allowance - lhs
    slack = FLOAT_SLACK * max(1.0, abs(rhs))
    return CheckOutcome(
        check=check,
        r=r,
        lhs=lhs,
        rhs=rhs,
        allowance=allowance,
        margin=margin,
        passed=margin >= -slack and extra_ok,
        details=details or {},
    )


def _require_radius(r: float, limit: float, what: str) -> None:
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r}")
    if r > limit:
        raise DomainError(f"r={r} exceeds {limit:.12g} ({what})")


def check_lemma1(
    h: TruncatedSeries,
    phi: SchwarzSample,
    M: float,
    r: float,
    certificate: DecayCertificate,
    strict: bool = True,
) -> CheckOutcome:
    """``sum |b_n| r^n <= M sum |a_n| r^n`` for ``g = M phi h`` and ``r <= 1/3``.

    ``strict=False`` lifts the radius hypothesis for counterexample hunting.
    """
    if not M > 0.0:
        raise DomainError(f"M must be positive, got {M}")
    _require_radius(r, LEMMA_RADIUS if strict else 1.0, "product lemma needs r <= 1/3")
    g = cauchy_mul(M * phi.realization, h)
    n = g.order
    lhs = bohr_sum(g, r)
    rhs = M * bohr_sum(h.truncate(n), r)
    return _outcome("lemma1", r, lhs, rhs, M * certificate.tail(n, r))


def check_derivative_transfer(
    h: TruncatedSeries,
    phi: SchwarzSample,
    k: float,
    r: float,
    certificate: DecayCertificate,
) -> CheckOutcome:
    """``sum_{n>=1} |b_n| r^n <= k sum_{n>=1} |a_n| r^n`` when ``g' = k phi h'``, ``g(0) = 0``."""
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"k must lie in [0, 1], got {k}")
    _require_radius(r, LEMMA_RADIUS, "derivative transfer needs r <= 1/3")
    g = integrate_from_zero(k * cauchy_mul(phi.realization, differentiate(h)))
    n = min(g.order, h.order)
    lhs = bohr_sum(g.truncate(n), r, include_constant=False)
    rhs = k * bohr_sum(h.truncate(n), r, include_constant=False)
    return _outcome("derivative_transfer", r, lhs, rhs, k * certificate.tail(n, r))


def check_lebedev_milin(c: TruncatedSeries, r: float, certificate: DecayCertificate) -> CheckOutcome:
    """``sum_{n>=1} n^2 |a_n|^2 r^(2(n-1)) <= exp(sum n |c_n|^2 r^(2n))`` for ``f = int_0^z exp(c)``.

    ``n a_n`` is the coefficient of ``z^(n-1)`` in ``f' = exp(c)``, so the left side
    is the mean of ``|f'|^2`` over ``|z| = r``.

    Raises:
        DomainError: If ``c_0 != 0``, ``r > 1/2`` or ``c`` breaks its certificate
    """
    if c[0] != 0:
        raise DomainError("c must vanish at the origin")
    _require_radius(r, LEBEDEV_MILIN_RADIUS, "Lebedev-Milin check runs for r <= 1/2")
    if not certificate.admits(c):
        raise DomainError("sample rejected: coefficients exceed the decay certificate")
    f = integrate_from_zero(exp_series(c))
    r2 = r * r
    weighted = np.arange(f.order + 1) * f.abs_coeffs()
    lhs = float(np.polynomial.polynomial.polyval(r2, weighted[1:] ** 2))
    n = np.arange(c.order + 1)
    exponent = float(np.polynomial.polynomial.polyval(r2, n * c.abs_coeffs() ** 2))
    rhs = math.exp(exponent)
    allowance = rhs * math.expm1(certificate.weighted_square_tail(c.order, r))
    return _outcome("lebedev_milin", r, lhs, rhs, allowance)


def area_integral(sample: LocallyUnivalentSample, r: float) -> float:
    """``(1/pi) int_{|xi|<r} |(log f')'(xi)|^2 dA`` by trapezoid in angle, adaptive in radius."""

    def ring(radii: np.ndarray) -> np.ndarray:
        means = [
            periodic_trapezoid(
                lambda theta, R=R: np.abs(sample.log_derivative_prime(R * np.exp(1j * theta))) ** 2,
                AREA_THETA_POINTS,
            )
            for R in np.atleast_1d(radii)
        ]
        return 2.0 * np.atleast_1d(radii) * np.array(means)

    value, _ = adaptive_gauss_legendre(ring, 0.0, r, tol=0.01 * AREA_IDENTITY_TOL)
    return value


def check_area_bound(lam: float, sample: LocallyUnivalentSample, r: float) -> CheckOutcome:
    """``sum n |c_n|^2 r^(2n) <= 4 lambda^2 r^2 / (1 - r^2)`` for ``log f' = sum c_n z^n``.

    Also confirms the coefficient sum against the area integral to 1e-8.

    Raises:
        DomainError: If the sample lies outside the pre-Schwarzian family of ``lambda``
    """
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if sample.mu > lam:
        raise DomainError(f"sample with mu={sample.mu} is outside the family of lambda={lam}")
    _require_radius(r, 1.0, "area bound")
    c = sample.c
    n = np.arange(c.order + 1)
    r2 = r * r
    lhs = float(np.polynomial.polynomial.polyval(r2, n * c.abs_coeffs() ** 2))
    rhs = 4.0 * lam * lam * r2 / (1.0 - r2)
    area = area_integral(sample, r)
    identity_error = abs(area - lhs)
    identity_ok = identity_error <= AREA_IDENTITY_TOL + sample.certificate.weighted_square_tail(c.order, r)
    return _outcome(
        "area_bound", r, lhs, rhs, 0.0,
        extra_ok=identity_ok,
        details={"area_integral": area, "identity_error": identity_error},
    )


def log_u_majorant_series(lam: float, order: int) -> TruncatedSeries:
    """``-log(1-z) - log(1-lambda z) = sum (1 + lambda^n)/n z^n``."""
    n = np.arange(1, order + 1, dtype=float)
    return TruncatedSeries(np.concatenate(([0.0], (1.0 + np.power(lam, n)) / n)))


def rogosinski_weights_monotone(lam: float, r: float, n_max: int = 200) -> bool:
    """Whether ``u_n = n r^n / (1 + lambda^n)`` is non-increasing for ``n <= n_max``."""
    n = np.arange(1, n_max + 2, dtype=float)
    u = n * np.power(r, n) / (1.0 + np.power(lam, n))
    return bool(np.all(u[:-1] * (1.0 + FLOAT_SLACK) >= u[1:]))


def check_rogosinski_step(lam: float, psi: SchwarzSample, r: float) -> CheckOutcome:
    """Weighted subordination bound for ``2 sum gamma_n z^n = F(psi(z))``.

    Checks ``sum n/(1+l^n) |L_n|^2 r^n <= -log(1-r) - log(1-l r)`` and the
    downstream ``sum |L_n| r^n`` against the same closed form.
    """
    if not 0.0 < lam <= 1.0:
        raise DomainError(f"lambda must lie in (0, 1], got {lam}")
    if psi.realization[0] != 0:
        raise DomainError("inner function must fix origin")
    _require_radius(r, log_u_branch_bound(lam), "weighted subordination bound")
    order = psi.realization.order
    L = compose(log_u_majorant_series(lam, order), psi.realization)
    n = np.arange(1, L.order + 1, dtype=float)
    moduli = L.abs_coeffs()[1:]
    powers = np.power(r, n)
    lhs = float(np.sum(n / (1.0 + np.power(lam, n)) * moduli ** 2 * powers))
    downstream = float(np.sum(moduli * powers))
    rhs = -math.log1p(-r) - math.log1p(-lam * r)
    downstream_margin = rhs - downstream
    return _outcome(
        "rogosinski_step", r, lhs, rhs, 0.0,
        extra_ok=downstream_margin >= -FLOAT_SLACK * max(1.0, rhs),
        details={"downstream_lhs": downstream, "downstream_margin": downstream_margin},
    )


def check_subordination_bohr(
    f: TruncatedSeries,
    phi: SchwarzSample,
    r: float,
    certificate: DecayCertificate,
) -> CheckOutcome:
    """``sum_{n>=1} |(f o phi)_n| r^n <= sum_{n>=1} |a_n| r^n`` for ``r <= 1/3``."""
    if phi.realization[0] != 0:
        raise DomainError("inner function must fix origin")
    _require_radius(r, LEMMA_RADIUS, "subordination bound needs r <= 1/3")
    composed = compose(f, phi.realization)
    n = composed.order
    lhs = bohr_sum(composed, r, include_constant=False)
    rhs = bohr_sum(f.truncate(n), r, include_constant=False)
    return _outcome("subordination_bohr", r, lhs, rhs, certificate.tail(n, r))
