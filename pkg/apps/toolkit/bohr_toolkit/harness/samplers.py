"""Random Schwarz functions and coefficient series with decay certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from bohr_shared.constants import (
    BOUNDARY_SAMPLES,
    HARNESS_DECAY,
    LEBEDEV_MILIN_DECAY,
    MAX_BLASCHKE_DEGREE,
    MAX_BLASCHKE_ZERO_MODULUS,
    MAX_SCALED_POLYNOMIAL_DEGREE,
    POLYNOMIAL_SUP_MARGIN,
    SCHWARZ_SUP_RADIUS,
)
from bohr_shared.errors import DomainError, UnsupportedOperationError
from bohr_shared.helpers import circle_points

from bohr_toolkit.bohr_engine import tail_bound
from bohr_toolkit.coefficient_bounds import GrowthKind, GrowthTag
from bohr_toolkit.extremal_catalog import log_derivative_coefficients
from bohr_toolkit.series_core import TruncatedSeries, cauchy_mul


# Polynomial degrees a random series is cut to; the full order is used as is
DEGREE_LADDER = (0, 1, 2, 4, 8)


@dataclass(frozen=True)
class DecayCertificate:
    """``|a_n| <= C g(n) rho^n`` for ``n >= 1`` with growth ``g`` from a tag."""

    constant: float
    ratio: float = 1.0
    growth: GrowthKind = GrowthKind.CONSTANT

    def __post_init__(self) -> None:
        if not 0.0 < self.ratio <= 1.0:
            raise DomainError(f"decay ratio must lie in (0, 1], got {self.ratio}")
        if self.constant < 0.0:
            raise DomainError(f"decay constant must be non-negative, got {self.constant}")

    def bounds(self, order: int) -> np.ndarray:
        """Bound for ``n = 0 .. order``; the ``n = 0`` entry is unconstrained."""
        n = np.arange(order + 1, dtype=float)
        shape = {
            GrowthKind.CONSTANT: np.ones_like(n),
            GrowthKind.LINEAR: n,
            GrowthKind.HARMONIC: 1.0 / np.maximum(n, 1.0),
        }.get(self.growth)
        if shape is None:
            raise UnsupportedOperationError(f"no pointwise certificate for {self.growth.value}")
        values = self.constant * shape * np.power(self.ratio, n)
        values[0] = np.inf
        return values

    def admits(self, series: TruncatedSeries, slack: float = 1e-12) -> bool:
        return bool(np.all(series.abs_coeffs() <= self.bounds(series.order) * (1.0 + slack) + slack))

    def tail(self, n: int, r: float) -> float:
        """Bound on ``sum_{k > n} |a_k| r^k``."""
        return tail_bound(GrowthTag(self.growth, self.constant), n, self.ratio * r)

    def weighted_square_tail(self, n: int, r: float) -> float:
        """Bound on ``sum_{k > n} k |a_k|^2 r^(2k)``."""
        squared = {
            GrowthKind.CONSTANT: GrowthKind.LINEAR,
            GrowthKind.HARMONIC: GrowthKind.HARMONIC,
        }.get(self.growth)
        if squared is None:
            raise UnsupportedOperationError(f"no square tail for {self.growth.value} growth")
        rho_r = self.ratio * r
        return tail_bound(GrowthTag(squared, self.constant ** 2), n, rho_r * rho_r)


# |c_n| <= 1 for every self-map of the disk
SCHWARZ_CERTIFICATE = DecayCertificate(constant=1.0)


class SchwarzKind(str, Enum):
    """How a Schwarz function was produced."""
    BLASCHKE = "blaschke"
    SCALED_POLYNOMIAL = "scaled-polynomial"
    MONOMIAL = "monomial"


@dataclass(frozen=True)
class SchwarzSample:
    """A holomorphic self-map of the unit disk, realized as a truncated series."""

    realization: TruncatedSeries
    kind: SchwarzKind
    fixes_origin: bool
    sup_estimate: float
    description: str = ""
    certificate: DecayCertificate = field(default=SCHWARZ_CERTIFICATE)

    def __post_init__(self) -> None:
        if self.sup_estimate > 1.0 + 1e-12:
            raise DomainError(f"sampled sup {self.sup_estimate} exceeds 1")
        if self.fixes_origin and self.realization[0] != 0:
            raise DomainError("sample marked as fixing the origin has phi(0) != 0")


def random_unit_disk(rng: np.random.Generator, size: int, radius: float = 1.0) -> np.ndarray:
    """Points uniformly distributed in the disk ``|z| < radius``."""
    modulus = radius * np.sqrt(rng.random(size))
    angle = 2.0 * np.pi * rng.random(size)
    return modulus * np.exp(1j * angle)


def _blaschke_value(z: np.ndarray, zeros: np.ndarray, rotation: complex, fixes_origin: bool) -> np.ndarray:
    value = np.full(np.shape(z), rotation, dtype=np.complex128)
    for alpha in zeros:
        value = value * (z - alpha) / (1.0 - np.conj(alpha) * z)
    return value * z if fixes_origin else value


def blaschke_sample(zeros: np.ndarray, rotation: complex, order: int, fixes_origin: bool = False) -> SchwarzSample:
    """Finite Blaschke product ``rotation * prod (z - a)/(1 - conj(a) z)``, times ``z`` if asked."""
    zeros = np.asarray(zeros, dtype=np.complex128)
    if np.any(np.abs(zeros) >= 1.0):
        raise DomainError("Blaschke zeros must lie inside the unit disk")
    if abs(abs(rotation) - 1.0) > 1e-12:
        raise DomainError("Blaschke rotation must be unimodular")
    product = TruncatedSeries.constant(rotation, order)
    for alpha in zeros:
        factor = cauchy_mul(
            TruncatedSeries.from_coefficients([-alpha, 1.0], order),
            TruncatedSeries.geometric(order, np.conj(alpha)),
        )
        product = cauchy_mul(product, factor)
    if fixes_origin:
        product = product.shift_up().truncate(order)
    boundary = circle_points(BOUNDARY_SAMPLES, SCHWARZ_SUP_RADIUS)
    sup = float(np.max(np.abs(_blaschke_value(boundary, zeros, rotation, fixes_origin))))
    zeros_text = ",".join(f"{a.real:.6g}{a.imag:+.6g}j" for a in zeros)
    return SchwarzSample(
        realization=product,
        kind=SchwarzKind.BLASCHKE,
        fixes_origin=fixes_origin,
        sup_estimate=sup,
        description=f"zeros=[{zeros_text}] fixes_origin={fixes_origin}",
    )


def random_blaschke(rng: np.random.Generator, order: int, fixes_origin: bool = False) -> SchwarzSample:
    """Blaschke product of degree 1..6, zeros uniform in ``|z| < 0.95``."""
    degree = int(rng.integers(1, MAX_BLASCHKE_DEGREE + 1))
    zeros = random_unit_disk(rng, degree, MAX_BLASCHKE_ZERO_MODULUS)
    rotation = complex(np.exp(2j * np.pi * rng.random()))
    return blaschke_sample(zeros, rotation, order, fixes_origin)


def random_scaled_polynomial(rng: np.random.Generator, order: int, fixes_origin: bool = False) -> SchwarzSample:
    """Random polynomial scaled to a certified sup-norm of ``1 - margin``.

    Bernstein's inequality bounds the variation between boundary samples, so
    ``max over samples / (1 - d pi / M)`` is a true upper bound on the sup.
    """
    degree = int(rng.integers(1, min(MAX_SCALED_POLYNOMIAL_DEGREE, order) + 1))
    coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    if fixes_origin:
        coeffs[0] = 0.0
    boundary = circle_points(BOUNDARY_SAMPLES)
    sampled = float(np.max(np.abs(np.polynomial.polynomial.polyval(boundary, coeffs))))
    certified = sampled / (1.0 - degree * math.pi / BOUNDARY_SAMPLES)
    coeffs = coeffs * (1.0 - POLYNOMIAL_SUP_MARGIN) / certified
    series = TruncatedSeries.from_coefficients(coeffs, order)
    sup = float(np.max(np.abs(series.evaluate(circle_points(BOUNDARY_SAMPLES, SCHWARZ_SUP_RADIUS)))))
    return SchwarzSample(
        realization=series,
        kind=SchwarzKind.SCALED_POLYNOMIAL,
        fixes_origin=fixes_origin,
        sup_estimate=sup,
        description=f"degree={degree} fixes_origin={fixes_origin}",
    )


def random_schwarz(rng: np.random.Generator, order: int, fixes_origin: bool = False) -> SchwarzSample:
    """Blaschke product or scaled polynomial with equal probability."""
    if rng.random() < 0.5:
        return random_blaschke(rng, order, fixes_origin)
    return random_scaled_polynomial(rng, order, fixes_origin)


def schwarz_monomial(coeff: complex, power: int, order: int) -> SchwarzSample:
    """``coeff * z^power`` with ``|coeff| <= 1``."""
    if abs(coeff) > 1.0 + 1e-15:
        raise DomainError(f"|coeff| must be <= 1, got {abs(coeff)}")
    if power < 0 or power > order:
        raise DomainError(f"power must lie in [0, {order}], got {power}")
    coeffs = np.zeros(order + 1, dtype=np.complex128)
    coeffs[power] = coeff
    return SchwarzSample(
        realization=TruncatedSeries(coeffs),
        kind=SchwarzKind.MONOMIAL,
        fixes_origin=power > 0,
        sup_estimate=abs(coeff) * SCHWARZ_SUP_RADIUS ** power,
        description=f"coeff={coeff} power={power}",
    )


def random_decaying_series(
    rng: np.random.Generator,
    order: int,
    decay: float = HARNESS_DECAY,
    degree: Optional[int] = None,
) -> tuple[TruncatedSeries, DecayCertificate]:
    """Coefficients drawn in the unit polydisk and scaled by ``decay^n``.

    The degree is drawn from ``DEGREE_LADDER`` plus the full order unless given.
    """
    if degree is None:
        choices = [d for d in DEGREE_LADDER if d < order] + [order]
        degree = int(choices[int(rng.integers(len(choices)))])
    coeffs = random_unit_disk(rng, degree + 1) * np.power(decay, np.arange(degree + 1))
    return TruncatedSeries.from_coefficients(coeffs, order), DecayCertificate(1.0, decay)


def random_log_derivative(
    rng: np.random.Generator,
    order: int,
    decay: float = LEBEDEV_MILIN_DECAY,
) -> tuple[TruncatedSeries, DecayCertificate]:
    """Series ``c`` with ``c_0 = 0`` and ``|c_n| <= decay^n``."""
    series, certificate = random_decaying_series(rng, order, decay, degree=order)
    coeffs = series.coeffs.copy()
    coeffs[0] = 0.0
    return TruncatedSeries(coeffs), certificate


@dataclass(frozen=True)
class LocallyUnivalentSample:
    """Rotation ``e^{-i t} F_mu(e^{i t} z)`` of ``F_mu``; ``||P_f|| = 2 mu``."""

    mu: float
    theta: float
    c: TruncatedSeries

    @classmethod
    def build(cls, mu: float, theta: float, order: int) -> "LocallyUnivalentSample":
        """``c`` is the series of ``log f'``: ``(2 mu / n) e^{i n t}`` at odd ``n``."""
        if mu < 0.0:
            raise DomainError(f"mu must be non-negative, got {mu}")
        base = log_derivative_coefficients(mu, order).coeffs
        rotation = np.exp(1j * theta * np.arange(order + 1))
        return cls(mu=mu, theta=theta, c=TruncatedSeries(base * rotation))

    def log_derivative_prime(self, z: np.ndarray) -> np.ndarray:
        """Closed form of ``(log f')'``."""
        w = np.exp(1j * self.theta)
        return 2.0 * self.mu * w / (1.0 - (w * z) ** 2)

    @property
    def certificate(self) -> DecayCertificate:
        # |c_n| <= 2 mu / n
        return DecayCertificate(constant=2.0 * self.mu, growth=GrowthKind.HARMONIC)


def random_locally_univalent(rng: np.random.Generator, lam: float, order: int) -> LocallyUnivalentSample:
    """Random rotation of ``F_mu`` with ``mu`` uniform in ``(0, lambda]``."""
    mu = lam * (1.0 - rng.random())
    theta = 2.0 * np.pi * rng.random()
    return LocallyUnivalentSample.build(mu, theta, order)
