"""Coefficient-bound families and their majorant sums.

Each family bounds the moduli of Taylor coefficients of a function class.
Logarithmic families bound ``2|gamma_n|`` except ``LOG_CONVEX``, which bounds
``|gamma_n|`` itself and therefore carries a Bohr weight of 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from bohr_shared.errors import DomainError, UnsupportedOperationError


class MajorantFamily(str, Enum):
    """Function classes with a known coefficient bound."""
    UNIVALENT_DE_BRANGES = "univalent-de-branges"
    CONVEX_UNIVALENT = "convex-univalent"
    BOUNDED_BY_ONE = "bounded-by-one"
    LOG_S = "log-s"
    LOG_CONVEX = "log-convex"
    LOG_INVERSE = "log-inverse"
    LOG_U_LAMBDA = "log-u-lambda"


class GrowthKind(str, Enum):
    """Shape ``g(n)`` of a coefficient bound ``C * g(n)``."""
    CONSTANT = "constant"
    LINEAR = "linear"
    HARMONIC = "harmonic"
    CENTRAL_BINOMIAL = "central-binomial"


@dataclass(frozen=True)
class GrowthTag:
    """Coefficient bound ``C * g(n)`` used for tail estimates.

    ``CENTRAL_BINOMIAL`` means ``C * binom(2n, n) / n``.
    """

    kind: GrowthKind
    constant: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.kind, GrowthKind):
            raise UnsupportedOperationError(f"unknown growth tag {self.kind!r}")
        if self.constant < 0 or not math.isfinite(self.constant):
            raise DomainError(f"growth constant must be finite and non-negative, got {self.constant}")


@dataclass(frozen=True)
class MajorantModel:
    """A coefficient-bound family with its scale.

    ``scale`` is the boundary distance ``d`` for the univalent families and
    ``1 - |a_0|^2`` for ``BOUNDED_BY_ONE``; the logarithmic families ignore it.
    """

    family: MajorantFamily
    scale: float = 1.0
    lam: Optional[float] = None

    def __post_init__(self) -> None:
        if self.scale < 0 or not math.isfinite(self.scale):
            raise DomainError(f"scale must be finite and non-negative, got {self.scale}")
        if self.family is MajorantFamily.LOG_U_LAMBDA:
            if self.lam is None or not 0.0 < self.lam <= 1.0:
                raise DomainError(f"lambda must lie in (0, 1], got {self.lam}")
        elif self.lam is not None:
            raise DomainError(f"family {self.family.value} takes no lambda")

    @classmethod
    def de_branges(cls, d: float) -> "MajorantModel":
        return cls(MajorantFamily.UNIVALENT_DE_BRANGES, scale=d)

    @classmethod
    def convex(cls, d: float) -> "MajorantModel":
        return cls(MajorantFamily.CONVEX_UNIVALENT, scale=d)

    @classmethod
    def bounded(cls, a0_abs: float) -> "MajorantModel":
        """``|a_n| <= 1 - |a_0|^2`` for a self-map of the disk."""
        if not 0.0 <= a0_abs <= 1.0:
            raise DomainError(f"|a_0| must lie in [0, 1], got {a0_abs}")
        return cls(MajorantFamily.BOUNDED_BY_ONE, scale=1.0 - a0_abs * a0_abs)

    @classmethod
    def log_u(cls, lam: float) -> "MajorantModel":
        return cls(MajorantFamily.LOG_U_LAMBDA, lam=lam)


def bohr_weight(m: MajorantModel) -> float:
    """Factor turning ``sum bound(n) r^n`` into the family's Bohr sum."""
    return 2.0 if m.family is MajorantFamily.LOG_CONVEX else 1.0


def central_binomial_terms(r: float, n_max: int) -> np.ndarray:
    """``binom(2n, n) / n * r^n`` for ``n = 1 .. n_max``.

    Built from the ratio ``t_{n+1} / t_n = 2(2n+1) n r / (n+1)^2`` so no
    factorial is ever formed.
    """
    if n_max < 1:
        return np.zeros(0)
    n = np.arange(1, n_max, dtype=float)
    ratios = 2.0 * (2.0 * n + 1.0) * n * r / ((n + 1.0) ** 2)
    return 2.0 * r * np.concatenate(([1.0], np.cumprod(ratios)))


def bounds(m: MajorantModel, n_max: int) -> np.ndarray:
    """``bound(n)`` for ``n = 1 .. n_max`` as an array.

    Raises:
        UnsupportedOperationError: For ``LOG_S``, which has no pointwise bound
    """
    n = np.arange(1, n_max + 1, dtype=float)
    family = m.family
    if family is MajorantFamily.UNIVALENT_DE_BRANGES:
        return 4.0 * m.scale * n
    if family is MajorantFamily.CONVEX_UNIVALENT:
        return np.full(n_max, 2.0 * m.scale)
    if family is MajorantFamily.BOUNDED_BY_ONE:
        return np.full(n_max, m.scale)
    if family is MajorantFamily.LOG_CONVEX:
        return 1.0 / (2.0 * n)
    if family is MajorantFamily.LOG_INVERSE:
        return central_binomial_terms(1.0, n_max)
    if family is MajorantFamily.LOG_U_LAMBDA:
        return (1.0 + np.power(m.lam, n)) / n
    raise UnsupportedOperationError(
        "log-s has no pointwise coefficient bound; use majorant_sum"
    )


def bound(m: MajorantModel, n: int) -> float:
    """The family's bound on the ``n``-th coefficient modulus."""
    if n < 1:
        raise DomainError(f"coefficient index must be >= 1, got {n}")
    return float(bounds(m, n)[n - 1])


def growth_of(m: MajorantModel) -> GrowthTag:
    """Growth tag dominating ``bohr_weight(m) * bound(n)``."""
    family = m.family
    if family is MajorantFamily.UNIVALENT_DE_BRANGES:
        return GrowthTag(GrowthKind.LINEAR, 4.0 * m.scale)
    if family is MajorantFamily.CONVEX_UNIVALENT:
        return GrowthTag(GrowthKind.CONSTANT, 2.0 * m.scale)
    if family is MajorantFamily.BOUNDED_BY_ONE:
        return GrowthTag(GrowthKind.CONSTANT, m.scale)
    if family is MajorantFamily.LOG_CONVEX:
        return GrowthTag(GrowthKind.HARMONIC, 1.0)
    if family is MajorantFamily.LOG_INVERSE:
        return GrowthTag(GrowthKind.CENTRAL_BINOMIAL, 1.0)
    if family is MajorantFamily.LOG_U_LAMBDA:
        # 1 + lambda^n <= 2
        return GrowthTag(GrowthKind.HARMONIC, 2.0)
    raise UnsupportedOperationError("log-s has no pointwise coefficient bound")


def _check_radius(m: MajorantModel, r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r}")
    if m.family is MajorantFamily.LOG_INVERSE and r >= 0.25:
        raise DomainError(f"log-inverse majorant converges only for r < 1/4, got {r}")


def majorant_sum(m: MajorantModel, r: float) -> float:
    """Closed form of the weighted majorant series ``sum bound(n) r^n``.

    For ``LOG_S`` this is the Cauchy-Schwarz chain
    ``2 sqrt(log(1/(1-r))) sqrt(sum r^n / n) = 2 log(1/(1-r))``.

    Raises:
        DomainError: If ``r`` is outside ``[0, 1)``, or ``r >= 1/4`` for ``LOG_INVERSE``
    """
    _check_radius(m, r)
    family = m.family
    if family is MajorantFamily.UNIVALENT_DE_BRANGES:
        return 4.0 * m.scale * r / (1.0 - r) ** 2
    if family is MajorantFamily.CONVEX_UNIVALENT:
        return 2.0 * m.scale * r / (1.0 - r)
    if family is MajorantFamily.BOUNDED_BY_ONE:
        return m.scale * r / (1.0 - r)
    if family is MajorantFamily.LOG_S:
        return -2.0 * math.log1p(-r)
    if family is MajorantFamily.LOG_CONVEX:
        return -math.log1p(-r)
    if family is MajorantFamily.LOG_INVERSE:
        return 2.0 * math.log(2.0 / (1.0 + math.sqrt(1.0 - 4.0 * r)))
    return -math.log1p(-r) - math.log1p(-m.lam * r)


def majorant_partial_sum(m: MajorantModel, r: float, n_max: int) -> float:
    """Weighted partial sum ``sum_{n=1}^{n_max} bound(n) r^n``."""
    _check_radius(m, r)
    if m.family is MajorantFamily.LOG_INVERSE:
        terms = central_binomial_terms(r, n_max)
    else:
        terms = bounds(m, n_max) * np.power(r, np.arange(1, n_max + 1))
    return bohr_weight(m) * float(np.sum(terms))
