"""Bohr-type sums of concrete series with certified truncation tails."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from bohr_shared.constants import DILATATION_SLACK
from bohr_shared.errors import DomainError, EvaluationError, UnsupportedOperationError
from bohr_shared.helpers import polar_grid
from bohr_shared.models import BohrCheck

from bohr_toolkit.coefficient_bounds import (
    GrowthKind,
    GrowthTag,
    MajorantModel,
    central_binomial_terms,
    growth_of,
)
from bohr_toolkit.config import settings
from bohr_toolkit.series_core import TruncatedSeries, differentiate, log_over_z


logger = logging.getLogger(__name__)

# |h'| below this on the dilatation grid counts as a zero
VANISHING_DERIVATIVE = 1e-300


def quasiconformal_k(K: float) -> float:
    """``k = (K - 1) / (K + 1)``; ``K = inf`` gives ``k = 1``."""
    if math.isnan(K) or K < 1.0:
        raise DomainError(f"K must be >= 1, got {K}")
    if math.isinf(K):
        return 1.0
    return (K - 1.0) / (K + 1.0)


def _check_r(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r}")


@dataclass(frozen=True)
class HarmonicPair:
    """Holomorphic parts of ``f = h + conj(g)`` with quasiconformality ``K``.

    Construction samples the dilatation ``g' / h'`` on a polar grid and
    rejects pairs whose modulus exceeds ``k`` there.
    """

    h: TruncatedSeries
    g: TruncatedSeries
    K: float = 1.0

    def __post_init__(self) -> None:
        k = quasiconformal_k(self.K)
        if self.g[0] != 0:
            raise DomainError("g(0) must vanish in the canonical representation")
        sup = self.sampled_dilatation()
        if sup > k + DILATATION_SLACK:
            raise DomainError(f"sampled dilatation {sup:.6g} exceeds k={k:.6g} for K={self.K}")

    @property
    def k(self) -> float:
        return quasiconformal_k(self.K)

    def dilatation(self, z: np.ndarray) -> np.ndarray:
        """``w_f = g' / h'`` at the given points."""
        h_prime = np.asarray(differentiate(self.h).evaluate(z))
        g_prime = np.asarray(differentiate(self.g).evaluate(z))
        if np.any(np.abs(h_prime) < VANISHING_DERIVATIVE):
            raise EvaluationError("h' vanishes on the dilatation grid")
        return g_prime / h_prime

    def sampled_dilatation(self, size: Optional[int] = None, radius: Optional[float] = None) -> float:
        """Largest ``|w_f|`` over a polar grid of the disk ``|z| <= radius``.

        Grid size and radius default to ``settings.dilatation_grid`` and
        ``settings.dilatation_radius``.
        """
        size = size or settings.dilatation_grid
        radius = radius or settings.dilatation_radius
        return float(np.max(np.abs(self.dilatation(polar_grid(size, radius)))))

    def is_quasiconformal(self, slack: float = DILATATION_SLACK) -> bool:
        """Sampled check of ``|w_f| <= k``."""
        return self.sampled_dilatation() <= self.k + slack


def bohr_sum(f: TruncatedSeries, r: float, include_constant: bool = True) -> float:
    """``sum |a_n| r^n`` over the truncated range.

    Raises:
        DomainError: If ``r`` is outside ``[0, 1)``
    """
    _check_r(r)
    moduli = f.abs_coeffs()
    if not include_constant:
        moduli = np.concatenate(([0.0], moduli[1:]))
    return float(np.polynomial.polynomial.polyval(r, moduli))


def bohr_sum_harmonic(p: HarmonicPair, r: float, include_constant: bool = False) -> float:
    """``sum |a_n| r^n + sum_{n>=1} |b_n| r^n`` for ``f = h + conj(g)``."""
    return bohr_sum(p.h, r, include_constant) + bohr_sum(p.g, r, include_constant=False)


def log_bohr_sum(f: TruncatedSeries, r: float) -> float:
    """``2 sum |gamma_n| r^n`` with ``gamma_n`` the logarithmic coefficients of ``f``."""
    _check_r(r)
    return bohr_sum(log_over_z(f), r, include_constant=False)


def tail_bound(model: Union[MajorantModel, GrowthTag], n: int, r: float) -> float:
    """Certified upper bound on ``sum_{k > n} C g(k) r^k``.

    Uses the exact remainders of the geometric series and of ``sum k r^k``;
    harmonic tails use ``1/k <= 1/(n+1)``, and central-binomial tails the
    term ratio bound ``4r``.

    Raises:
        DomainError: If ``r`` is outside ``[0, 1)``, or ``r >= 1/4`` for central-binomial growth
        UnsupportedOperationError: For an unknown growth tag
    """
    _check_r(r)
    if n < 0:
        raise DomainError(f"truncation order must be non-negative, got {n}")
    growth = growth_of(model) if isinstance(model, MajorantModel) else model
    if not isinstance(growth, GrowthTag):
        raise UnsupportedOperationError(f"unknown growth tag {growth!r}")
    c = growth.constant
    if c == 0.0 or r == 0.0:
        return 0.0
    lead = r ** (n + 1)
    kind = growth.kind
    if kind is GrowthKind.CONSTANT:
        return c * lead / (1.0 - r)
    if kind is GrowthKind.LINEAR:
        return c * lead * ((n + 1) - n * r) / (1.0 - r) ** 2
    if kind is GrowthKind.HARMONIC:
        return c * lead / ((n + 1) * (1.0 - r))
    if kind is GrowthKind.CENTRAL_BINOMIAL:
        if r >= 0.25:
            raise DomainError(f"central-binomial tail needs r < 1/4, got {r}")
        next_term = _central_binomial_term(n + 1, r)
        return c * next_term / (1.0 - 4.0 * r)
    raise UnsupportedOperationError(f"unknown growth tag {kind!r}")


def _central_binomial_term(n: int, r: float) -> float:
    """``binom(2n, n) / n * r^n`` through log-gamma, safe for large ``n``."""
    if n <= 64:
        return float(central_binomial_terms(r, n)[-1])
    log_term = math.lgamma(2 * n + 1) - 2.0 * math.lgamma(n + 1) - math.log(n) + n * math.log(r)
    return math.exp(log_term)


def check_bohr_inequality(r: float, sum_value: float, threshold: float, tail: float) -> BohrCheck:
    """Compare a truncated sum plus its tail against a threshold."""
    check = BohrCheck.evaluate(r=r, sum_value=sum_value, threshold=threshold, tail_bound=tail)
    logger.debug(
        "bohr.check r=%.12g sum=%.12g threshold=%.12g tail=%.3g verdict=%s",
        r, sum_value, threshold, tail, check.verdict.value,
    )
    return check


def bounded_chain_sum(K: float, a0_abs: float, r: float) -> float:
    """Majorant chain ``|a_0| + (1-|a_0|^2)((1+k) r/(1-r) + k log(1-r))``.

    Bounds the Bohr sum of a K-quasiconformal harmonic map whose holomorphic
    part is a self-map of the disk with ``|h(0)| = a0_abs``.
    """
    _check_r(r)
    if not 0.0 <= a0_abs <= 1.0:
        raise DomainError(f"|a_0| must lie in [0, 1], got {a0_abs}")
    return a0_abs + (1.0 - a0_abs * a0_abs) * _bounded_chain_factor(quasiconformal_k(K), r)


def bounded_chain_max(K: float, r: float) -> float:
    """Maximum of :func:`bounded_chain_sum` over ``|a_0|`` in ``[0, 1]``."""
    _check_r(r)
    x = _bounded_chain_factor(quasiconformal_k(K), r)
    # a + (1 - a^2) x peaks at a = 1/(2x), inside [0, 1] only when x > 1/2
    if x <= 0.5:
        return 1.0
    return x + 1.0 / (4.0 * x)


def _bounded_chain_factor(k: float, r: float) -> float:
    return (1.0 + k) * r / (1.0 - r) + k * math.log1p(-r)


def cauchy_tail_bound(scale: float, radius: float, n: int, r: float) -> float:
    """Tail of ``sum |a_k| r^k`` given the Cauchy estimate ``|a_k| <= scale * radius^-k``.

    Requires ``r < radius``; the remainder is geometric with ratio ``r / radius``.
    """
    if not 0.0 <= r < radius:
        raise DomainError(f"need 0 <= r < R, got r={r}, R={radius}")
    return tail_bound(GrowthTag(GrowthKind.CONSTANT, scale), n, r / radius)
