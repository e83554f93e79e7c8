"""Extremal functions, their boundary distances, sharpness and membership grid samples."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

import numpy as np

from bohr_shared.constants import FLOAT_SLACK, U_SLACK
from bohr_shared.errors import DomainError, EvaluationError, UnsupportedOperationError
from bohr_shared.helpers import polar_grid
from bohr_shared.models import BohrCheck, HoldsReport, SharpnessReport

from bohr_toolkit.bohr_engine import (
    HarmonicPair,
    bohr_sum,
    bohr_sum_harmonic,
    bounded_chain_max,
    cauchy_tail_bound,
    check_bohr_inequality,
    quasiconformal_k,
    tail_bound,
)
from bohr_toolkit.coefficient_bounds import GrowthKind, GrowthTag
from bohr_toolkit.config import Settings, settings
from bohr_toolkit.contracts import get_theorem_contract, validate_theorem_params
from bohr_toolkit.radius_solvers import (
    F_lambda,
    lambda0,
    phi_locally_univalent,
    radius_locally_univalent,
    radius_log_convex,
    radius_log_inverse,
    radius_log_S,
    radius_log_U,
    radius_qc_bounded,
    radius_qc_convex,
    radius_qc_univalent,
)
from bohr_toolkit.series_core import (
    TruncatedSeries,
    differentiate,
    exp_series,
    integrate_from_zero,
    log_over_z,
    revert,
)


logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]

# |f| or |f'| below this on a sample grid counts as a zero
VANISHING_VALUE = 1e-300

# |h(0)| values of the disk automorphisms checked at the bounded radius
AUTOMORPHISM_CENTERS = (0.25, 0.5, 0.75)


class CatalogTag(str, Enum):
    """Catalog functions."""
    KOEBE_NEG = "koebe-neg"
    KOEBE = "koebe"
    HALF_PLANE = "half-plane"
    U_LAMBDA = "u-lambda"
    HARMONIC_P = "harmonic-p"
    HARMONIC_Q = "harmonic-q"
    LOCALLY_UNIVALENT = "locally-univalent"


TAG_PARAMETER: dict[CatalogTag, str] = {
    CatalogTag.U_LAMBDA: "lambda",
    CatalogTag.HARMONIC_P: "K",
    CatalogTag.HARMONIC_Q: "K",
    CatalogTag.LOCALLY_UNIVALENT: "lambda",
}


@dataclass(frozen=True)
class CatalogFunction:
    """A catalog function realized at a truncation order.

    ``series`` is the holomorphic part; harmonic tags also carry ``pair``.
    The closed-form evaluators, when present, are exact for ``|z| < 1`` and
    take precedence over Horner evaluation of the truncated series.
    """

    tag: CatalogTag
    series: TruncatedSeries
    param: Optional[float] = None
    pair: Optional[HarmonicPair] = None
    dist: Optional[float] = None
    value: Optional[Evaluator] = field(default=None, repr=False)
    first: Optional[Evaluator] = field(default=None, repr=False)
    second: Optional[Evaluator] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.series.order


# -- closed forms ------------------------------------------------------------------


def _koebe(z):
    return z / (1.0 - z) ** 2


def _koebe_first(z):
    return (1.0 + z) / (1.0 - z) ** 3


def _koebe_second(z):
    return (4.0 + 2.0 * z) / (1.0 - z) ** 4


def _koebe_neg(z):
    return z / (1.0 + z) ** 2


def _koebe_neg_first(z):
    return (1.0 - z) / (1.0 + z) ** 3


def _koebe_neg_second(z):
    return (2.0 * z - 4.0) / (1.0 + z) ** 4


def _half_plane(z):
    return z / (1.0 - z)


def _half_plane_first(z):
    return 1.0 / (1.0 - z) ** 2


def _half_plane_second(z):
    return 2.0 / (1.0 - z) ** 3


def _u_lambda_evaluators(lam: float) -> tuple[Evaluator, Evaluator, Evaluator]:
    def denominator(z):
        return (1.0 + z) * (1.0 + lam * z)

    def value(z):
        return z / denominator(z)

    def first(z):
        return (1.0 - lam * z * z) / denominator(z) ** 2

    def second(z):
        d = denominator(z)
        d_prime = (1.0 + lam) + 2.0 * lam * z
        return (-2.0 * lam * z * d - 2.0 * (1.0 - lam * z * z) * d_prime) / d ** 3

    return value, first, second


def _locally_univalent_evaluators(lam: float) -> tuple[Evaluator, Evaluator]:
    def first(z):
        return np.power((1.0 + z) / (1.0 - z), lam)

    def second(z):
        return first(z) * 2.0 * lam / (1.0 - z * z)

    return first, second


# -- series -------------------------------------------------------------------------


def _alternating(order: int) -> np.ndarray:
    n = np.arange(order + 1)
    return np.where(n % 2 == 1, 1.0, -1.0)


def koebe_series(order: int) -> TruncatedSeries:
    """``z/(1-z)^2``, ``a_n = n``."""
    return TruncatedSeries(np.arange(order + 1, dtype=float))


def koebe_neg_series(order: int) -> TruncatedSeries:
    """``z/(1+z)^2``, ``a_n = (-1)^(n-1) n``."""
    return TruncatedSeries(_alternating(order) * np.arange(order + 1))


def half_plane_series(order: int) -> TruncatedSeries:
    """``z/(1-z)``, ``a_n = 1`` for ``n >= 1``."""
    coeffs = np.ones(order + 1)
    coeffs[0] = 0.0
    return TruncatedSeries(coeffs)


def u_lambda_series(lam: float, order: int) -> TruncatedSeries:
    """``z/((1+z)(1+lambda z))``, ``a_n = (-1)^(n-1)(1-lambda^n)/(1-lambda)``."""
    n = np.arange(order + 1)
    if lam == 1.0:
        magnitudes = n.astype(float)
    else:
        magnitudes = (1.0 - np.power(lam, n)) / (1.0 - lam)
    return TruncatedSeries(_alternating(order) * magnitudes)


def log_derivative_coefficients(lam: float, order: int) -> TruncatedSeries:
    """``lambda log((1+z)/(1-z))``: ``2 lambda / n`` at odd ``n``, zero at even ``n``."""
    n = np.arange(order + 1)
    coeffs = np.zeros(order + 1)
    odd = n % 2 == 1
    coeffs[odd] = 2.0 * lam / n[odd]
    return TruncatedSeries(coeffs)


def locally_univalent_series(lam: float, order: int) -> TruncatedSeries:
    """``F_lambda`` with ``F' = ((1+z)/(1-z))^lambda`` and ``F(0) = 0``."""
    derivative = exp_series(log_derivative_coefficients(lam, order - 1))
    return integrate_from_zero(derivative)


def _require_param(tag: CatalogTag, param: Optional[float]) -> Optional[float]:
    name = TAG_PARAMETER.get(tag)
    if name is None:
        return None
    if param is None:
        raise DomainError(f"catalog function {tag.value} needs {name}")
    if name == "K":
        quasiconformal_k(param)
    elif tag is CatalogTag.U_LAMBDA and not 0.0 < param <= 1.0:
        raise DomainError(f"lambda must lie in (0, 1], got {param}")
    elif not param > 0.0:
        raise DomainError(f"lambda must be positive, got {param}")
    return float(param)


def build(tag: Union[CatalogTag, str], order: int, param: Optional[float] = None) -> CatalogFunction:
    """Realize a catalog function at truncation ``order``.

    Raises:
        DomainError: If ``order < 2`` or the parameter is missing or out of range
    """
    tag = CatalogTag(tag)
    if order < 2:
        raise DomainError(f"catalog order must be >= 2, got {order}")
    param = _require_param(tag, param)

    if tag is CatalogTag.KOEBE:
        return CatalogFunction(tag, koebe_series(order), dist=0.25,
                               value=_koebe, first=_koebe_first, second=_koebe_second)
    if tag is CatalogTag.KOEBE_NEG:
        return CatalogFunction(tag, koebe_neg_series(order), dist=0.25,
                               value=_koebe_neg, first=_koebe_neg_first, second=_koebe_neg_second)
    if tag is CatalogTag.HALF_PLANE:
        return CatalogFunction(tag, half_plane_series(order), dist=0.5,
                               value=_half_plane, first=_half_plane_first, second=_half_plane_second)
    if tag is CatalogTag.U_LAMBDA:
        value, first, second = _u_lambda_evaluators(param)
        return CatalogFunction(tag, u_lambda_series(param, order), param=param,
                               value=value, first=first, second=second)
    if tag is CatalogTag.LOCALLY_UNIVALENT:
        first, second = _locally_univalent_evaluators(param)
        return CatalogFunction(tag, locally_univalent_series(param, order), param=param,
                               dist=-F_lambda(param, -1.0), first=first, second=second)

    k = quasiconformal_k(param)
    if tag is CatalogTag.HARMONIC_P:
        h, dist = koebe_series(order), 0.25
        evaluators = (_koebe, _koebe_first, _koebe_second)
    else:
        h, dist = half_plane_series(order), 0.5
        evaluators = (_half_plane, _half_plane_first, _half_plane_second)
    pair = HarmonicPair(h=h, g=k * h, K=param)
    return CatalogFunction(tag, h, param=param, pair=pair, dist=dist,
                           value=evaluators[0], first=evaluators[1], second=evaluators[2])


def catalog_series(tag: Union[CatalogTag, str], order: int, param: Optional[float] = None,
                   log: bool = False) -> TruncatedSeries:
    """Holomorphic part of a catalog function, or its ``log(f/z)`` series."""
    series = build(tag, order, param).series
    return log_over_z(series) if log else series


# -- grid samples --------------------------------------------------------------------


@dataclass(frozen=True)
class UOperatorSample:
    """Grid maximum of ``|U_f|`` against ``lambda``."""

    max_abs: float
    lam: float
    passed: bool


def _evaluators(f: Union[CatalogFunction, TruncatedSeries]) -> tuple[Evaluator, Evaluator, Evaluator]:
    series = f.series if isinstance(f, CatalogFunction) else f
    first_series = differentiate(series)
    fallback = (
        series.evaluate,
        first_series.evaluate,
        differentiate(first_series).evaluate,
    )
    if not isinstance(f, CatalogFunction):
        return fallback
    return (
        f.value or fallback[0],
        f.first or fallback[1],
        f.second or fallback[2],
    )


def _series_of(f: Union[CatalogFunction, TruncatedSeries]) -> TruncatedSeries:
    return f.series if isinstance(f, CatalogFunction) else f


def sample_u_operator(
    f: Union[CatalogFunction, TruncatedSeries],
    lam: float,
    size: Optional[int] = None,
    radius: Optional[float] = None,
    slack: float = U_SLACK,
) -> UOperatorSample:
    """Sample ``U_f(z) = (z/f(z))^2 f'(z) - 1`` on a polar grid.

    The sample passes when the grid maximum stays below ``lambda + slack``;
    it is evidence for membership in ``U(lambda)``, not a proof.

    Raises:
        DomainError: If ``f`` is not normalized or the grid reaches past 0.99
        EvaluationError: If ``f`` vanishes on the grid
    """
    size = size or settings.u_grid
    radius = radius or settings.u_radius
    if radius > 0.99:
        raise DomainError(f"U operator grid radius must be <= 0.99, got {radius}")
    series = _series_of(f)
    if series[0] != 0 or abs(series[1] - 1.0) > FLOAT_SLACK:
        raise DomainError("U operator sample needs a normalized f(z) = z + ...")
    value, first, _ = _evaluators(f)
    z = polar_grid(size, radius)
    fz = np.asarray(value(z))
    if np.any(np.abs(fz) < VANISHING_VALUE):
        raise EvaluationError("f vanishes on the U operator grid")
    u = (z / fz) ** 2 * np.asarray(first(z)) - 1.0
    max_abs = float(np.max(np.abs(u)))
    logger.debug("catalog.u_operator max=%.12g lambda=%.6g", max_abs, lam)
    return UOperatorSample(max_abs=max_abs, lam=lam, passed=max_abs < lam + slack)


def sample_preschwarzian(
    f: Union[CatalogFunction, TruncatedSeries],
    size: Optional[int] = None,
    radius: Optional[float] = None,
) -> float:
    """Grid supremum of ``(1 - |z|^2) |f''/f'|``, a lower bound for ``||P_f||``.

    Raises:
        EvaluationError: If ``f'`` vanishes on the grid
    """
    size = size or settings.preschwarzian_grid
    radius = radius or settings.preschwarzian_radius
    _, first, second = _evaluators(f)
    z = polar_grid(size, radius)
    f1 = np.asarray(first(z))
    if np.any(np.abs(f1) < VANISHING_VALUE):
        raise EvaluationError("f' vanishes on the pre-Schwarzian grid")
    values = (1.0 - np.abs(z) ** 2) * np.abs(np.asarray(second(z)) / f1)
    return float(np.max(values))


# -- sharpness ---------------------------------------------------------------------

# r -> (truncated sum, certified tail)
Measure = Callable[[float], tuple[float, float]]


@dataclass(frozen=True)
class _SharpnessCase:
    r0: float
    threshold: float
    realize: Callable[[int], Measure]


def _harmonic_case(tag: CatalogTag, K: float, r0: float, kind: GrowthKind) -> _SharpnessCase:
    k = quasiconformal_k(K)

    def realize(order: int) -> Measure:
        pair = build(tag, order, K).pair
        growth = GrowthTag(kind, 1.0 + k)
        return lambda r: (bohr_sum_harmonic(pair, r), tail_bound(growth, order, r))

    threshold = 0.25 if tag is CatalogTag.HARMONIC_P else 0.5
    return _SharpnessCase(r0, threshold, realize)


def _log_case(r0: float, log_series: Callable[[int], TruncatedSeries], growth: GrowthTag) -> _SharpnessCase:
    def realize(order: int) -> Measure:
        coefficients = log_series(order)
        return lambda r: (
            bohr_sum(coefficients, r, include_constant=False),
            tail_bound(growth, coefficients.order, r),
        )

    return _SharpnessCase(r0, 1.0, realize)


def _sharpness_case(theorem: str, params: dict[str, float]) -> _SharpnessCase:
    if theorem == "qc-univalent":
        K = params["K"]
        return _harmonic_case(CatalogTag.HARMONIC_P, K, radius_qc_univalent(K).value, GrowthKind.LINEAR)
    if theorem == "qc-convex":
        K = params["K"]
        return _harmonic_case(CatalogTag.HARMONIC_Q, K, radius_qc_convex(K).value, GrowthKind.CONSTANT)
    if theorem == "log-s":
        return _log_case(
            radius_log_S().value,
            lambda order: log_over_z(koebe_neg_series(order)),
            GrowthTag(GrowthKind.HARMONIC, 2.0),
        )
    if theorem == "log-inverse":
        return _log_case(
            radius_log_inverse().value,
            lambda order: log_over_z(revert(koebe_neg_series(order))),
            GrowthTag(GrowthKind.CENTRAL_BINOMIAL, 1.0),
        )
    if theorem == "log-convex":
        return _log_case(
            radius_log_convex().value,
            lambda order: log_over_z(half_plane_series(order)),
            GrowthTag(GrowthKind.HARMONIC, 1.0),
        )
    if theorem == "log-u":
        lam = params["lambda"]
        threshold = lambda0().value
        if lam < threshold:
            raise DomainError(
                f"log-u is sharp only for lambda >= lambda_0 = {threshold:.12g}, got {lam}"
            )
        return _log_case(
            radius_log_U(lam).value,
            lambda order: log_over_z(u_lambda_series(lam, order)),
            GrowthTag(GrowthKind.HARMONIC, 2.0),
        )
    raise UnsupportedOperationError(f"no sharpness claim for {theorem}")


def verify_sharpness(
    theorem: str,
    params: Optional[dict[str, Any]] = None,
    order: Optional[int] = None,
    config: Optional[Settings] = None,
) -> SharpnessReport:
    """Equality at ``r0`` and strict violation at ``r0 (1 + step)`` for the extremal.

    The truncation order doubles (up to ``max_order``) while the certified
    tail exceeds a tenth of the tolerance.

    Raises:
        UnsupportedOperationError: For theorems without a sharpness claim
        DomainError: For parameters outside the theorem's domain
    """
    config = config or settings
    contract = get_theorem_contract(theorem)
    values = validate_theorem_params(theorem, params)
    if contract.claim != "sharp":
        raise UnsupportedOperationError(
            f"{theorem} carries no sharpness claim; use verify_holds"
        )
    case = _sharpness_case(theorem, values)
    tol = config.sharpness_tol
    order = order or config.default_order
    violation_r = case.r0 * (1.0 + config.violation_step)

    while True:
        measure = case.realize(order)
        sum_r0, tail_r0 = measure(case.r0)
        sum_violation, tail_violation = measure(violation_r)
        tail = max(tail_r0, tail_violation)
        if tail <= 0.1 * tol or order >= config.max_order:
            break
        order = min(2 * order, config.max_order)
        logger.warning("sharpness.order_raised theorem=%s order=%d tail=%.3g", theorem, order, tail)

    report = SharpnessReport(
        theorem=theorem,
        params=values,
        r0=case.r0,
        threshold=case.threshold,
        sum_at_r0=sum_r0,
        equality_margin=abs(sum_r0 - case.threshold),
        violation_r=violation_r,
        violation_margin=sum_violation - case.threshold,
        tail_bound=tail,
        order=order,
        tolerance=tol,
    )
    logger.info(
        "sharpness.done theorem=%s r0=%.12g margin=%.3g violation=%.3g passed=%s",
        theorem, report.r0, report.equality_margin, report.violation_margin, report.passed,
    )
    return report


# -- radii without a sharpness claim ---------------------------------------------


def disk_automorphism_pair(a0_abs: float, K: float, order: int) -> HarmonicPair:
    """``h = (a - z)/(1 - a z)`` with ``g' = k z h'`` and ``g(0) = 0``."""
    if not 0.0 <= a0_abs < 1.0:
        raise DomainError(f"|h(0)| must lie in [0, 1), got {a0_abs}")
    n = np.arange(1, order + 1)
    tail = -(1.0 - a0_abs * a0_abs) * np.power(a0_abs, n - 1)
    h = TruncatedSeries(np.concatenate(([a0_abs], tail)))
    k = quasiconformal_k(K)
    g = k * integrate_from_zero(differentiate(h).shift_up()).truncate(order)
    return HarmonicPair(h=h, g=g, K=K)


def _holds_qc_bounded(K: float, order: int) -> tuple[float, list[BohrCheck], list[str]]:
    result = radius_qc_bounded(K)
    # certified side of the root: psi(lo) <= 0
    r_cert = result.bracket[0]
    k = quasiconformal_k(K)
    checks = [check_bohr_inequality(r_cert, bounded_chain_max(K, r_cert), 1.0, 0.0)]
    for a0_abs in AUTOMORPHISM_CENTERS:
        pair = disk_automorphism_pair(a0_abs, K, order)
        growth = GrowthTag(GrowthKind.CONSTANT, (1.0 + k) * (1.0 - a0_abs * a0_abs))
        total = bohr_sum_harmonic(pair, r_cert, include_constant=True)
        checks.append(check_bohr_inequality(r_cert, total, 1.0, tail_bound(growth, order, r_cert)))
    notes = [
        "sharpness extremal is external; checked as an upper bound only",
        f"chain maximum over |h(0)| and automorphisms |h(0)| in {list(AUTOMORPHISM_CENTERS)} at r={r_cert:.12g}",
    ]
    return result.value, checks, notes


def locally_univalent_tail(lam: float, order: int, r: float) -> float:
    """Tail of ``sum |a_n| r^n`` for ``F_lambda`` by a Cauchy estimate at ``R = (1+r)/2``."""
    radius = 0.5 * (1.0 + r)
    # |a_n| <= M(R) R^(1-n) / n with M(R) = ((1+R)/(1-R))^lambda
    scale = radius * ((1.0 + radius) / (1.0 - radius)) ** lam
    return cauchy_tail_bound(scale, radius, order, r)


def _holds_locally_univalent(lam: float, order: int) -> tuple[float, list[BohrCheck], list[str]]:
    result = radius_locally_univalent(lam)
    r_cert = result.bracket[0]
    threshold = -F_lambda(lam, -1.0)
    chain = phi_locally_univalent(lam, r_cert) + threshold
    fn = build(CatalogTag.LOCALLY_UNIVALENT, order, lam)
    checks = [
        check_bohr_inequality(r_cert, max(chain, 0.0), threshold, 0.0),
        check_bohr_inequality(
            r_cert,
            bohr_sum(fn.series, r_cert, include_constant=False),
            threshold,
            locally_univalent_tail(lam, order, r_cert),
        ),
    ]
    notes = [
        "radius is not claimed sharp; reported as stated",
        f"coefficient chain and F_lambda Taylor series at r={r_cert:.12g}",
    ]
    return result.value, checks, notes


def verify_holds(
    theorem: str,
    params: Optional[dict[str, Any]] = None,
    order: Optional[int] = None,
    config: Optional[Settings] = None,
) -> HoldsReport:
    """Bohr inequality checks at a radius without a sharpness claim.

    Raises:
        UnsupportedOperationError: For theorems whose claim is sharpness
    """
    config = config or settings
    contract = get_theorem_contract(theorem)
    values = validate_theorem_params(theorem, params)
    if contract.claim != "holds":
        raise UnsupportedOperationError(f"{theorem} is a sharpness claim; use verify_sharpness")
    order = order or config.default_order
    if theorem == "qc-bounded":
        r0, checks, notes = _holds_qc_bounded(values["K"], order)
    else:
        r0, checks, notes = _holds_locally_univalent(values["lambda"], order)
    report = HoldsReport(theorem=theorem, params=values, r0=r0, checks=checks, notes=notes)
    logger.info("holds.done theorem=%s r0=%.12g passed=%s", theorem, r0, report.passed)
    return report


def verify(
    theorem: str,
    params: Optional[dict[str, Any]] = None,
    order: Optional[int] = None,
    config: Optional[Settings] = None,
) -> Union[SharpnessReport, HoldsReport]:
    """Run the check matching the theorem's claim."""
    validate_theorem_params(theorem, params)
    if get_theorem_contract(theorem).claim == "sharp":
        return verify_sharpness(theorem, params, order, config)
    return verify_holds(theorem, params, order, config)
