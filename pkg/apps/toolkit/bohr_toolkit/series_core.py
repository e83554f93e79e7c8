"""Truncated formal power series over complex coefficients.

Every value is immutable; arithmetic closes on the smaller truncation order.
Coefficient arrays are numpy complex128 and never writable after
construction, so series can be shared freely between threads.
"""

from __future__ import annotations

import cmath
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Union

import numpy as np

from bohr_shared.errors import DomainError
from bohr_shared.helpers import debug_lines, parse_debug_lines


logger = logging.getLogger(__name__)

Scalar = Union[int, float, complex]


def _frozen(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``a_0 .. a_N`` of a power series truncated at order ``N``."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.coeffs, dtype=np.complex128).ravel()
        if values.size == 0:
            raise DomainError("series needs at least one coefficient")
        if not np.all(np.isfinite(values)):
            raise DomainError("series coefficients must be finite")
        object.__setattr__(self, "coeffs", _frozen(values))

    # -- construction -------------------------------------------------------

    @classmethod
    def from_coefficients(cls, values: Iterable[Scalar], order: int | None = None) -> "TruncatedSeries":
        """Build a series, zero-padding or cutting to ``order`` when given."""
        data = np.array(list(values), dtype=np.complex128)
        if order is not None:
            if order < 0:
                raise DomainError(f"order must be non-negative, got {order}")
            padded = np.zeros(order + 1, dtype=np.complex128)
            keep = min(order + 1, data.size)
            padded[:keep] = data[:keep]
            data = padded
        return cls(data)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([], order)

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([value], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """The identity series ``z``."""
        if order < 1:
            raise DomainError("the variable z needs order >= 1")
        return cls.from_coefficients([0, 1], order)

    @classmethod
    def geometric(cls, order: int, ratio: Scalar = 1.0) -> "TruncatedSeries":
        """``sum (ratio z)^n`` truncated at ``order``."""
        return cls(np.power(complex(ratio), np.arange(order + 1)))

    @classmethod
    def from_debug_lines(cls, lines: Iterable[str]) -> "TruncatedSeries":
        return cls.from_coefficients(parse_debug_lines(lines))

    # -- basic access -------------------------------------------------------

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, index: int) -> complex:
        return complex(self.coeffs[index])

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries(order={self.order}, [{head}{more}])"

    def truncate(self, order: int) -> "TruncatedSeries":
        """Drop coefficients above ``order`` (no padding)."""
        if order < 0:
            raise DomainError(f"order must be non-negative, got {order}")
        return TruncatedSeries(self.coeffs[: min(order, self.order) + 1].copy())

    def abs_coeffs(self) -> np.ndarray:
        return np.abs(self.coeffs)

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12, rtol: float = 0.0) -> bool:
        """Coefficientwise comparison up to the common order."""
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], atol=atol, rtol=rtol))

    def evaluate(self, z: Scalar | np.ndarray) -> complex | np.ndarray:
        """Evaluate the truncated polynomial (Horner) at a point or array."""
        points = np.asarray(z, dtype=np.complex128)
        result = np.polynomial.polynomial.polyval(points, self.coeffs)
        return complex(result) if np.ndim(result) == 0 else result

    def to_debug_lines(self) -> list[str]:
        return debug_lines(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _common(self, other: "TruncatedSeries") -> tuple[np.ndarray, np.ndarray, int]:
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other: "TruncatedSeries | Scalar") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            a, b, _ = self._common(other)
            return TruncatedSeries(a + b)
        values = self.coeffs.copy()
        values[0] += other
        return TruncatedSeries(values)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other: "TruncatedSeries | Scalar") -> "TruncatedSeries":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: "TruncatedSeries | Scalar") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return cauchy_mul(self, other)
        return TruncatedSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def shift_down(self) -> "TruncatedSeries":
        """Divide by ``z``; requires ``a_0 = 0`` and order >= 1."""
        if self.coeffs[0] != 0:
            raise DomainError("series not of form a_1 z + ...")
        if self.order < 1:
            raise DomainError("cannot divide an order-0 series by z")
        return TruncatedSeries(self.coeffs[1:].copy())

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by ``z``; the order grows by one."""
        return TruncatedSeries(np.concatenate(([0.0], self.coeffs)))


# -- operations ---------------------------------------------------------------


def cauchy_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product ``c_n = sum a_t b_{n-t}`` truncated at the common order."""
    x, y, n = a._common(b)
    return TruncatedSeries(np.convolve(x, y)[: n + 1])


def differentiate(f: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; an order-0 series maps to the order-0 zero series."""
    if f.order == 0:
        return TruncatedSeries.zero(0)
    n = np.arange(1, f.order + 1)
    return TruncatedSeries(n * f.coeffs[1:])


def integrate_from_zero(f: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative vanishing at the origin; the order grows by one."""
    n = np.arange(1, f.order + 2)
    return TruncatedSeries(np.concatenate(([0.0], f.coeffs / n)))


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse ``1/f``; requires ``a_0 != 0``."""
    a = f.coeffs
    if a[0] == 0:
        raise DomainError("reciprocal needs a nonzero constant term")
    inv0 = 1.0 / a[0]
    b = np.zeros_like(a)
    b[0] = inv0
    for n in range(1, a.size):
        b[n] = -inv0 * np.dot(a[1 : n + 1], b[n - 1 :: -1][:n])
    return TruncatedSeries(b)


def exp_series(f: TruncatedSeries) -> TruncatedSeries:
    """Truncated exponential ``exp(f)`` via ``n E_n = sum k f_k E_{n-k}``."""
    a = f.coeffs
    weighted = np.arange(a.size) * a
    e = np.zeros_like(a)
    e[0] = cmath.exp(a[0])
    for n in range(1, a.size):
        e[n] = np.dot(weighted[1 : n + 1], e[n - 1 :: -1][:n]) / n
    return TruncatedSeries(e)


def log_over_z(f: TruncatedSeries) -> TruncatedSeries:
    """Series ``L`` of ``log(f(z)/z)`` with ``L_0 = log(a_1)``.

    The logarithmic coefficients are ``gamma_n = L_n / 2``. The result has
    order ``N - 1`` because ``f/z`` does.

    Raises:
        DomainError: If ``a_0 != 0`` or ``a_1 == 0``
    """
    if f.order < 1 or f.coeffs[0] != 0 or f.coeffs[1] == 0:
        raise DomainError("series not of form a_1 z + ...")
    q = f.shift_down()
    if q.order == 0:
        return TruncatedSeries.constant(cmath.log(q[0]), 0)
    # L' = q'/q, integrated from zero, plus log(a_1)
    log_derivative = cauchy_mul(differentiate(q), reciprocal(q.truncate(q.order - 1)))
    return integrate_from_zero(log_derivative) + cmath.log(q[0])


def logarithmic_coefficients(f: TruncatedSeries) -> np.ndarray:
    """``gamma_1 .. gamma_{N-1}`` of ``log(f(z)/z) = 2 sum gamma_n z^n``."""
    return 0.5 * log_over_z(f).coeffs[1:]


def compose(f: TruncatedSeries, phi: TruncatedSeries) -> TruncatedSeries:
    """Substitution ``f(phi(z))`` for an inner series fixing the origin.

    Horner's scheme in ``phi``; the result order is the smaller of the two.

    Raises:
        DomainError: If ``phi_0 != 0``
    """
    if phi.coeffs[0] != 0:
        raise DomainError("inner function must fix origin")
    n = min(f.order, phi.order)
    inner = phi.coeffs[: n + 1]
    outer = f.coeffs[: n + 1]
    result = np.zeros(n + 1, dtype=np.complex128)
    result[0] = outer[n]
    for k in range(n - 1, -1, -1):
        # terms of degree > n never feed back, so cut every round
        result = np.convolve(result, inner)[: n + 1]
        result[0] += outer[k]
    return TruncatedSeries(result)


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by Newton iteration with order doubling.

    Solves ``f(g(w)) = w`` via ``g <- g - (f(g) - w) / f'(g)``; each step
    doubles the number of correct coefficients.

    Raises:
        DomainError: If ``a_0 != 0`` or ``a_1 == 0``
    """
    if f.order < 1 or f.coeffs[0] != 0 or f.coeffs[1] == 0:
        raise DomainError("series not of form a_1 z + ...")
    target = f.order
    g = TruncatedSeries.from_coefficients([0, 1.0 / f.coeffs[1]], 1)
    precision = 1
    steps = 0
    while precision < target:
        precision = min(2 * precision, target)
        g = TruncatedSeries.from_coefficients(g.coeffs, precision)
        f_p = f.truncate(precision)
        residual = compose(f_p, g) - TruncatedSeries.variable(precision)
        slope = compose(differentiate(f_p), g.truncate(precision - 1))
        g = g - _divide_residual(residual, slope)
        steps += 1
    logger.debug("series.revert.done order=%d newton_steps=%d", target, steps)
    return TruncatedSeries.from_coefficients(g.coeffs, target)


def _divide_residual(residual: TruncatedSeries, slope: TruncatedSeries) -> TruncatedSeries:
    """``residual / slope`` at the residual's order (slope has order one less)."""
    padded = TruncatedSeries.from_coefficients(slope.coeffs, residual.order)
    return cauchy_mul(residual, reciprocal(padded))


def revert_lagrange(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse from the Lagrange inversion formula.

    ``g_n = (1/n) [w^{n-1}] (z / f(z))^n``. Cubic cost; kept as an oracle
    independent of :func:`revert`.
    """
    if f.order < 1 or f.coeffs[0] != 0 or f.coeffs[1] == 0:
        raise DomainError("series not of form a_1 z + ...")
    n_max = f.order
    h = reciprocal(f.shift_down())
    coeffs = np.zeros(n_max + 1, dtype=np.complex128)
    power = TruncatedSeries.constant(1.0, h.order)
    for n in range(1, n_max + 1):
        power = cauchy_mul(power, h)
        coeffs[n] = power[n - 1] / n
    return TruncatedSeries(coeffs)
