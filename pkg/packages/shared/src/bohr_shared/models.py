"""Shared result models for the Bohr radius toolkit."""

from __future__ import annotations

import math
from enum import Enum
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator


class Verdict(str, Enum):
    """Outcome of a truncated Bohr-inequality check."""
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class RadiusMethod(str, Enum):
    """How a radius was produced."""
    CLOSED_FORM = "closed-form"
    BISECTION = "bisection"
    QUADRATURE_BISECTION = "quadrature+bisection"


class RadiusFamily(str, Enum):
    """Function classes with a Bohr radius in the toolkit."""
    QC_UNIVALENT = "qc-univalent"
    QC_CONVEX = "qc-convex"
    QC_BOUNDED = "qc-bounded"
    LOC_UNIVALENT = "loc-univalent"
    LOG_S = "log-s"
    LOG_INVERSE = "log-inverse"
    LOG_CONVEX = "log-convex"
    LOG_U = "log-u"


# (parameter name, lower bound, upper bound, lower bound inclusive)
FAMILY_PARAMETERS: dict[RadiusFamily, tuple[str, float, float, bool]] = {
    RadiusFamily.QC_UNIVALENT: ("K", 1.0, math.inf, True),
    RadiusFamily.QC_CONVEX: ("K", 1.0, math.inf, True),
    RadiusFamily.QC_BOUNDED: ("K", 1.0, math.inf, True),
    RadiusFamily.LOC_UNIVALENT: ("lambda", 0.0, math.inf, False),
    RadiusFamily.LOG_U: ("lambda", 0.0, 1.0, False),
}


class FrozenModel(BaseModel):
    """Immutable base for result values."""

    model_config = ConfigDict(frozen=True, extra="forbid")


class RadiusResult(FrozenModel):
    """A computed Bohr radius with its bracketing certificate."""
    value: float = Field(gt=0.0, lt=1.0, description="Radius r0")
    bracket: tuple[float, float] = Field(description="Interval (lo, hi) containing the root")
    residual: float = Field(ge=0.0, description="|defining equation LHS - RHS| at value")
    method: RadiusMethod
    tol: float = Field(ge=0.0, description="Requested bracket width")
    endpoint_values: Optional[tuple[float, float]] = Field(
        None, description="Defining function at (lo, hi); opposite signs certify the root"
    )
    iterations: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_bracket(self) -> "RadiusResult":
        lo, hi = self.bracket
        if not lo <= self.value <= hi:
            raise ValueError(f"value {self.value} outside bracket ({lo}, {hi})")
        if self.method is not RadiusMethod.CLOSED_FORM:
            if hi - lo > self.tol:
                raise ValueError(f"bracket width {hi - lo} exceeds tol {self.tol}")
            if self.residual > 10 * self.tol:
                raise ValueError(f"residual {self.residual} exceeds 10*tol")
        return self

    @computed_field
    @property
    def width(self) -> float:
        return self.bracket[1] - self.bracket[0]


class BohrCheck(FrozenModel):
    """Truncated Bohr sum compared against a threshold with tail accounting."""
    r: float = Field(ge=0.0, lt=1.0)
    sum_value: float = Field(ge=0.0, description="Truncated Bohr sum")
    threshold: float = Field(ge=0.0)
    tail_bound: float = Field(ge=0.0, description="Certified bound on the omitted terms")
    verdict: Verdict

    @classmethod
    def evaluate(cls, r: float, sum_value: float, threshold: float, tail_bound: float) -> "BohrCheck":
        """Build a check, deriving the verdict from the numbers."""
        if sum_value + tail_bound <= threshold:
            verdict = Verdict.HOLDS
        elif sum_value > threshold:
            verdict = Verdict.FAILS
        else:
            verdict = Verdict.INCONCLUSIVE
        return cls(r=r, sum_value=sum_value, threshold=threshold, tail_bound=tail_bound, verdict=verdict)

    @model_validator(mode="after")
    def _check_verdict(self) -> "BohrCheck":
        holds = self.sum_value + self.tail_bound <= self.threshold
        fails = self.sum_value > self.threshold
        expected = Verdict.HOLDS if holds else Verdict.FAILS if fails else Verdict.INCONCLUSIVE
        if self.verdict is not expected:
            raise ValueError(f"verdict {self.verdict.value} inconsistent with numbers ({expected.value})")
        return self


class SharpnessReport(FrozenModel):
    """Equality at r0 and strict violation just beyond it, for one theorem."""
    theorem: str
    params: dict[str, float] = Field(default_factory=dict)
    r0: float
    threshold: float
    sum_at_r0: float
    equality_margin: float = Field(ge=0.0, description="|sum(r0) - threshold|")
    violation_r: float = Field(description="r0 * (1 + step)")
    violation_margin: float = Field(description="sum(violation_r) - threshold")
    tail_bound: float = Field(ge=0.0)
    order: int = Field(ge=1)
    tolerance: float = Field(gt=0.0)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.equality_margin <= self.tolerance and self.violation_margin > 0.0


class HoldsReport(FrozenModel):
    """Bohr inequality checks at a radius that carries no sharpness claim."""
    theorem: str
    params: dict[str, float] = Field(default_factory=dict)
    r0: float
    checks: list[BohrCheck] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(check.verdict is Verdict.HOLDS for check in self.checks)


class SweepSpec(BaseModel):
    """Parameter sweep over one radius family."""
    family: RadiusFamily
    param: Literal["K", "lambda"]
    min: float
    max: float
    steps: int = Field(ge=2)
    output_format: Literal["csv", "json"] = "csv"

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_domain(self) -> "SweepSpec":
        if not self.min < self.max:
            raise ValueError(f"min {self.min} must be below max {self.max}")
        domain = FAMILY_PARAMETERS.get(self.family)
        if domain is None:
            raise ValueError(f"family {self.family.value} has no parameter to sweep")
        name, low, high, low_inclusive = domain
        if self.param != name:
            raise ValueError(f"family {self.family.value} is parameterized by {name}, not {self.param}")
        below = self.min < low if low_inclusive else self.min <= low
        if below or self.max > high:
            raise ValueError(f"{name} range [{self.min}, {self.max}] leaves the family domain")
        return self

    def values(self) -> list[float]:
        """Evenly spaced parameter values, endpoints included."""
        span = self.max - self.min
        return [self.min + span * i / (self.steps - 1) for i in range(self.steps)]


class SweepRow(FrozenModel):
    """One row of a sweep table."""
    param: float
    r0: float
    residual: float

    def as_dict(self) -> dict[str, Any]:
        return {"param": self.param, "r0": self.r0, "residual": self.residual}
