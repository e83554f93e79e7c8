"""Theorem contracts for verification commands."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from bohr_shared.errors import DomainError

Claim = Literal["sharp", "holds"]


class TheoremParams(BaseModel):
    """Base parameter model for a theorem contract."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class NoParams(TheoremParams):
    """Theorem without parameters."""


class QuasiconformalParams(TheoremParams):
    K: float = Field(ge=1.0, description="Quasiconformality constant, inf allowed")


class LocallyUnivalentParams(TheoremParams):
    lam: float = Field(gt=0.0, alias="lambda", description="Pre-Schwarzian bound is 2*lambda")


class LogULambdaParams(TheoremParams):
    lam: float = Field(gt=0.0, le=1.0, alias="lambda", description="U(lambda) parameter")


@dataclass(frozen=True)
class TheoremContract:
    """Single theorem contract entry."""

    name: str
    title: str
    statement: str
    claim: Claim
    params_model: type[TheoremParams]
    extremal: Optional[str] = None

    def param_names(self) -> list[str]:
        return [field.alias or name for name, field in self.params_model.model_fields.items()]


THEOREM_CONTRACTS: tuple[TheoremContract, ...] = (
    TheoremContract(
        name="qc-univalent",
        title="K-quasiconformal harmonic map, univalent h",
        statement="sum|a_n|r^n + sum|b_n|r^n <= d(h(0), dh(D)) for r <= (5K+1-sqrt(8K(3K+1)))/(K+1)",
        claim="sharp",
        params_model=QuasiconformalParams,
        extremal="harmonic-p",
    ),
    TheoremContract(
        name="qc-convex",
        title="K-quasiconformal harmonic map, convex h",
        statement="sum|a_n|r^n + sum|b_n|r^n <= d(h(0), dh(D)) for r <= (K+1)/(5K+1)",
        claim="sharp",
        params_model=QuasiconformalParams,
        extremal="harmonic-q",
    ),
    TheoremContract(
        name="qc-bounded",
        title="K-quasiconformal harmonic map, |h| < 1",
        statement="sum|a_n|r^n + sum|b_n|r^n <= 1 for r <= root of 4Kr/((K+1)(1-r)) + 2(K-1)log(1-r)/(K+1) = 1",
        claim="holds",
        params_model=QuasiconformalParams,
    ),
    TheoremContract(
        name="loc-univalent",
        title="Uniformly locally univalent f, ||P_f|| <= 2 lambda",
        statement="sum|a_n|r^n <= -F_lambda(-1) for r <= root of r + r sqrt(exp(4l^2r^2/(1-r^2))-1) sqrt(pi^2/6-1) = -F_lambda(-1)",
        claim="holds",
        params_model=LocallyUnivalentParams,
        extremal="locally-univalent",
    ),
    TheoremContract(
        name="log-s",
        title="Logarithmic coefficients of univalent f",
        statement="2 sum|gamma_n|r^n <= 1 for r <= 1 - 1/sqrt(e)",
        claim="sharp",
        params_model=NoParams,
        extremal="koebe-neg",
    ),
    TheoremContract(
        name="log-inverse",
        title="Logarithmic coefficients of the inverse of univalent f",
        statement="2 sum|Gamma_n|r^n <= 1 for r <= (sqrt(e) - 1)/e",
        claim="sharp",
        params_model=NoParams,
        extremal="koebe-neg",
    ),
    TheoremContract(
        name="log-convex",
        title="Logarithmic coefficients of convex f",
        statement="2 sum|gamma_n|r^n <= 1 for r <= 1 - 1/e",
        claim="sharp",
        params_model=NoParams,
        extremal="half-plane",
    ),
    TheoremContract(
        name="log-u",
        title="Logarithmic coefficients of f in U(lambda)",
        statement="2 sum|gamma_n|r^n <= 1 for r <= r(lambda), sharp for lambda >= lambda_0",
        claim="sharp",
        params_model=LogULambdaParams,
        extremal="u-lambda",
    ),
)

THEOREM_CONTRACTS_BY_NAME: dict[str, TheoremContract] = {
    contract.name: contract for contract in THEOREM_CONTRACTS
}


@dataclass(frozen=True)
class TheoremGroup:
    """Command-line label covering one or more contracts."""

    label: str
    members: tuple[str, ...]


THEOREM_GROUPS: tuple[TheoremGroup, ...] = (
    TheoremGroup(label="2.2", members=("qc-univalent", "qc-convex")),
    TheoremGroup(label="2.4", members=("qc-bounded",)),
    TheoremGroup(label="2.7", members=("loc-univalent",)),
    TheoremGroup(label="3.1", members=("log-s", "log-inverse")),
    TheoremGroup(label="remark-convex", members=("log-convex",)),
    TheoremGroup(label="3.3", members=("log-u",)),
)

THEOREM_GROUPS_BY_LABEL: dict[str, TheoremGroup] = {group.label: group for group in THEOREM_GROUPS}

# Accepted by ``verify --theorem``: group labels first, then single contracts
THEOREM_LABELS: tuple[str, ...] = (
    *THEOREM_GROUPS_BY_LABEL,
    *THEOREM_CONTRACTS_BY_NAME,
)


def get_theorem_contract(name: str) -> TheoremContract | None:
    """Return contract for a theorem name, if present."""

    return THEOREM_CONTRACTS_BY_NAME.get(name)


def resolve_theorem_label(label: str) -> list[TheoremContract]:
    """Contracts behind a group label or a single contract name.

    Raises:
        DomainError: If the label names neither a group nor a contract
    """

    group = THEOREM_GROUPS_BY_LABEL.get(label)
    if group:
        return [THEOREM_CONTRACTS_BY_NAME[name] for name in group.members]
    contract = THEOREM_CONTRACTS_BY_NAME.get(label)
    if contract:
        return [contract]
    known = ", ".join(THEOREM_LABELS)
    raise DomainError(f"Unknown theorem '{label}'. Use one of: {known}")


def validate_theorem_params(name: str, params: dict[str, Any] | None) -> dict[str, float]:
    """Validate parameters against a theorem contract.

    Raises:
        DomainError: Unknown theorem or parameters outside the theorem's domain
    """

    contract = THEOREM_CONTRACTS_BY_NAME.get(name)
    if not contract:
        known = ", ".join(THEOREM_CONTRACTS_BY_NAME)
        raise DomainError(f"Unknown theorem '{name}'. Use one of: {known}")
    try:
        model = contract.params_model.model_validate(params or {})
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise DomainError(f"Invalid parameters for {name}: {field}: {first['msg']}") from e
    return model.model_dump(by_alias=True)
