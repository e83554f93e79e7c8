"""Seeded harness runs, counterexample hunting and replay."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Optional

import numpy as np
from pydantic import Field, computed_field

from bohr_shared.errors import DomainError
from bohr_shared.models import FrozenModel

from bohr_toolkit.config import Settings, settings
from bohr_toolkit.harness.checks import (
    LEMMA_RADIUS,
    CheckOutcome,
    check_area_bound,
    check_derivative_transfer,
    check_lebedev_milin,
    check_lemma1,
    check_rogosinski_step,
    check_subordination_bohr,
)
from bohr_toolkit.harness.samplers import (
    random_blaschke,
    random_decaying_series,
    random_locally_univalent,
    random_log_derivative,
    random_schwarz,
)
from bohr_toolkit.radius_solvers import log_u_branch_bound


logger = logging.getLogger(__name__)

LEBEDEV_MILIN_RADII = (0.1, 0.3, 0.5)
AREA_BOUND_RADII = (0.1, 0.3, 0.5, 0.7)
AREA_BOUND_LAMBDA_RANGE = (0.1, 2.0)
ROGOSINSKI_LAMBDA_RANGE = (0.05, 1.0)
LEMMA1_M_RANGE = (0.1, 10.0)

# Seed stream used for the counterexample hunt, after the six check streams
HUNT_STREAM = 99

# (rng, order, r or None) -> outcome
SampleRunner = Callable[[np.random.Generator, int, Optional[float]], CheckOutcome]


def _lemma1(rng: np.random.Generator, order: int, r: Optional[float], strict: bool = True) -> CheckOutcome:
    h, certificate = random_decaying_series(rng, order)
    phi = random_blaschke(rng, order)
    M = float(rng.uniform(*LEMMA1_M_RANGE))
    return check_lemma1(h, phi, M, LEMMA_RADIUS if r is None else r, certificate, strict=strict)


def _derivative_transfer(rng: np.random.Generator, order: int, r: Optional[float]) -> CheckOutcome:
    h, certificate = random_decaying_series(rng, order)
    phi = random_schwarz(rng, order)
    k = float(rng.random())
    return check_derivative_transfer(h, phi, k, LEMMA_RADIUS if r is None else r, certificate)


def _lebedev_milin(rng: np.random.Generator, order: int, r: Optional[float]) -> CheckOutcome:
    c, certificate = random_log_derivative(rng, order)
    radius = float(rng.choice(LEBEDEV_MILIN_RADII))
    return check_lebedev_milin(c, radius if r is None else r, certificate)


def _area_bound(rng: np.random.Generator, order: int, r: Optional[float]) -> CheckOutcome:
    lam = float(rng.uniform(*AREA_BOUND_LAMBDA_RANGE))
    sample = random_locally_univalent(rng, lam, order)
    radius = float(rng.choice(AREA_BOUND_RADII))
    return check_area_bound(lam, sample, radius if r is None else r)


def _rogosinski_step(rng: np.random.Generator, order: int, r: Optional[float]) -> CheckOutcome:
    lam = float(rng.uniform(*ROGOSINSKI_LAMBDA_RANGE))
    psi = random_schwarz(rng, order, fixes_origin=True)
    return check_rogosinski_step(lam, psi, log_u_branch_bound(lam) if r is None else r)


def _subordination_bohr(rng: np.random.Generator, order: int, r: Optional[float]) -> CheckOutcome:
    f, certificate = random_decaying_series(rng, order)
    phi = random_blaschke(rng, order, fixes_origin=True)
    return check_subordination_bohr(f, phi, LEMMA_RADIUS if r is None else r, certificate)


SAMPLE_RUNNERS: dict[str, SampleRunner] = {
    "lemma1": _lemma1,
    "derivative_transfer": _derivative_transfer,
    "lebedev_milin": _lebedev_milin,
    "area_bound": _area_bound,
    "rogosinski_step": _rogosinski_step,
    "subordination_bohr": _subordination_bohr,
}


class CheckSummary(FrozenModel):
    """Pass count and failing samples of one check."""
    check: str
    samples: int
    passed: int
    worst_margin: float = Field(description="Smallest margin over all samples")
    failures: list[str] = Field(default_factory=list, description="Replay lines")

    @computed_field
    @property
    def all_passed(self) -> bool:
        return self.passed == self.samples


class HarnessReport(FrozenModel):
    """Outcome of a full harness run."""
    seed: int
    order: int
    checks: list[CheckSummary]
    counterexample_draws: int = 0
    counterexample: Optional[str] = Field(
        None, description="First lemma1 failure beyond r = 1/3, proving the hypothesis is active"
    )

    @computed_field
    @property
    def passed(self) -> bool:
        hunted = self.counterexample_draws == 0 or self.counterexample is not None
        return hunted and all(summary.all_passed for summary in self.checks)


def sample_seeds(seed: int, stream: int, count: int) -> list[int]:
    """Independent per-sample seeds for one check."""
    state = np.random.SeedSequence([seed, stream]).generate_state(count, dtype=np.uint32)
    return [int(value) for value in state]


def replay_line(check: str, seed: int, r: float, order: int) -> str:
    """Plain-text replay record ``kind seed params``."""
    return f"{check} {seed} r={r!r} order={order}"


def run_sample(check: str, seed: int, order: int, r: Optional[float] = None, strict: bool = True) -> CheckOutcome:
    """Regenerate a sample from its seed and run its check."""
    runner = SAMPLE_RUNNERS.get(check)
    if runner is None:
        raise DomainError(f"Unknown harness check '{check}'. Use one of: {', '.join(SAMPLE_RUNNERS)}")
    rng = np.random.default_rng(seed)
    if check == "lemma1":
        return _lemma1(rng, order, r, strict=strict)
    return runner(rng, order, r)


def replay(line: str) -> CheckOutcome:
    """Re-run a sample from its replay line.

    Lines produced by the counterexample hunt lie outside the lemma's
    radius and are replayed without the hypothesis check.
    """
    parts = line.split()
    if len(parts) < 2:
        raise DomainError(f"Invalid replay line '{line}'. Use: kind seed [r=..] [order=..]")
    check, seed = parts[0], int(parts[1])
    params = {}
    for part in parts[2:]:
        key, _, value = part.partition("=")
        params[key] = value
    r = float(params["r"]) if "r" in params else None
    order = int(params.get("order", settings.default_order))
    strict = r is None or check != "lemma1" or r <= LEMMA_RADIUS
    return run_sample(check, seed, order, r, strict=strict)


def _summarize(check: str, seed: int, count: int, order: int) -> CheckSummary:
    passed = 0
    worst = float("inf")
    failures = []
    for sample_seed in sample_seeds(seed, list(SAMPLE_RUNNERS).index(check), count):
        outcome = run_sample(check, sample_seed, order)
        worst = min(worst, outcome.margin)
        if outcome.passed:
            passed += 1
        else:
            failures.append(replay_line(check, sample_seed, outcome.r, order))
            logger.warning("harness.failure check=%s seed=%d margin=%.3g", check, sample_seed, outcome.margin)
    logger.info("harness.check.done check=%s passed=%d/%d worst_margin=%.3g", check, passed, count, worst)
    return CheckSummary(check=check, samples=count, passed=passed, worst_margin=worst, failures=failures)


def hunt_counterexample(seed: int, draws: int, r: float, order: int) -> Optional[str]:
    """Replay line of the first lemma1 sample failing at ``r``, if any."""
    for sample_seed in sample_seeds(seed, HUNT_STREAM, draws):
        outcome = run_sample("lemma1", sample_seed, order, r, strict=False)
        if not outcome.passed:
            logger.info("harness.counterexample seed=%d r=%.6g margin=%.3g", sample_seed, r, outcome.margin)
            return replay_line("lemma1", sample_seed, r, order)
    return None


def run_harness(
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    order: Optional[int] = None,
    checks: Optional[list[str]] = None,
    hunt: bool = True,
    config: Optional[Settings] = None,
) -> HarnessReport:
    """Run every check under a fixed seed.

    Args:
        seed: Root seed; defaults to the configured harness seed
        samples: Override the per-check sample counts
        order: Truncation order of generated series
        checks: Subset of check names to run, in canonical order
        hunt: Also search for a lemma1 failure beyond r = 1/3
        config: Settings to read defaults from
    """
    config = config or settings
    seed = config.harness_seed if seed is None else seed
    order = order or config.default_order
    counts = config.harness_samples()
    selected = list(SAMPLE_RUNNERS) if checks is None else checks
    unknown = [name for name in selected if name not in SAMPLE_RUNNERS]
    if unknown:
        raise DomainError(f"Unknown harness check '{unknown[0]}'. Use one of: {', '.join(SAMPLE_RUNNERS)}")

    summaries = [
        _summarize(name, seed, samples or counts[name], order)
        for name in SAMPLE_RUNNERS
        if name in selected
    ]
    draws = config.counterexample_draws if hunt else 0
    counterexample = hunt_counterexample(seed, draws, config.counterexample_radius, order) if hunt else None
    return HarnessReport(
        seed=seed,
        order=order,
        checks=summaries,
        counterexample_draws=draws,
        counterexample=counterexample,
    )
