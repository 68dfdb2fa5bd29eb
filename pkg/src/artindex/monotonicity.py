"""Monotonicity-axiom audits for index methods.

The axiom: raising any prices while holding characteristics fixed must
not lower the index. The auditors here test it constructively, against
any index method expressed as a ``Dataset -> IndexSeries`` callable:

* :func:`check_monotonicity` replays one explicit perturbation;
* :func:`search_violations` sweeps single-observation price multipliers
  over every non-base observation;
* :func:`random_perturbation_audit` draws seeded random non-negative
  increment vectors over the non-base observations.

Perturbations target observations outside the base period: levels are
anchored ratios to the base, so only non-base perturbations make the
axiom's comparison meaningful level by level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .domain import Dataset, partition_by_period, with_price_increments
from .errors import ModelError, ValidationError
from .indexes import IndexFunction, IndexSeries
from .regression import characteristic_value, student_t_two_sided_p

# relative slack distinguishing a genuine level drop from float noise
RELATIVE_SLACK = 1e-12

# single-observation multiplier sweep used when no grid is supplied:
# 1.1, 1.2, ..., 3.0
DEFAULT_MULTIPLIER_GRID = tuple(round(1.0 + 0.1 * i, 10) for i in range(1, 21))


@dataclass(frozen=True)
class Perturbation:
    """Non-negative dollar increments keyed by observation id."""

    increments: Mapping[str, float]


@dataclass(frozen=True)
class LevelComparison:
    """One non-base period's level before and after a perturbation."""

    period: str
    level_before: float
    level_after: float
    compliant: bool


@dataclass(frozen=True)
class Violation:
    """A perturbed period whose level dropped beyond the noise slack."""

    description: str
    period: str
    level_before: float
    level_after: float
    perturbation: Perturbation


@dataclass(frozen=True)
class MonotonicityReport:
    """Outcome of a violation search or random audit."""

    method: str
    trials: int
    violations: tuple[Violation, ...]
    melser_statistic: float | None = None

    @property
    def compliant(self) -> bool:
        return not self.violations


def _validate_perturbation(ds: Dataset, pert: Perturbation) -> None:
    if not pert.increments:
        raise ValidationError("perturbation has no increments")
    known = {o.id for o in ds.observations}
    errors = []
    for obs_id, inc in pert.increments.items():
        if obs_id not in known:
            errors.append(f"perturbation references unknown observation id {obs_id!r}")
        elif not (isinstance(inc, (int, float)) and math.isfinite(inc) and inc >= 0):
            errors.append(
                f"perturbation for observation {obs_id!r} must be a "
                f"non-negative finite number, got {inc!r}"
            )
    if errors:
        raise ValidationError(errors)


def _perturbed_periods(ds: Dataset, pert: Perturbation) -> set[str]:
    by_id = {o.id: o.period for o in ds.observations}
    return {by_id[i] for i, inc in pert.increments.items() if inc > 0}


def _compare(
    before: IndexSeries, after: IndexSeries, perturbed: set[str]
) -> tuple[LevelComparison, ...]:
    comparisons = []
    for period, level_before in before.levels.items():
        if period == before.base_period:
            continue
        level_after = after.levels[period]
        dropped = (level_before - level_after) > RELATIVE_SLACK * level_before
        compliant = period not in perturbed or not dropped
        comparisons.append(
            LevelComparison(
                period=period,
                level_before=level_before,
                level_after=level_after,
                compliant=compliant,
            )
        )
    return tuple(comparisons)


def check_monotonicity(
    ds: Dataset, index_fn: IndexFunction, pert: Perturbation
) -> tuple[LevelComparison, ...]:
    """Recompute the full index on the perturbed dataset and compare levels.

    Returns one comparison per non-base period; a period is compliant
    unless it received a positive increment and its level fell by more
    than the relative slack.
    """
    _validate_perturbation(ds, pert)
    before = index_fn(ds)
    after = index_fn(with_price_increments(ds, pert.increments))
    return _compare(before, after, _perturbed_periods(ds, pert))


def search_violations(
    ds: Dataset,
    index_fn: IndexFunction,
    multiplier_grid: Sequence[float] = DEFAULT_MULTIPLIER_GRID,
) -> MonotonicityReport:
    """Sweep single-observation price multipliers over non-base observations.

    Every (observation, multiplier) pair is tried in deterministic order:
    dataset observation order first, then grid order.
    """
    grid = list(multiplier_grid)
    if not grid:
        raise ModelError("multiplier grid must not be empty")
    for m in grid:
        if not (isinstance(m, (int, float)) and math.isfinite(m) and m > 1):
            raise ModelError(f"multipliers must be finite and > 1, got {m!r}")

    before = index_fn(ds)
    violations = []
    trials = 0
    for obs in ds.observations:
        if obs.period == before.base_period:
            continue
        for m in grid:
            trials += 1
            pert = Perturbation({obs.id: obs.price * (m - 1.0)})
            after = index_fn(with_price_increments(ds, pert.increments))
            for cmp in _compare(before, after, {obs.period}):
                if not cmp.compliant:
                    violations.append(
                        Violation(
                            description=f"obs {obs.id} price x{m:g}",
                            period=cmp.period,
                            level_before=cmp.level_before,
                            level_after=cmp.level_after,
                            perturbation=pert,
                        )
                    )
    return MonotonicityReport(
        method=before.method, trials=trials, violations=tuple(violations)
    )


def random_perturbation_audit(
    ds: Dataset, index_fn: IndexFunction, trials: int, seed: int
) -> MonotonicityReport:
    """Audit with seeded random non-negative increments on non-base observations.

    Each trial draws, for every non-base observation, an increment that is
    zero with probability one half and otherwise uniform below that
    observation's price. Identical seeds give identical reports, and each
    recorded violation carries its perturbation so it can be replayed
    through :func:`check_monotonicity`.
    """
    if trials < 1:
        raise ModelError(f"trials must be at least 1, got {trials}")
    rng = np.random.default_rng(seed)
    before = index_fn(ds)
    targets = [o for o in ds.observations if o.period != before.base_period]
    prices = np.array([o.price for o in targets])

    violations = []
    for trial in range(trials):
        coins = rng.random(len(targets))
        magnitudes = rng.random(len(targets))
        increments = np.where(coins < 0.5, 0.0, magnitudes * prices)
        pert = Perturbation(
            {o.id: float(inc) for o, inc in zip(targets, increments)}
        )
        perturbed = {o.period for o, inc in zip(targets, increments) if inc > 0}
        if not perturbed:
            continue
        after = index_fn(with_price_increments(ds, pert.increments))
        for cmp in _compare(before, after, perturbed):
            if not cmp.compliant:
                violations.append(
                    Violation(
                        description=f"trial {trial}",
                        period=cmp.period,
                        level_before=cmp.level_before,
                        level_after=cmp.level_after,
                        perturbation=pert,
                    )
                )
    return MonotonicityReport(
        method=before.method, trials=trials, violations=tuple(violations)
    )


def melser_diagnostic(
    ds: Dataset, characteristic: str, period0: str, period1: str
) -> float:
    """Point-biserial correlation between period membership and a characteristic.

    Membership is 0 for ``period0`` and 1 for ``period1``. A magnitude
    near zero signals low risk of time-dummy monotonicity violations; a
    strong association is the known precondition for them.
    """
    parts = partition_by_period(ds)
    for label in (period0, period1):
        if label not in parts:
            raise ModelError(f"period {label!r} not present in dataset")
    values = np.array(
        [characteristic_value(o, characteristic) for o in parts[period0]]
        + [characteristic_value(o, characteristic) for o in parts[period1]]
    )
    membership = np.array([0.0] * len(parts[period0]) + [1.0] * len(parts[period1]))

    x_centered = values - values.mean()
    d_centered = membership - membership.mean()
    x_ss = float(x_centered @ x_centered)
    d_ss = float(d_centered @ d_centered)
    if x_ss == 0.0:
        raise ModelError(
            f"characteristic {characteristic!r} has zero variance across "
            f"periods {period0!r} and {period1!r}"
        )
    return float((x_centered @ d_centered) / math.sqrt(x_ss * d_ss))


def melser_significance(
    ds: Dataset, characteristic: str, period0: str, period1: str
) -> tuple[float, float, float]:
    """Diagnostic correlation with its two-sample t test.

    Returns (correlation, t statistic, two-sided p-value). The t test of
    the point-biserial correlation is the pooled two-sample t test for a
    mean difference between the two periods.
    """
    r = melser_diagnostic(ds, characteristic, period0, period1)
    parts = partition_by_period(ds)
    n = len(parts[period0]) + len(parts[period1])
    if n <= 2:
        raise ModelError("significance test needs more than two observations")
    if abs(r) >= 1.0:
        raise ModelError("correlation magnitude 1 leaves no residual variance")
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return r, t, student_t_two_sided_p(t, n - 2)
