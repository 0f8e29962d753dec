"""Expected time to absorption at state 0, when extinction is certain.

delta_i denotes the expected time to first reach state i starting from
state i+1.  It admits the series

    delta_i = sum over n > i of (1/lambda_n) * prod_{j=i+1..n} lambda_j/mu_j

whose terms follow the recurrence t_{i+1} = 1/mu_{i+1} and
t_{n+1} = t_n * lambda_n / mu_{n+1} (linear cost, no re-multiplied
products).  The expected time to extinction from state i is the prefix
sum omega_i = delta_0 + ... + delta_{i-1}, with omega_0 = 0.

The alternative textbook route runs the forward three-term recursion

    omega_{i+1} = (1 + mu_i/lambda_i) omega_i - (mu_i/lambda_i) omega_{i-1}
                  - 1/lambda_i

starting from omega_1 = delta_0.  Its homogeneous solutions grow like the
products of mu/lambda ratios, so rounding errors are amplified until the
output turns nonsensical; raising the working precision only postpones
the index where that happens.  :func:`omega_naive` implements it anyway,
compares against the stable engine, and records violations instead of
repairing them, so the breakdown stays observable.

Note delta_i never depends on rates at states <= i (the series above only
queries higher states), which is what pins the homogeneous component to
zero; :func:`delta_residual` makes that checkable numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Union

from .arithmetic import Real, RealContext
from .rates import RateModel
from .reports import (
    FINITE,
    INFINITE,
    NAIVE_RECURSION,
    NOT_CERTAIN_EXTINCTION,
    STABLE_SERIES,
    VIOLATION_DEVIATION,
    VIOLATION_NEGATIVE,
    VIOLATION_NON_MONOTONE,
    VIOLATION_OVERFLOW,
    HittingTimeReport,
    Violation,
)
from .series import Converged, SeriesPolicy, sum_positive_series
from .extinction import extinction_sum

__all__ = [
    "Finite",
    "Infinite",
    "DeltaOutcome",
    "delta_series",
    "omega_stable",
    "omega_naive",
    "recurrence_residual",
    "delta_residual",
]


@dataclass(frozen=True)
class Finite:
    value: Real
    terms: int


@dataclass(frozen=True)
class Infinite:
    terms: int
    low_confidence: bool = False


DeltaOutcome = Union[Finite, Infinite]


def _delta_terms(model: RateModel, i: int, ctx: RealContext) -> Iterator[Real]:
    term = ctx.one() / model.death(i + 1)
    yield term
    n = i + 1
    while True:
        term = term * model.birth(n) / model.death(n + 1)
        yield term
        n += 1


def delta_series(
    model: RateModel, i: int, ctx: RealContext, policy: SeriesPolicy | None = None
) -> DeltaOutcome:
    """Expected first-passage time from state i+1 down to state i.

    Only queries rates at states strictly above i.  Divergence of the
    series means the expected time is infinite.
    """
    if i < 0:
        raise ValueError(f"i must be >= 0, got {i}")
    if policy is None:
        policy = SeriesPolicy.default(ctx)
    outcome = sum_positive_series(_delta_terms(model, i, ctx), ctx, policy)
    if isinstance(outcome, Converged):
        return Finite(outcome.total, outcome.terms)
    return Infinite(outcome.terms, outcome.low_confidence)


def omega_stable(
    model: RateModel,
    i_max: int,
    ctx: RealContext,
    policy: SeriesPolicy | None = None,
) -> HittingTimeReport:
    """Expected times to extinction omega[0..i_max] via per-step series.

    Refuses (classification ``NotCertainExtinction``) when the extinction
    probability is below one, since the unconditional expected time is not
    the quantity anyone wants there.  If some delta diverges, every later
    omega is infinite and is reported as such.
    """
    if i_max < 1:
        raise ValueError(f"i_max must be >= 1, got {i_max}")
    if policy is None:
        policy = SeriesPolicy.default(ctx)
    if isinstance(extinction_sum(model, ctx, policy), Converged):
        return HittingTimeReport(
            classification=NOT_CERTAIN_EXTINCTION,
            delta=[],
            omega=[ctx.zero()],
            method=STABLE_SERIES,
            per_delta_terms=[],
        )
    delta: list[Real] = []
    omega: list[Real] = [ctx.zero()]
    per_terms: list[int] = []
    inf = ctx.infinity()
    for i in range(i_max):
        outcome = delta_series(model, i, ctx, policy)
        if isinstance(outcome, Infinite):
            # once one step has infinite expectation, all later ones do too
            per_terms.append(outcome.terms)
            per_terms.extend(0 for _ in range(i + 1, i_max))
            delta.extend(inf for _ in range(i, i_max))
            omega.extend(inf for _ in range(i + 1, i_max + 1))
            return HittingTimeReport(
                classification=INFINITE,
                delta=delta,
                omega=omega,
                method=STABLE_SERIES,
                per_delta_terms=per_terms,
            )
        delta.append(outcome.value)
        omega.append(omega[-1] + outcome.value)
        per_terms.append(outcome.terms)
    return HittingTimeReport(
        classification=FINITE,
        delta=delta,
        omega=omega,
        method=STABLE_SERIES,
        per_delta_terms=per_terms,
    )


def omega_naive(
    model: RateModel,
    i_max: int,
    ctx: RealContext,
    policy: SeriesPolicy | None = None,
) -> HittingTimeReport:
    """Expected times to extinction via the forward recursion, for comparison.

    Mirrors :func:`omega_stable` when extinction is uncertain or the
    expected time is infinite.  Otherwise seeds omega_1 with the series
    value and recurses forward, recording per-index violations: negative
    values, non-monotone steps, and relative deviation from the stable
    value above 1.
    """
    stable = omega_stable(model, i_max, ctx, policy)
    if stable.classification != FINITE:
        return replace(stable, method=NAIVE_RECURSION)
    one = ctx.one()
    omega = [ctx.zero(), stable.delta[0]]
    violations: list[Violation] = []
    for i in range(1, i_max):
        ratio = model.death(i) / model.birth(i)
        try:
            nxt = (one + ratio) * omega[i] - ratio * omega[i - 1] - one / model.birth(i)
        except OverflowError:
            violations.append(Violation(i + 1, VIOLATION_OVERFLOW))
            break
        omega.append(nxt)
    for i in range(1, len(omega)):
        if omega[i] < 0:
            violations.append(Violation(i, VIOLATION_NEGATIVE))
        if omega[i] <= omega[i - 1]:
            violations.append(Violation(i, VIOLATION_NON_MONOTONE))
        deviation = abs(omega[i] - stable.omega[i]) / stable.omega[i]
        if deviation > 1:
            violations.append(Violation(i, VIOLATION_DEVIATION))
    violations.sort(key=lambda v: v.index)
    delta = [omega[i + 1] - omega[i] for i in range(len(omega) - 1)]
    return HittingTimeReport(
        classification=FINITE,
        delta=delta,
        omega=omega,
        method=NAIVE_RECURSION,
        per_delta_terms=stable.per_delta_terms[:1],
        violations=violations,
    )


def recurrence_residual(
    model: RateModel, omega: list[Real], i: int, ctx: RealContext
) -> Real:
    """How far omega[i] is from the one-transition balance at state i.

    Zero (up to rounding) for a correct sequence: conditioning on the next
    transition, omega_i must equal the rate-weighted mix of its neighbors
    plus the expected holding time 1/(lambda_i + mu_i).
    """
    if i < 1 or i + 1 >= len(omega):
        raise ValueError(f"need 1 <= i and i+1 < len(omega), got i={i}")
    lam = model.birth(i)
    mu = model.death(i)
    one = ctx.one()
    return omega[i] - (lam * omega[i + 1] + mu * omega[i - 1] + one) / (lam + mu)


def delta_residual(
    model: RateModel, delta: list[Real], i: int, ctx: RealContext
) -> Real:
    """Residual of the first-order step relation between delta[i-1] and delta[i].

    Independent series values must satisfy
    delta_i = (mu_i/lambda_i) delta_{i-1} - 1/lambda_i up to rounding.
    """
    if not 1 <= i < len(delta):
        raise ValueError(f"need 1 <= i < len(delta), got i={i}")
    lam = model.birth(i)
    mu = model.death(i)
    one = ctx.one()
    return delta[i] - ((mu / lam) * delta[i - 1] - one / lam)
