"""Truncation policy and verdict machinery for positive infinite series.

Every infinite sum in this package (the extinction normalizer and each
expected-passage-time series) runs through :func:`sum_positive_series`,
which accumulates terms until it can defend one of three verdicts:

* ``Converged`` -- the latest term is below ``rel_tol`` of the running
  sum AND the last ``divergence_window`` consecutive term ratios were
  below 1, so the tail is a controlled geometric remainder.
* ``Diverged`` -- ``divergence_window`` consecutive ratios at or above
  ``divergence_ratio``, or the running sum overflowed; both are decisive.
  Hitting the term budget with ratios straddling 1 while the tail test
  keeps failing is also reported as divergence, flagged low-confidence.
* :class:`InconclusiveSeriesError` -- the term budget ran out with no
  defensible verdict (e.g. harmonic-like terms that shrink but whose sum
  still grows); the caller must choose, not the summator.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Union

from .arithmetic import Real, RealContext
from .errors import InconclusiveSeriesError

__all__ = ["SeriesPolicy", "Converged", "Diverged", "SeriesOutcome", "sum_positive_series"]


@dataclass(frozen=True)
class SeriesPolicy:
    """Knobs deciding when a numerically summed series is settled.

    rel_tol: relative tail tolerance, 0 < rel_tol < 1.
    max_terms: hard budget before giving up.
    divergence_ratio: consecutive-term ratio counted as growth (>= 1).
    divergence_window: how many consecutive ratios must agree before a
        ratio-based verdict (max_terms >= window >= 1).
    """

    rel_tol: Real
    max_terms: int
    divergence_ratio: Real
    divergence_window: int

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.rel_tol < 1):
            raise ValueError("rel_tol must satisfy 0 < rel_tol < 1")
        if self.divergence_ratio < 1:
            raise ValueError("divergence_ratio must be >= 1")
        if not (self.max_terms >= self.divergence_window >= 1):
            raise ValueError("need max_terms >= divergence_window >= 1")

    @classmethod
    def default(cls, ctx: RealContext) -> "SeriesPolicy":
        """Context-scaled defaults: tail tolerance two digits above epsilon."""
        if ctx.is_machine:
            rel_tol = ctx.real("1e-14")
        else:
            rel_tol = ctx.real(f"1e-{ctx.digits - 2}")
        return cls(
            rel_tol=rel_tol,
            max_terms=10 ** 6,
            divergence_ratio=ctx.one(),
            divergence_window=64,
        )


@dataclass(frozen=True)
class Converged:
    total: Real
    terms: int


@dataclass(frozen=True)
class Diverged:
    terms: int
    low_confidence: bool = False


SeriesOutcome = Union[Converged, Diverged]

# ratio categories relative to 1 and to the divergence threshold
_BELOW_ONE, _BETWEEN, _GROWING = 0, 1, 2


def sum_positive_series(
    terms: Iterator[Real], ctx: RealContext, policy: SeriesPolicy
) -> SeriesOutcome:
    """Sum a series of positive terms under ``policy``.

    The iterator must yield terms in order; a term equal to zero ends the
    series immediately (at working precision the remaining tail is exactly
    zero, since term recurrences only multiply).
    """
    total = ctx.zero()
    prev: Real | None = None
    window = policy.divergence_window
    recent: deque[int] = deque(maxlen=window)
    below_streak = 0
    growing_streak = 0
    ratio_is_plain = policy.divergence_ratio == 1
    count = 0
    it = iter(terms)

    while count < policy.max_terms:
        # overflow while producing or accumulating a term is decisive growth
        try:
            term = next(it)
        except OverflowError:
            return Diverged(count + 1)
        except StopIteration:
            raise InconclusiveSeriesError(count, "series terms ended unexpectedly") from None
        count += 1
        try:
            if term.is_zero():
                return Converged(total, count)
            if prev is not None:
                if term < prev:
                    cat = _BELOW_ONE
                elif ratio_is_plain or term >= policy.divergence_ratio * prev:
                    cat = _GROWING
                else:
                    cat = _BETWEEN
                recent.append(cat)
                below_streak = below_streak + 1 if cat == _BELOW_ONE else 0
                growing_streak = growing_streak + 1 if cat == _GROWING else 0
            total = total + term
        except OverflowError:
            return Diverged(count)
        if growing_streak >= window:
            return Diverged(count)
        if below_streak >= window and term < policy.rel_tol * total:
            return Converged(total, count)
        prev = term

    # Budget exhausted without a streak verdict: judge the last window.
    saw_below = any(c == _BELOW_ONE for c in recent)
    saw_growth = any(c != _BELOW_ONE for c in recent)
    tail_failing = prev is not None and not (prev < policy.rel_tol * total)
    if saw_growth and not saw_below:
        # every recent ratio >= 1: the terms are not shrinking
        return Diverged(count)
    if saw_growth and saw_below and tail_failing:
        return Diverged(count, low_confidence=True)
    raise InconclusiveSeriesError(count)
