"""Monte Carlo trajectory simulation, the independent cross-check.

Each run is a continuous-time walk: in state n the holding time is
exponential with rate lambda_n + mu_n and the jump goes up with
probability lambda_n / (lambda_n + mu_n), until state 0 (extinct) or the
time cap (censored).

Reproducibility contract: run r draws from a Philox counter-based stream
keyed by (seed mod 2^64, r), with exactly two uniforms consumed per
transition (holding time by inversion, then direction).  Results are
therefore bit-identical for identical inputs, independent of run order,
chunked draw sizes, or any future parallel scheduling of runs.
Aggregation uses exact float summation (math.fsum), so it is
order-independent as well.

Simulation always runs at machine precision: Monte Carlo error dwarfs
rounding, so extended precision would be theater.  Censored runs are
excluded from the time estimate, which is therefore conditional on
extinction within the cap, and are reported separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import RateModel

__all__ = ["TrajectoryStats", "simulate"]

_MASK64 = (1 << 64) - 1
_CHUNK = 256


@dataclass(frozen=True)
class TrajectoryStats:
    """Estimates over a batch of simulated trajectories.

    ``mean_time_estimate`` averages extinction times over extinct runs
    only; it and ``std_error_time`` are NaN when there are no (or fewer
    than two) extinct runs.
    """

    start_state: int
    runs: int
    extinct_runs: int
    censored_runs: int
    time_cap: float
    extinction_probability_estimate: float
    mean_time_estimate: float
    std_error_time: float
    std_error_prob: float
    seed: int


def _float_rates(model: RateModel, memo: dict, state: int):
    info = memo.get(state)
    if info is None:
        lam = float(model.birth(state))
        mu = float(model.death(state))
        total = lam + mu
        info = (1.0 / total, lam / total)
        memo[state] = info
    return info


def _run_one(gen, start: int, cap: float, model: RateModel, memo: dict):
    """One trajectory; returns (extinct, time-at-absorption-or-censor)."""
    grandom = gen.random
    state = start
    t = 0.0
    buf: list[float] = []
    idx = 0
    log = math.log
    while True:
        inv_total, p_up = _float_rates(model, memo, state)
        if idx + 2 > len(buf):
            buf = grandom(_CHUNK).tolist()
            idx = 0
        u_hold = buf[idx]
        u_dir = buf[idx + 1]
        idx += 2
        t -= log(1.0 - u_hold) * inv_total
        if t > cap:
            return False, t
        if u_dir < p_up:
            state += 1
        else:
            state -= 1
            if state == 0:
                return True, t


def simulate(
    model: RateModel,
    start_state: int,
    runs: int,
    time_cap: float,
    seed: int,
) -> TrajectoryStats:
    """Simulate ``runs`` trajectories from ``start_state``.

    Deterministic given (model, start_state, runs, time_cap, seed).
    """
    if start_state < 1:
        raise ValueError(f"start_state must be >= 1, got {start_state}")
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if not time_cap > 0:
        raise ValueError(f"time_cap must be > 0, got {time_cap}")

    memo: dict = {}
    times: list[float] = []
    key_lo = seed & _MASK64
    for r in range(runs):
        key = np.array([key_lo, r], dtype=np.uint64)
        gen = np.random.Generator(np.random.Philox(key=key))
        extinct, t = _run_one(gen, start_state, time_cap, model, memo)
        if extinct:
            times.append(t)

    extinct_runs = len(times)
    p_hat = extinct_runs / runs
    se_prob = math.sqrt(p_hat * (1.0 - p_hat) / runs)
    if extinct_runs == 0:
        mean_t = math.nan
        se_t = math.nan
    else:
        mean_t = math.fsum(times) / extinct_runs
        if extinct_runs < 2:
            se_t = math.nan
        else:
            var = math.fsum((x - mean_t) ** 2 for x in times) / (extinct_runs - 1)
            se_t = math.sqrt(var / extinct_runs)
    return TrajectoryStats(
        start_state=start_state,
        runs=runs,
        extinct_runs=extinct_runs,
        censored_runs=runs - extinct_runs,
        time_cap=float(time_cap),
        extinction_probability_estimate=p_hat,
        mean_time_estimate=mean_t,
        std_error_time=se_t,
        std_error_prob=se_prob,
        seed=seed,
    )
