import math

import pytest

from birthdeath import expr_model, make_context, simulate

import oracles


def test_reproducible_bit_identical(mctx):
    model = expr_model("1", "2", mctx)
    a = simulate(model, 2, 500, 50.0, 31337)
    b = simulate(model, 2, 500, 50.0, 31337)
    assert a == b


def test_single_run_determinism(mctx):
    model = expr_model("1", "n", mctx)
    a = simulate(model, 1, 1, 100.0, 5)
    b = simulate(model, 1, 1, 100.0, 5)
    assert a == b
    assert a.extinct_runs + a.censored_runs == 1


def test_different_seeds_differ(mctx):
    model = expr_model("1", "2", mctx)
    a = simulate(model, 1, 2000, 50.0, 1)
    b = simulate(model, 1, 2000, 50.0, 2)
    assert a.mean_time_estimate != b.mean_time_estimate


def test_counts_add_up_and_probability_in_range(mctx):
    model = expr_model("2", "1", mctx)
    stats = simulate(model, 1, 3000, 5.0, 99)
    assert stats.extinct_runs + stats.censored_runs == stats.runs == 3000
    assert 0.0 <= stats.extinction_probability_estimate <= 1.0
    assert stats.censored_runs > 0


def test_raising_cap_never_loses_extinctions(mctx):
    model = expr_model("2", "1", mctx)
    extinct = [simulate(model, 1, 3000, cap, 7).extinct_runs
               for cap in (0.5, 1.0, 3.0, 10.0)]
    assert extinct == sorted(extinct)
    assert extinct[0] < extinct[-1]


def test_subcritical_mean_matches_closed_form(mctx):
    # omega_1 = 1/(mu - lam) = 1 for lam=1, mu=2
    model = expr_model("1", "2", mctx)
    stats = simulate(model, 1, 20000, 100.0, 42)
    assert stats.censored_runs == 0
    ref = oracles.geometric_omega(1.0, 2.0, 1)
    assert abs(stats.mean_time_estimate - ref) <= 3 * stats.std_error_time


def test_supercritical_extinction_probability(mctx):
    # a_1 = mu/lam = 1/2 for lam=2, mu=1
    model = expr_model("2", "1", mctx)
    stats = simulate(model, 1, 20000, 30.0, 42)
    ref = oracles.geometric_extinction(2.0, 1.0, 1)
    assert abs(stats.extinction_probability_estimate - ref) <= 3 * stats.std_error_prob


def test_agreement_across_20_seeds(mctx):
    # omega_2 = 2 for lam=1, mu=2; demand >= 95% of seeds within 4 se
    model = expr_model("1", "2", mctx)
    hits = 0
    for seed in range(20):
        stats = simulate(model, 2, 3000, 200.0, seed)
        z = abs(stats.mean_time_estimate - 2.0) / stats.std_error_time
        hits += z < 4.0
    assert hits >= 19


def test_all_censored_gives_nan_time_estimate(mctx):
    model = expr_model("100", "0.0001", mctx)  # extinction effectively never
    stats = simulate(model, 50, 20, 0.5, 3)
    assert stats.extinct_runs == 0
    assert math.isnan(stats.mean_time_estimate)
    assert math.isnan(stats.std_error_time)
    assert stats.extinction_probability_estimate == 0.0


def test_validation(mctx):
    model = expr_model("1", "2", mctx)
    with pytest.raises(ValueError):
        simulate(model, 0, 10, 1.0, 0)
    with pytest.raises(ValueError):
        simulate(model, 1, 0, 1.0, 0)
    with pytest.raises(ValueError):
        simulate(model, 1, 10, 0.0, 0)


def test_extended_context_model_is_fine_machine_sim():
    # simulation always runs in machine floats, whatever the model context
    ctx = make_context("extended", 30)
    model = expr_model("1", "2", ctx)
    stats = simulate(model, 1, 200, 50.0, 11)
    assert stats.extinct_runs == 200
    assert isinstance(stats.mean_time_estimate, float)
