from decimal import Decimal

import pytest

from birthdeath import (
    FINITE,
    INFINITE,
    NAIVE_RECURSION,
    NOT_CERTAIN_EXTINCTION,
    Finite,
    Infinite,
    RateModel,
    SeriesPolicy,
    delta_residual,
    delta_series,
    expr_model,
    first_violation,
    make_context,
    omega_naive,
    omega_stable,
    recurrence_residual,
)

import oracles


def test_delta0_is_e_minus_one(mctx):
    out = delta_series(expr_model("1", "n", mctx), 0, mctx)
    assert isinstance(out, Finite)
    assert oracles.rel_err_decimal(out.value.literal(), oracles.OMEGA_1) < 1e-12


def test_delta1_against_direct_summation_oracle(mctx):
    out = delta_series(expr_model("1", "n", mctx), 1, mctx)
    direct = oracles.passage_time_direct(lambda n: 1, lambda n: n, 1, terms=60)
    assert oracles.rel_err_decimal(out.value.literal(), direct) < 1e-13
    # and the direct sum itself is e - 2
    assert abs(direct - Decimal(oracles.DELTA_1)) < Decimal("1e-30")


def test_delta_series_extended_vs_oracle():
    ctx = make_context("extended", 30)
    model = expr_model("1", "n", ctx)
    for i in range(5):
        out = delta_series(model, i, ctx)
        direct = oracles.passage_time_direct(lambda n: 1, lambda n: n, i, terms=80)
        assert oracles.rel_err_decimal(out.value.literal(), direct) < 1e-27


def test_delta_divergent_when_rates_balance(mctx):
    out = delta_series(expr_model("1", "1", mctx), 0, mctx)
    assert isinstance(out, Infinite)


def test_delta_geometric_closed_form(mctx):
    out = delta_series(expr_model("1", "2", mctx), 7, mctx)
    assert abs(float(out.value) - 1.0) < 1e-12


def test_omega_stable_small_values(mctx):
    report = omega_stable(expr_model("1", "n", mctx), 2, mctx)
    assert report.classification == FINITE
    assert float(report.omega[0]) == 0.0
    assert oracles.rel_err_decimal(report.omega[1].literal(), oracles.OMEGA_1) < 1e-12
    assert oracles.rel_err_decimal(report.omega[2].literal(), oracles.OMEGA_2) < 1e-12


def test_omega_stable_geometric_is_exact_here(mctx):
    report = omega_stable(expr_model("1", "2", mctx), 3, mctx)
    assert [float(x) for x in report.omega] == [0.0, 1.0, 2.0, 3.0]


def test_omega_refuses_uncertain_extinction(mctx):
    report = omega_stable(expr_model("2", "1", mctx), 1, mctx)
    assert report.classification == NOT_CERTAIN_EXTINCTION
    assert report.delta == []
    assert float(report.omega[0]) == 0.0


def test_omega_infinite_classification(mctx):
    report = omega_stable(expr_model("1", "1", mctx), 3, mctx)
    assert report.classification == INFINITE
    assert float(report.omega[0]) == 0.0
    assert all(x.is_infinite() for x in report.omega[1:])
    assert all(x.is_infinite() for x in report.delta)
    assert len(report.per_delta_terms) == 3


def test_omega_accumulates_prefix_sums_exactly(mctx):
    report = omega_stable(expr_model("1", "n", mctx), 8, mctx)
    acc = mctx.zero()
    for i, d in enumerate(report.delta):
        acc = acc + d
        assert report.omega[i + 1] == acc


def test_omega_monotone_when_finite(mctx):
    report = omega_stable(expr_model("1", "n", mctx), 50, mctx)
    for i in range(1, 51):
        assert float(report.omega[i]) > float(report.omega[i - 1])


def test_naive_benign_case_no_violations(mctx):
    report = omega_naive(expr_model("1", "2", mctx), 5, mctx)
    assert report.method == NAIVE_RECURSION
    assert [float(x) for x in report.omega] == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]
    assert report.violations == []


def test_naive_mirrors_refusals(mctx):
    report = omega_naive(expr_model("2", "1", mctx), 2, mctx)
    assert report.classification == NOT_CERTAIN_EXTINCTION
    assert report.method == NAIVE_RECURSION
    inf_report = omega_naive(expr_model("1", "1", mctx), 2, mctx)
    assert inf_report.classification == INFINITE


def test_naive_breakdown_at_machine_precision(mctx):
    report = omega_naive(expr_model("1", "n", mctx), 30, mctx)
    first = first_violation(report.violations)
    assert first is not None
    assert first.index <= 25


def test_naive_agrees_with_stable_before_breakdown(mctx):
    stable = omega_stable(expr_model("1", "n", mctx), 10, mctx)
    naive = omega_naive(expr_model("1", "n", mctx), 10, mctx)
    for i in range(1, 11):
        s, n = float(stable.omega[i]), float(naive.omega[i])
        assert abs(s - n) <= 1e-8 * s


def test_recurrence_residual_exact_cases(mctx):
    m12 = expr_model("1", "2", mctx)
    omega = [mctx.real(x) for x in (0, 1, 2, 3)]
    assert float(recurrence_residual(m12, omega, 1, mctx)) == 0.0
    assert float(recurrence_residual(m12, omega, 2, mctx)) == 0.0
    m11 = expr_model("1", "1", mctx)
    wrong = [mctx.real(x) for x in (0, 1, 3, 1)]
    assert float(recurrence_residual(m11, wrong, 1, mctx)) == -1.0


def test_recurrence_residual_bounds_checked(mctx):
    m = expr_model("1", "2", mctx)
    omega = [mctx.zero(), mctx.one()]
    with pytest.raises(ValueError):
        recurrence_residual(m, omega, 0, mctx)
    with pytest.raises(ValueError):
        recurrence_residual(m, omega, 1, mctx)


def test_recurrence_residual_invariant_machine(mctx):
    policy = SeriesPolicy.default(mctx)
    model = expr_model("1", "n", mctx)
    report = omega_stable(model, 30, mctx, policy)
    tol = float(policy.rel_tol)
    for i in range(1, 30):
        res = float(recurrence_residual(model, report.omega, i, mctx))
        bound = 100 * tol * max(1.0, float(report.omega[i + 1]))
        assert abs(res) <= bound


def test_recurrence_residual_small_at_30_digits():
    ctx = make_context("extended", 30)
    model = expr_model("1", "n", ctx)
    report = omega_stable(model, 8, ctx)
    res = recurrence_residual(model, report.omega, 5, ctx)
    assert abs(Decimal(res.literal())) < Decimal("1e-25")


def test_delta_residual_exact_cases(mctx):
    m12 = expr_model("1", "2", mctx)
    ones = [mctx.one()] * 8
    assert float(delta_residual(m12, ones, 5, mctx)) == 0.0
    m11 = expr_model("1", "1", mctx)
    assert float(delta_residual(m11, [mctx.one(), mctx.one()], 1, mctx)) == 1.0


def test_delta_residual_invariant_on_stable_deltas(mctx):
    policy = SeriesPolicy.default(mctx)
    model = expr_model("1", "n", mctx)
    report = omega_stable(model, 20, mctx, policy)
    tol = float(policy.rel_tol)
    for i in range(1, 20):
        res = float(delta_residual(model, report.delta, i, mctx))
        scale = float(report.delta[i - 1]) * float(model.death(i)) / float(model.birth(i))
        assert abs(res) <= 100 * tol * max(1.0, scale)


def test_delta_independent_of_lower_rates(mctx):
    base = expr_model("1", "n", mctx)
    i = 5

    def perturbed_birth(n):
        return mctx.real("99.5") if n <= i else mctx.one()

    def perturbed_death(n):
        return mctx.real("0.125") if n <= i else mctx.real(n)

    perturbed = RateModel(perturbed_birth, perturbed_death, label="perturbed low states")
    a = delta_series(base, i, mctx)
    b = delta_series(perturbed, i, mctx)
    assert a.value.literal() == b.value.literal()
    assert a.terms == b.terms


def test_naive_at_higher_precision_breaks_later():
    ctx = make_context("extended", 40)
    report = omega_naive(expr_model("1", "n", ctx), 40, ctx)
    first = first_violation(report.violations)
    assert first is not None
    assert 25 <= first.index <= 40


def test_imax_validation(mctx):
    with pytest.raises(ValueError):
        omega_stable(expr_model("1", "2", mctx), 0, mctx)
    with pytest.raises(ValueError):
        delta_series(expr_model("1", "2", mctx), -1, mctx)
