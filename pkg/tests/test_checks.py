"""Trajectory verdicts, oscillation detection and the threshold search."""

import math

import pytest

from ssp_seir.checks import (
    InsufficientDataError,
    Verdict,
    check_limit,
    check_nonnegativity,
    check_population_bound,
    detect_oscillation,
    find_empirical_bound,
)
from ssp_seir.model import (
    ModelParams,
    ProblemSetup,
    State,
    constant_recruitment,
    counterexample_cosine_recruitment,
    linear_incidence,
    media_incidence,
    recruitment_from_key,
)
from ssp_seir.shu_osher import builtin_method
from ssp_seir.step_bounds import bound_report
from ssp_seir.stepping import integrate

EXPERIMENT_PARAMS = ModelParams(0.05, 0.25, 0.1867, 0.011)


def _experiment_setup(pi_key):
    return ProblemSetup(
        EXPERIMENT_PARAMS,
        media_incidence(0.0115, 0.001),
        recruitment_from_key(pi_key),
        State(0.2, 0.6, 0.2, 0.0),
    )


def _run(setup, method_key, tau, t_f):
    return integrate(
        setup.x0, tau, math.ceil(t_f / tau), builtin_method(method_key),
        setup.params, setup.incidence, setup.recruitment,
    )


def test_nonnegativity_passes_below_threshold():
    traj = _run(_experiment_setup("choiceC"), "ssprk22", 3.3, 30.0)
    assert check_nonnegativity(traj).passed


def test_nonnegativity_fails_above_threshold_with_witness():
    traj = _run(_experiment_setup("choiceC"), "ssprk22", 4.8, 30.0)
    verdict = check_nonnegativity(traj)
    assert not verdict.passed
    assert verdict.witness_compartment == "I"
    assert verdict.witness_value < 0.0
    assert "FAIL" in verdict.as_text("nonneg")
    assert verdict.as_csv_row("nonneg").startswith("nonneg,fail,")


def test_nonnegativity_on_identically_zero_trajectory():
    traj = integrate(
        State(0.0, 0.0, 0.0, 0.0), 0.5, 40, builtin_method("euler"),
        EXPERIMENT_PARAMS, linear_incidence(), constant_recruitment(0.0),
    )
    assert check_nonnegativity(traj, include_stages=True).passed


def test_population_bound_on_experiment_runs():
    for key in ("euler", "ssprk104"):
        setup = _experiment_setup("choiceB")
        report = bound_report(setup, builtin_method(key), 1000.0)
        traj = _run(setup, key, report.tau_method, 1000.0)
        assert check_population_bound(traj, report.pop_cap).passed


def test_population_bound_decay_without_recruitment():
    traj = integrate(
        State(2.0, 1.0, 0.5, 0.5), 0.5, 100, builtin_method("euler"),
        ModelParams(0.3, 0.1, 0.1, 0.1), linear_incidence(), constant_recruitment(0.0),
    )
    assert check_population_bound(traj, 4.0).passed
    assert not check_population_bound(traj, 3.999).passed


def test_population_linear_growth_exact_for_mu_zero():
    p = 0.2
    tau = 0.5
    traj = integrate(
        State(1.0, 0.0, 0.0, 0.0), tau, 50, builtin_method("euler"),
        ModelParams(0.0, 0.0, 0.0, 0.0), linear_incidence(), constant_recruitment(p),
    )
    for k, x in enumerate(traj.states):
        assert x.total == pytest.approx(1.0 + k * tau * p, rel=1e-14)


def test_check_limit_constant_recruitment_fixed_point():
    p, mu = 0.3, 0.5
    traj = integrate(
        State(4.0, 0.0, 0.0, 0.0), 0.5, 400, builtin_method("euler"),
        ModelParams(mu, 0.0, 0.0, 0.0), linear_incidence(), constant_recruitment(p),
    )
    assert check_limit(traj, p, mu) <= 1e-10
    with pytest.raises(ValueError):
        check_limit(traj, p, 0.0)


def test_check_limit_experiment_choices():
    # recruitment tends to kappa = mu, so N approaches 1
    for pi_key in ("choiceA", "choiceB", "choiceC"):
        traj = _run(_experiment_setup(pi_key), "euler", 3.0, 1000.0)
        assert check_limit(traj, 0.05, 0.05) <= 1e-2


def _oscillating_trajectory(n_steps):
    return integrate(
        State(2.0, 0.0, 0.0, 0.0), 0.5, n_steps, builtin_method("euler"),
        ModelParams(1.0, 0.0, 0.0, 0.0), linear_incidence(),
        counterexample_cosine_recruitment(),
    )


def test_detect_oscillation_two_limits():
    even, odd = detect_oscillation(_oscillating_trajectory(200), period=2)
    assert even == pytest.approx(4.0 / 3.0, abs=1e-8)
    assert odd == pytest.approx(2.0 / 3.0, abs=1e-8)


def test_even_limit_matches_fixed_point_oracle():
    # the even sub-sequence obeys x -> x/4 + 1
    x = 2.0
    for _ in range(50):
        x = x / 4.0 + 1.0
    even, _ = detect_oscillation(_oscillating_trajectory(500), period=2)
    assert even == pytest.approx(x, abs=1e-12)


def test_detect_oscillation_constant_recruitment_degenerate():
    traj = integrate(
        State(4.0, 0.0, 0.0, 0.0), 0.5, 200, builtin_method("euler"),
        ModelParams(0.5, 0.0, 0.0, 0.0), linear_incidence(), constant_recruitment(0.3),
    )
    limits = detect_oscillation(traj, period=2)
    assert all(v == pytest.approx(0.6, abs=1e-8) for v in limits)


def test_detect_oscillation_requires_enough_data():
    with pytest.raises(InsufficientDataError):
        detect_oscillation(_oscillating_trajectory(10), period=2)
    with pytest.raises(ValueError):
        detect_oscillation(_oscillating_trajectory(100), period=1)


def test_empirical_bound_linear_decay_oracle():
    # flows off except sigma: E^{n+1} = (1 - tau*(mu+sigma))*E^n, so the
    # threshold is exactly 1/(mu+sigma) = 4 (equality still non-negative)
    setup = ProblemSetup(
        ModelParams(0.0, 0.25, 0.0, 0.0),
        linear_incidence(),
        constant_recruitment(0.0),
        State(0.0, 1.0, 0.0, 0.0),
    )
    tau_r = find_empirical_bound(
        setup, builtin_method("euler"), t_f=100.0, bracket=(2.0, 3.0), tol=1e-4
    )
    assert tau_r == pytest.approx(4.0, abs=1e-4)


def test_empirical_bound_is_deterministic():
    setup = _experiment_setup("choiceC")

    def search():
        return find_empirical_bound(
            setup, builtin_method("ssprk22"), t_f=30.0, bracket=(3.3, 6.6), tol=1e-3
        )

    assert search() == search()


def test_empirical_bound_validates_inputs():
    setup = _experiment_setup("choiceA")
    with pytest.raises(ValueError):
        find_empirical_bound(setup, builtin_method("euler"), 10.0, (2.0, 1.0))
    with pytest.raises(ValueError):
        find_empirical_bound(setup, builtin_method("euler"), 10.0, (1.0, 2.0), tol=0.0)


def test_verdict_text_pass():
    assert Verdict(True).as_text("x") == "x: PASS"
    assert bool(Verdict(True)) and not bool(Verdict(False))
