"""The step-size bound table, violation demo, convergence study and the
oscillating-recruitment counterexample, as reusable functions.

The CLI and the runnable scripts are thin wrappers around these; everything
here is deterministic (fixed row order, fixed seeds), so repeated runs give
byte-identical CSV output.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import IO, Optional, Sequence

import numpy as np

from .checks import (
    check_nonnegativity,
    check_population_bound,
    detect_oscillation,
    find_empirical_bound,
    Verdict,
)
from .config import ExperimentConfig
from .model import (
    IncidenceFunction,
    ModelParams,
    ProblemSetup,
    RecruitmentFunction,
    State,
    counterexample_cosine_recruitment,
    holling_incidence,
    linear_incidence,
    media_incidence,
    recruitment_from_key,
)
from .reference import reference_trajectory
from .shu_osher import ShuOsherForm, builtin_method
from .step_bounds import bound_report, population_cap
from .stepping import IntegrationOverflowError, Trajectory, integrate

__all__ = [
    "BoundsRow",
    "CounterexampleReport",
    "ConvergenceResult",
    "SweepReport",
    "bounds_table",
    "write_bounds_table_csv",
    "run_simulation",
    "convergence_study",
    "write_convergence_csv",
    "counterexample_report",
    "property_sweep",
]


# ---------------------------------------------------------------------------
# bounds table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsRow:
    recruitment: str
    method: str
    tau_t: float
    tau_r: float

    @property
    def ratio(self) -> float:
        return self.tau_r / self.tau_t


def bounds_table(
    config: ExperimentConfig, include_stages: bool = False
) -> list[BoundsRow]:
    """Theoretical and empirical positivity thresholds, one row per
    recruitment choice and method, in config order."""
    rows = []
    for pi_key in config.recruitments:
        setup = config.setup(pi_key)
        for method_key in config.methods:
            method = builtin_method(method_key)
            tau_t = bound_report(setup, method, config.tf).tau_method
            tau_r = find_empirical_bound(
                setup,
                method,
                config.tf,
                bracket=(tau_t, 2.0 * tau_t),
                tol=config.bisect_tol,
                include_stages=include_stages,
            )
            rows.append(BoundsRow(pi_key, method_key, tau_t, tau_r))
    return rows


def write_bounds_table_csv(rows: Sequence[BoundsRow], out: IO[str]) -> None:
    out.write("pi,method,tau_t,tau_r,ratio\n")
    for row in rows:
        out.write(
            f"{row.recruitment},{row.method},{row.tau_t!r},{row.tau_r!r},{row.ratio!r}\n"
        )


# ---------------------------------------------------------------------------
# single simulation with verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimulationResult:
    trajectory: Trajectory
    nonnegativity: Verdict
    population: Verdict
    cap: float

    def as_text(self) -> str:
        return "\n".join(
            [
                f"steps       : {len(self.trajectory) - 1}  (tau={self.trajectory.tau!r})",
                self.nonnegativity.as_text("non-negativity"),
                self.population.as_text(f"population bound (cap {self.cap:.6g})"),
            ]
        )


def run_simulation(
    setup: ProblemSetup,
    method: ShuOsherForm,
    tau: float,
    t_f: float,
    include_stages: bool = False,
) -> SimulationResult:
    """Integrate to the horizon and attach the positivity/bound verdicts."""
    n_steps = math.ceil(t_f / tau) if tau > 0.0 else 0
    traj = integrate(
        setup.x0, tau, n_steps, method,
        setup.params, setup.incidence, setup.recruitment,
    )
    report = bound_report(setup, method, max(t_f, tau, 1.0))
    return SimulationResult(
        trajectory=traj,
        nonnegativity=check_nonnegativity(traj, include_stages),
        population=check_population_bound(traj, report.pop_cap),
        cap=report.pop_cap,
    )


# ---------------------------------------------------------------------------
# convergence order study
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceResult:
    method: str
    taus: tuple[float, ...]
    errors: tuple[float, ...]
    slope: float


def _max_norm_error(traj: Trajectory, tau: float, ref_times, ref_states) -> float:
    err = 0.0
    for t, ref in zip(ref_times, ref_states):
        k = round(t / tau)
        x = traj.states[k]
        err = max(
            err,
            abs(x.s - ref.s),
            abs(x.e - ref.e),
            abs(x.i - ref.i),
            abs(x.r - ref.r),
        )
    return err


def convergence_study(
    config: ExperimentConfig,
    method_keys: Optional[Sequence[str]] = None,
    recruitment_key: str = "choiceA",
    n_outputs: int = 50,
    halvings: int = 8,
    fit_points: int = 5,
) -> list[ConvergenceResult]:
    """Max-norm error against the fine fourth-order reference vs step size.

    For each method the step sizes are tau_t * 2^-k (k = 1..halvings),
    shrunk minimally so the shared output times lie on each step grid; the
    order is the least-squares slope of log2(error) against log2(tau) over
    the ``fit_points`` smallest steps.
    """
    if method_keys is None:
        method_keys = config.methods
    setup = config.setup(recruitment_key)
    spacing = config.tf / n_outputs
    output_times = [spacing * (k + 1) for k in range(n_outputs)]
    reference = reference_trajectory(setup, config.tf, output_times)
    results = []
    for method_key in method_keys:
        method = builtin_method(method_key)
        tau_t = bound_report(setup, method, config.tf).tau_method
        taus = []
        errors = []
        for k in range(1, halvings + 1):
            tau_nominal = tau_t * 2.0**-k
            per_output = max(1, math.ceil(spacing / tau_nominal - 1e-12))
            tau = spacing / per_output
            n_steps = round(config.tf / tau)
            traj = integrate(
                setup.x0, tau, n_steps, method,
                setup.params, setup.incidence, setup.recruitment,
            )
            taus.append(tau)
            errors.append(
                _max_norm_error(traj, tau, reference.times, reference.states)
            )
        log_tau = np.log2(taus[-fit_points:])
        log_err = np.log2(errors[-fit_points:])
        slope = float(np.polyfit(log_tau, log_err, 1)[0])
        results.append(
            ConvergenceResult(method_key, tuple(taus), tuple(errors), slope)
        )
    return results


def write_convergence_csv(
    results: Sequence[ConvergenceResult], out: IO[str]
) -> None:
    out.write("method,tau,error\n")
    for res in results:
        for tau, err in zip(res.taus, res.errors):
            out.write(f"{res.method},{tau!r},{err!r}\n")


def write_slopes_csv(results: Sequence[ConvergenceResult], out: IO[str]) -> None:
    out.write("method,slope\n")
    for res in results:
        out.write(f"{res.method},{res.slope!r}\n")


# ---------------------------------------------------------------------------
# oscillating-recruitment counterexample
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleReport:
    even_limit: float
    odd_limit: float
    gap_tail_min: float
    gap_tail_max: float
    trajectory: Trajectory

    def as_text(self) -> str:
        return "\n".join(
            [
                "oscillating recruitment, forward Euler, mu=1, tau=1/2, N0=2",
                f"even-step population limit : {self.even_limit!r}  (expected 4/3)",
                f"odd-step population limit  : {self.odd_limit!r}  (expected 2/3)",
                f"tail gap |N - pi/mu| range : [{self.gap_tail_min!r}, {self.gap_tail_max!r}]",
                "the gap stays bounded away from zero: no convergence to pi/mu",
            ]
        )


def counterexample_report(
    n_steps: int = 500, tail: int = 100
) -> CounterexampleReport:
    """Run the mu=1, tau=1/2, N0=2 oscillating-recruitment configuration.

    All mass starts in S with the other flows switched off, so the total
    population follows N{n+1} = N{n}/2 + pi(t_n)/2 exactly and splits into
    even/odd subsequences with distinct limits.
    """
    params = ModelParams(mu=1.0, sigma=0.0, gamma=0.0, delta=0.0)
    pi = counterexample_cosine_recruitment()
    setup = ProblemSetup(params, linear_incidence(), pi, State(2.0, 0.0, 0.0, 0.0))
    tau = 0.5
    traj = integrate(
        setup.x0, tau, n_steps, builtin_method("euler"),
        params, setup.incidence, pi,
    )
    even_limit, odd_limit = detect_oscillation(traj, period=2)
    gaps = [
        abs(x.total - pi.fn(x.t) / params.mu) for x in traj.states[-tail:]
    ]
    return CounterexampleReport(
        even_limit=even_limit,
        odd_limit=odd_limit,
        gap_tail_min=min(gaps),
        gap_tail_max=max(gaps),
        trajectory=traj,
    )


# ---------------------------------------------------------------------------
# randomized theorem-guarantee sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    n_configs: int
    n_runs: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def _sweep_catalog(rng: random.Random) -> tuple[IncidenceFunction, RecruitmentFunction]:
    incidence = rng.choice(
        [linear_incidence(), holling_incidence(1.0, 1.0, 2.0), media_incidence(0.0115, 0.001)]
    )
    pi_key = rng.choice(["choiceA", "choiceB", "choiceC", "const", "cex-cos"])
    return incidence, recruitment_from_key(pi_key, kappa=0.05, p=0.05)


def property_sweep(
    n_configs: int = 200,
    n_steps: int = 100,
    seed: int = 20240501,
    method_keys: Sequence[str] = ("euler", "ssprk22", "ssprk33", "ssprk104"),
) -> SweepReport:
    """Randomized check of the positivity and population-cap guarantees.

    Draws random rates in [0,1], random non-negative initial data, catalog
    incidence/recruitment pairs and a step size below the method bound; every
    run must keep all compartments non-negative and the total population
    below N0 + K/mu.
    """
    rng = random.Random(seed)
    methods = [builtin_method(key) for key in method_keys]
    failures: list[str] = []
    n_runs = 0
    for idx in range(n_configs):
        params = ModelParams(
            rng.uniform(1e-6, 1.0), rng.uniform(0.0, 1.0),
            rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
        )
        incidence, pi = _sweep_catalog(rng)
        x0 = State(
            rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0),
            rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0),
        )
        setup = ProblemSetup(params, incidence, pi, x0)
        fraction = rng.uniform(1e-3, 1.0)
        for method in methods:
            # grow the bound horizon until it covers the run it implies
            horizon = 1000.0
            report = bound_report(setup, method, horizon)
            while n_steps * report.tau_method > horizon:
                horizon = 2.0 * n_steps * report.tau_method
                report = bound_report(setup, method, horizon)
            tau = fraction * report.tau_method
            label = (
                f"config {idx} ({incidence.key}/{pi.key}), method {method.key}, "
                f"tau={tau!r}"
            )
            try:
                traj = integrate(
                    x0, tau, n_steps, method, params, incidence, pi
                )
            except IntegrationOverflowError as exc:
                failures.append(f"{label}: overflow at step {exc.step_index}")
                continue
            n_runs += 1
            verdict = check_nonnegativity(traj)
            if not verdict.passed:
                failures.append(f"{label}: {verdict.as_text('non-negativity')}")
            cap = population_cap(x0.total, report.k_sup, params.mu)
            pop = check_population_bound(traj, cap.cap)
            if not pop.passed:
                failures.append(f"{label}: {pop.as_text('population bound')}")
    return SweepReport(n_configs, n_runs, failures)
