"""Independent ground-truth generators.

Two oracles that never share code with the main steppers:

* the total-population solution N(t) = N0*exp(-mu*t) + integral of
  pi(s)*exp(-mu*(t-s)), evaluated by adaptive Simpson quadrature, and
* high-resolution reference trajectories for convergence-order measurement,
  generated with the ten-stage fourth-order method at a step far below its
  positivity bound, with output times forced onto the fine grid (no
  interpolation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .model import ProblemSetup, RecruitmentFunction, State
from .shu_osher import ShuOsherForm, builtin_method
from .step_bounds import bound_report
from .stepping import Trajectory, integrate

__all__ = [
    "QuadratureError",
    "ReferenceSolution",
    "adaptive_simpson",
    "exact_population",
    "reference_trajectory",
]

DEFAULT_REFINEMENT = 2.0**-10


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, achieved: float, requested: float):
        self.achieved = achieved
        self.requested = requested
        super().__init__(
            f"quadrature reached {achieved:.3e}, requested {requested:.3e}"
        )


def _simpson(fn: Callable[[float], float], a: float, fa: float, b: float, fb: float):
    m = 0.5 * (a + b)
    fm = fn(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    fn: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-9,
    max_depth: int = 48,
) -> float:
    """Adaptive composite Simpson integral of ``fn`` over [a, b].

    Interval-bisection with the standard 1/15 error estimate; raises
    :class:`QuadratureError` when the depth cap is hit before the local
    tolerance is met.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if a == b:
        return 0.0
    fa, fb = fn(a), fn(b)
    m, fm, whole = _simpson(fn, a, fa, b, fb)
    total = 0.0
    # (a, fa, b, fb, m, fm, whole, tol, depth)
    stack = [(a, fa, b, fb, m, fm, whole, tol, 0)]
    while stack:
        a0, fa0, b0, fb0, m0, fm0, whole0, tol0, depth = stack.pop()
        lm, flm, left = _simpson(fn, a0, fa0, m0, fm0)
        rm, frm, right = _simpson(fn, m0, fm0, b0, fb0)
        err = left + right - whole0
        if abs(err) <= 15.0 * tol0:
            total += left + right + err / 15.0
            continue
        if depth >= max_depth:
            raise QuadratureError(abs(err) / 15.0, tol0)
        stack.append((a0, fa0, m0, fm0, lm, flm, left, 0.5 * tol0, depth + 1))
        stack.append((m0, fm0, b0, fb0, rm, frm, right, 0.5 * tol0, depth + 1))
    return total


def exact_population(
    n0: float,
    mu: float,
    pi: RecruitmentFunction,
    t: float,
    quad_tol: float = 1e-9,
) -> float:
    """Total population of the exact N' = pi(t) - mu*N solution at time t."""
    if t < 0.0:
        raise ValueError(f"t must be non-negative, got {t}")
    if t == 0.0:
        return float(n0)
    if pi.key == "const":
        p = pi.fn(0.0)
        if mu > 0.0:
            return n0 * math.exp(-mu * t) + (p / mu) * (1.0 - math.exp(-mu * t))
        return n0 + p * t
    if mu == 0.0:
        return n0 + adaptive_simpson(pi.fn, 0.0, t, quad_tol)

    def integrand(s: float) -> float:
        return pi.fn(s) * math.exp(-mu * (t - s))

    return n0 * math.exp(-mu * t) + adaptive_simpson(integrand, 0.0, t, quad_tol)


@dataclass(frozen=True)
class ReferenceSolution:
    """States at the requested output times, all lying on the generating grid."""

    times: tuple[float, ...]
    states: tuple[State, ...]
    tau: float
    method: str

    @property
    def populations(self) -> tuple[float, ...]:
        return tuple(x.total for x in self.states)

    def as_trajectory(self) -> Trajectory:
        """Output states repackaged in the trajectory CSV schema."""
        return Trajectory(list(self.states), self.tau, self.method, math.nan)


def _output_base(output_times: Sequence[float]) -> float:
    positive = sorted(t for t in output_times if t > 0.0)
    if not positive:
        raise ValueError("at least one positive output time is required")
    base = positive[0]
    for t in positive:
        ratio = t / base
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError(
                f"output times must be integer multiples of the smallest one "
                f"({base}); offending time {t}"
            )
    return base


def reference_trajectory(
    setup: ProblemSetup,
    t_f: float,
    output_times: Sequence[float],
    method: Optional[ShuOsherForm] = None,
    refinement: float = DEFAULT_REFINEMENT,
) -> ReferenceSolution:
    """High-resolution reference run recorded at ``output_times``.

    The nominal step is the method's positivity bound times ``refinement``,
    shrunk minimally so every output time lands exactly on the step grid.
    """
    if method is None:
        method = builtin_method("ssprk104")
    if not t_f > 0.0:
        raise ValueError(f"t_f must be positive, got {t_f}")
    base = _output_base(output_times)
    tau_bound = bound_report(setup, method, t_f).tau_method
    tau_nominal = tau_bound * refinement
    per_base = max(1, math.ceil(base / tau_nominal - 1e-12))
    tau = base / per_base
    n_steps = round(t_f / tau)
    if n_steps * tau < t_f - 1e-9 * t_f:
        n_steps = math.ceil(t_f / tau)
    traj = integrate(
        setup.x0, tau, n_steps, method,
        setup.params, setup.incidence, setup.recruitment,
    )
    times = []
    states = []
    for t in output_times:
        k = round(t / tau)
        if k > n_steps or abs(k * tau - t) > 1e-9 * (1.0 + t):
            raise ValueError(f"output time {t} not on the reference grid")
        times.append(traj.states[k].t)
        states.append(traj.states[k])
    return ReferenceSolution(tuple(times), tuple(states), tau, method.key or "?")
