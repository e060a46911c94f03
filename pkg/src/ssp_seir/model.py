"""SEIR right-hand side plus the incidence and recruitment function catalogs.

The model is

    S' = pi(t) - mu*S - f(I)*S
    E' = f(I)*S - (mu + sigma)*E
    I' = sigma*E - (mu + gamma)*I + delta*R
    R' = gamma*I - (mu + delta)*R

where ``f`` is a force-of-infection function (f(0) = 0, f >= 0 on the
non-negative axis, |f(x)| <= alpha*|x|) and ``pi`` a continuous recruitment
rate bounded by a constant K >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "ModelParams",
    "State",
    "IncidenceFunction",
    "RecruitmentFunction",
    "ProblemSetup",
    "INCIDENCE_KEYS",
    "RECRUITMENT_KEYS",
    "incidence_from_key",
    "recruitment_from_key",
    "rhs",
    "sup_incidence",
    "recruitment_sup",
    "linear_incidence",
    "holling_incidence",
    "media_incidence",
    "media_exp_incidence",
    "custom_incidence",
    "choice_a_recruitment",
    "choice_b_recruitment",
    "choice_c_recruitment",
    "constant_recruitment",
    "counterexample_cosine_recruitment",
    "custom_recruitment",
]


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Rate constants of the model, all non-negative and finite (1/time)."""

    mu: float
    sigma: float
    gamma: float
    delta: float

    def __post_init__(self) -> None:
        for name in ("mu", "sigma", "gamma", "delta"):
            value = _require_finite(name, getattr(self, name))
            if value < 0.0:
                raise ValueError(f"{name} must be non-negative, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class State:
    """Compartment values (S, E, I, R) at time ``t``."""

    s: float
    e: float
    i: float
    r: float
    t: float = 0.0

    @property
    def total(self) -> float:
        """Total population N = S + E + I + R."""
        return self.s + self.e + self.i + self.r

    @property
    def admissible(self) -> bool:
        """True iff every compartment is non-negative."""
        return self.s >= 0.0 and self.e >= 0.0 and self.i >= 0.0 and self.r >= 0.0

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.s, self.e, self.i, self.r)


@dataclass(frozen=True)
class IncidenceFunction:
    """Force-of-infection function ``x -> f(x)``.

    ``alpha`` is the declared linear-bound constant of |f(x)| <= alpha*|x|.
    Entries that do not satisfy that condition (kept only for comparison
    purposes) carry ``alpha=None`` and are excluded from the certified
    catalog guarantees.
    """

    key: str
    fn: Callable[[float], float] = field(compare=False)
    alpha: Optional[float] = None
    # closed-form sup over [0, hi], when one is known
    analytic_sup: Optional[Callable[[float], float]] = field(default=None, compare=False)

    def __call__(self, x: float) -> float:
        return self.fn(x)


@dataclass(frozen=True)
class RecruitmentFunction:
    """Recruitment rate ``t -> pi(t)`` with 0 <= pi(t) <= K.

    ``bound`` holds an analytic upper bound K when one is known; otherwise
    :func:`recruitment_sup` falls back to a guarded grid maximum.
    """

    key: str
    fn: Callable[[float], float] = field(compare=False)
    bound: Optional[float] = None

    def __call__(self, t: float) -> float:
        return self.fn(t)


@dataclass(frozen=True)
class ProblemSetup:
    """A fully specified integration problem."""

    params: ModelParams
    incidence: IncidenceFunction
    recruitment: RecruitmentFunction
    x0: State


# ---------------------------------------------------------------------------
# incidence catalog
# ---------------------------------------------------------------------------


def linear_incidence() -> IncidenceFunction:
    """f(x) = x."""
    return IncidenceFunction("linear", lambda x: x, alpha=1.0, analytic_sup=lambda hi: hi)


def holling_incidence(c1: float, c2: float, k: float) -> IncidenceFunction:
    """Holling-type saturating force of infection f(x) = c1*x / (1 + c2*x**k)."""
    c1 = _require_finite("c1", c1)
    c2 = _require_finite("c2", c2)
    k = _require_finite("k", k)
    if c1 < 0.0 or c2 < 0.0 or k < 0.0:
        raise ValueError("Holling parameters must be non-negative")

    def fn(x: float) -> float:
        return c1 * x / (1.0 + c2 * x**k)

    return IncidenceFunction("holling", fn, alpha=c1)


def media_incidence(nu: float, eta: float) -> IncidenceFunction:
    """Media-effect force of infection f(x) = nu * exp(-eta*x) * x."""
    nu = _require_finite("nu", nu)
    eta = _require_finite("eta", eta)
    if nu < 0.0 or eta < 0.0:
        raise ValueError("media parameters must be non-negative")

    def fn(x: float) -> float:
        return nu * math.exp(-eta * x) * x

    def analytic_sup(hi: float) -> float:
        # f increases up to x = 1/eta and decreases afterwards
        xm = hi if (eta == 0.0 or hi <= 1.0 / eta) else 1.0 / eta
        return fn(xm)

    return IncidenceFunction("media", fn, alpha=nu, analytic_sup=analytic_sup)


def media_exp_incidence(nu: float, eta: float) -> IncidenceFunction:
    """The bare exponential g(x) = nu * exp(-eta*x) without the factor x.

    g(0) = nu != 0, so this entry is not a valid force of infection; it is
    kept in the catalog only so that the two readings of the experiment
    incidence can be compared.  ``alpha`` is None accordingly.
    """
    nu = _require_finite("nu", nu)
    eta = _require_finite("eta", eta)

    def fn(x: float) -> float:
        return nu * math.exp(-eta * x)

    return IncidenceFunction("media-exp", fn, alpha=None, analytic_sup=lambda hi: nu)


def custom_incidence(
    fn: Callable[[float], float],
    alpha: float,
    hi: float = 1e3,
    n_check: int = 10_001,
) -> IncidenceFunction:
    """Wrap a user function after validating f(0)=0, f>=0 and f <= alpha*x on a grid."""
    alpha = _require_finite("alpha", alpha)
    if alpha < 0.0:
        raise ValueError("alpha must be non-negative")
    if abs(fn(0.0)) > 1e-12:
        raise ValueError(f"custom incidence must satisfy f(0)=0, got f(0)={fn(0.0)!r}")
    for x in np.linspace(0.0, hi, n_check):
        y = fn(float(x))
        if y < -1e-12:
            raise ValueError(f"custom incidence negative at x={x}: f(x)={y}")
        if y > alpha * x + 1e-12:
            raise ValueError(
                f"custom incidence violates declared linear bound at x={x}: "
                f"f(x)={y} > alpha*x={alpha * x}"
            )
    return IncidenceFunction("custom", fn, alpha=alpha)


INCIDENCE_KEYS = ("linear", "holling", "media", "media-exp")


def incidence_from_key(
    key: str,
    *,
    nu: float = 0.0115,
    eta: float = 0.001,
    c1: float = 1.0,
    c2: float = 1.0,
    k: float = 2.0,
) -> IncidenceFunction:
    """Catalog lookup by string key for CLI/config use."""
    if key == "linear":
        return linear_incidence()
    if key == "holling":
        return holling_incidence(c1, c2, k)
    if key == "media":
        return media_incidence(nu, eta)
    if key == "media-exp":
        return media_exp_incidence(nu, eta)
    raise KeyError(f"unknown incidence key {key!r}; known: {INCIDENCE_KEYS}")


# ---------------------------------------------------------------------------
# recruitment catalog
# ---------------------------------------------------------------------------


def choice_a_recruitment(kappa: float) -> RecruitmentFunction:
    """pi(t) = kappa * (2/pi * arctan(t) + sin(t)/t), with sin(t)/t := 1 at t=0."""
    kappa = _require_finite("kappa", kappa)

    def fn(t: float) -> float:
        sinc = 1.0 if t == 0.0 else math.sin(t) / t
        return kappa * (2.0 / math.pi * math.atan(t) + sinc)

    return RecruitmentFunction("choiceA", fn)


def choice_b_recruitment(kappa: float) -> RecruitmentFunction:
    """pi(t) = kappa * (1/pi * arctan(t) + 1/2); sup is the limit kappa."""
    kappa = _require_finite("kappa", kappa)

    def fn(t: float) -> float:
        return kappa * (math.atan(t) / math.pi + 0.5)

    return RecruitmentFunction("choiceB", fn, bound=kappa)


def choice_c_recruitment(kappa: float) -> RecruitmentFunction:
    """pi(t) = kappa * (-t*exp(-t) + 1); bounded by kappa, attained at t=0."""
    kappa = _require_finite("kappa", kappa)

    def fn(t: float) -> float:
        return kappa * (-t * math.exp(-t) + 1.0)

    return RecruitmentFunction("choiceC", fn, bound=kappa)


def constant_recruitment(p: float) -> RecruitmentFunction:
    """pi(t) = p."""
    p = _require_finite("p", p)
    if p < 0.0:
        raise ValueError("constant recruitment must be non-negative")
    return RecruitmentFunction("const", lambda t: p, bound=p)


def counterexample_cosine_recruitment() -> RecruitmentFunction:
    """pi(t) = -cos(2*pi*t) + 1, the oscillating counterexample with K = 2."""

    def fn(t: float) -> float:
        return -math.cos(2.0 * math.pi * t) + 1.0

    return RecruitmentFunction("cex-cos", fn, bound=2.0)


def custom_recruitment(
    fn: Callable[[float], float],
    bound: float,
    horizon: float = 1e3,
    n_check: int = 10_001,
) -> RecruitmentFunction:
    """Wrap a user recruitment after validating 0 <= pi(t) <= bound on a grid."""
    bound = _require_finite("bound", bound)
    if bound < 0.0:
        raise ValueError("bound must be non-negative")
    for t in np.linspace(0.0, horizon, n_check):
        y = fn(float(t))
        if y < -1e-12 or y > bound + 1e-12:
            raise ValueError(
                f"custom recruitment leaves [0, {bound}] at t={t}: pi(t)={y}"
            )
    return RecruitmentFunction("custom", fn, bound=bound)


RECRUITMENT_KEYS = ("choiceA", "choiceB", "choiceC", "const", "cex-cos")


def recruitment_from_key(
    key: str, *, kappa: float = 0.05, p: float = 0.05
) -> RecruitmentFunction:
    """Catalog lookup by string key for CLI/config use."""
    if key == "choiceA":
        return choice_a_recruitment(kappa)
    if key == "choiceB":
        return choice_b_recruitment(kappa)
    if key == "choiceC":
        return choice_c_recruitment(kappa)
    if key == "const":
        return constant_recruitment(p)
    if key == "cex-cos":
        return counterexample_cosine_recruitment()
    raise KeyError(f"unknown recruitment key {key!r}; known: {RECRUITMENT_KEYS}")


# ---------------------------------------------------------------------------
# right-hand side
# ---------------------------------------------------------------------------


def _derivs(
    t: float,
    s: float,
    e: float,
    i: float,
    r: float,
    p: ModelParams,
    f: IncidenceFunction,
    pi: RecruitmentFunction,
) -> tuple[float, float, float, float]:
    # hot path shared by rhs() and the steppers; no validation here
    inc = f.fn(i) * s
    pi_t = pi.fn(t)
    return (
        pi_t - p.mu * s - inc,
        inc - (p.mu + p.sigma) * e,
        p.sigma * e - (p.mu + p.gamma) * i + p.delta * r,
        p.gamma * i - (p.mu + p.delta) * r,
    )


def rhs(
    t: float,
    x: State,
    p: ModelParams,
    f: IncidenceFunction,
    pi: RecruitmentFunction,
) -> tuple[float, float, float, float]:
    """Evaluate the four-component derivative of the model at (t, x).

    The components sum to pi(t) - mu*N by construction (internal flows
    cancel algebraically).
    """
    for name, value in (("t", t), ("s", x.s), ("e", x.e), ("i", x.i), ("r", x.r)):
        if not math.isfinite(value):
            raise ValueError(f"non-finite input {name}={value!r}")
    return _derivs(t, x.s, x.e, x.i, x.r, p, f, pi)


# ---------------------------------------------------------------------------
# suprema
# ---------------------------------------------------------------------------


def _grid_sup(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    n: int = 50_001,
    refine_rounds: int = 3,
) -> float:
    """Over-approximating maximum of ``fn`` on [lo, hi].

    Dense grid plus local refinement around the best cell; the returned value
    adds a Lipschitz slack estimated from the finest grid so the result never
    under-approximates a maximum hiding between grid points.
    """
    if hi < lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if hi == lo:
        return fn(lo)
    xs = np.linspace(lo, hi, n)
    ys = np.array([fn(float(x)) for x in xs])
    step = (hi - lo) / (n - 1)
    best = int(np.argmax(ys))
    best_y = float(ys[best])
    slope = float(np.max(np.abs(np.diff(ys)))) / step
    window_lo = max(lo, float(xs[best]) - step)
    window_hi = min(hi, float(xs[best]) + step)
    for _ in range(refine_rounds):
        xs = np.linspace(window_lo, window_hi, 2001)
        ys = np.array([fn(float(x)) for x in xs])
        step = (window_hi - window_lo) / 2000.0
        best = int(np.argmax(ys))
        best_y = max(best_y, float(ys[best]))
        slope = max(slope, float(np.max(np.abs(np.diff(ys)))) / step if step > 0 else 0.0)
        window_lo = max(lo, float(xs[best]) - step)
        window_hi = min(hi, float(xs[best]) + step)
        if step == 0.0:
            break
    return best_y + slope * step


def sup_incidence(f: IncidenceFunction, hi: float) -> float:
    """sup of f over [0, hi], analytic where available, guarded grid otherwise."""
    hi = float(hi)
    if not math.isfinite(hi) or hi < 0.0:
        raise ValueError(f"upper bound must be finite and non-negative, got {hi}")
    if f.analytic_sup is not None:
        return f.analytic_sup(hi)
    return _grid_sup(f.fn, 0.0, hi)


def recruitment_sup(pi: RecruitmentFunction, horizon: float) -> float:
    """Upper bound K with pi(t) <= K on [0, horizon] (analytic if declared)."""
    horizon = float(horizon)
    if not horizon > 0.0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if pi.bound is not None:
        return pi.bound
    return _grid_sup(pi.fn, 0.0, horizon)
