"""Flat key=value experiment configuration.

Plain text with ``#`` comments, one ``key=value`` per line; unknown keys are
rejected and every key must be present (start from
:data:`DEFAULT_CONFIG_TEXT` when writing a custom file).  The defaults are
the published experiment values, so the CLI runs with no arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .model import (
    IncidenceFunction,
    ModelParams,
    ProblemSetup,
    RecruitmentFunction,
    State,
    incidence_from_key,
    recruitment_from_key,
)

__all__ = ["ConfigError", "ExperimentConfig", "DEFAULT_CONFIG_TEXT", "parse_config"]


class ConfigError(ValueError):
    """Malformed configuration input."""


DEFAULT_CONFIG_TEXT = """\
# SEIR SSP experiment configuration (defaults reproduce the bound tables)
mu=0.05
sigma=0.25
gamma=0.1867
delta=0.011
# incidence: linear | holling | media | media-exp
incidence=media
nu=0.0115
eta=0.001
c1=1.0
c2=1.0
k=2.0
# recruitment choices used by bounds-table (comma separated catalog keys)
recruitments=choiceA,choiceB,choiceC
kappa=0.05
s0=0.2
e0=0.6
i0=0.2
r0=0.0
tf=1000.0
methods=euler,ssprk22,ssprk33,ssprk104
bisect_tol=1e-4
quad_tol=1e-9
"""

_FLOAT_KEYS = (
    "mu", "sigma", "gamma", "delta", "nu", "eta", "c1", "c2", "k",
    "kappa", "s0", "e0", "i0", "r0", "tf", "bisect_tol", "quad_tol",
)
_LIST_KEYS = ("recruitments", "methods")
_STR_KEYS = ("incidence",)
_ALL_KEYS = _FLOAT_KEYS + _LIST_KEYS + _STR_KEYS


@dataclass(frozen=True)
class ExperimentConfig:
    mu: float
    sigma: float
    gamma: float
    delta: float
    incidence: str
    nu: float
    eta: float
    c1: float
    c2: float
    k: float
    recruitments: tuple[str, ...]
    kappa: float
    s0: float
    e0: float
    i0: float
    r0: float
    tf: float
    methods: tuple[str, ...]
    bisect_tol: float
    quad_tol: float

    def params(self) -> ModelParams:
        return ModelParams(self.mu, self.sigma, self.gamma, self.delta)

    def incidence_fn(self) -> IncidenceFunction:
        return incidence_from_key(
            self.incidence, nu=self.nu, eta=self.eta, c1=self.c1, c2=self.c2, k=self.k
        )

    def recruitment_fn(self, key: str) -> RecruitmentFunction:
        return recruitment_from_key(key, kappa=self.kappa, p=self.kappa)

    def initial_state(self) -> State:
        return State(self.s0, self.e0, self.i0, self.r0, t=0.0)

    def setup(self, recruitment_key: str) -> ProblemSetup:
        return ProblemSetup(
            self.params(),
            self.incidence_fn(),
            self.recruitment_fn(recruitment_key),
            self.initial_state(),
        )


def parse_config(text: str) -> ExperimentConfig:
    """Parse key=value text; every key required, unknown keys rejected."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    missing = [key for key in _ALL_KEYS if key not in raw]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(sorted(missing))}")
    values: dict[str, object] = {}
    for key in _FLOAT_KEYS:
        try:
            values[key] = float(raw[key])
        except ValueError as exc:
            raise ConfigError(f"key {key}: not a number: {raw[key]!r}") from exc
    for key in _LIST_KEYS:
        items = tuple(item.strip() for item in raw[key].split(",") if item.strip())
        if not items:
            raise ConfigError(f"key {key}: empty list")
        values[key] = items
    for key in _STR_KEYS:
        values[key] = raw[key]
    return ExperimentConfig(**values)  # type: ignore[arg-type]


def load_config(path: str | Path | None) -> ExperimentConfig:
    """Config from a file, or the embedded defaults when no path is given."""
    if path is None:
        return parse_config(DEFAULT_CONFIG_TEXT)
    return parse_config(Path(path).read_text())
