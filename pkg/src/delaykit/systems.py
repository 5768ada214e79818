"""Benchmark dynamical systems: chaotic flows via fixed-step RK4 and maps.

Flows (Lorenz 63, Lorenz 96, Rossler) are integrated with the classical
fourth-order Runge-Kutta scheme at a fixed step; maps (Henon, logistic) are
iterated directly. A trace observes a single state coordinate after
discarding a transient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DivergenceError, ValidationError
from .timeseries import ScalarSeries

__all__ = [
    "FlowSpec",
    "MapSpec",
    "integrate_rk4",
    "generate_flow_trace",
    "generate_map_trace",
    "default_initial_state",
    "FLOW_DEFAULTS",
    "MAP_DEFAULTS",
]

# Any |state component| beyond this aborts with a divergence error rather
# than emitting a garbage series.
DIVERGENCE_LIMIT = 1e12

FLOW_DEFAULTS = {
    "lorenz63": {"sigma": 10.0, "rho": 28.0, "beta": 8.0 / 3.0},
    "lorenz96": {"K": 22, "F": 5.0},
    "rossler": {"a": 0.15, "b": 0.20, "c": 10.0},
}

MAP_DEFAULTS = {
    "henon": {"a": 1.4, "b": 0.3},
    "logistic": {"r": 3.65},
}


@dataclass(frozen=True)
class FlowSpec:
    """Parameters for one flow trace: system, coefficients, and sampling."""

    name: str
    params: dict = field(default_factory=dict)
    dt: float = 1.0 / 64.0
    steps: int = 10000
    transient: int = 0
    observed_index: int = 0

    def __post_init__(self):
        if self.name not in FLOW_DEFAULTS:
            raise ValidationError(f"unknown flow {self.name!r}")
        merged = {**FLOW_DEFAULTS[self.name], **self.params}
        object.__setattr__(self, "params", merged)
        if not self.dt > 0:
            raise ValidationError("dt must be positive")
        if not (self.steps > self.transient >= 0):
            raise ValidationError("require steps > transient >= 0")
        if self.name == "lorenz96":
            k = merged["K"]
            if int(k) != k or k < 4:
                raise ValidationError("lorenz96 requires integer K >= 4")
        if not 0 <= self.observed_index < self.dimension:
            raise ValidationError(
                f"observed_index {self.observed_index} out of range for "
                f"{self.dimension}-dimensional state"
            )

    @property
    def dimension(self) -> int:
        return int(self.params["K"]) if self.name == "lorenz96" else 3

    def field_function(self) -> Callable[[np.ndarray], np.ndarray]:
        p = self.params
        if self.name == "lorenz63":
            sigma, rho, beta = p["sigma"], p["rho"], p["beta"]

            def f(v):
                x, y, z = v
                return np.array(
                    [sigma * (y - x), x * (rho - z) - y, x * y - beta * z]
                )

            return f
        if self.name == "rossler":
            a, b, c = p["a"], p["b"], p["c"]

            def f(v):
                x, y, z = v
                return np.array([-y - z, x + a * y, b + z * (x - c)])

            return f
        # lorenz96: coupling reaches k-2, so indices wrap modulo K
        forcing = p["F"]

        def f(v):
            return (np.roll(v, -1) - np.roll(v, 2)) * np.roll(v, 1) - v + forcing

        return f


@dataclass(frozen=True)
class MapSpec:
    """Parameters for one map trace: system, coefficients, start, count."""

    name: str
    params: dict = field(default_factory=dict)
    x0: tuple = (0.0,)
    n: int = 1000
    transient: int = 0

    def __post_init__(self):
        if self.name not in MAP_DEFAULTS:
            raise ValidationError(f"unknown map {self.name!r}")
        merged = {**MAP_DEFAULTS[self.name], **self.params}
        object.__setattr__(self, "params", merged)
        x0 = tuple(float(v) for v in np.atleast_1d(self.x0))
        object.__setattr__(self, "x0", x0)
        if not (self.n > self.transient >= 0):
            raise ValidationError("require n > transient >= 0")
        if self.name == "logistic":
            if len(x0) != 1:
                raise ValidationError("logistic map takes a scalar x0")
            if not 0.0 <= x0[0] <= 1.0:
                raise ValidationError("logistic x0 must lie in [0, 1]")
            if not 0.0 < merged["r"] <= 4.0:
                raise ValidationError("logistic r must lie in (0, 4]")
        if self.name == "henon" and len(x0) != 2:
            raise ValidationError("henon map takes a 2-vector x0")


def integrate_rk4(
    field: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    dt: float,
    steps: int,
) -> np.ndarray:
    """Classical fourth-order Runge-Kutta on an autonomous field.

    Returns a (steps, d) trajectory whose first row is ``x0``; each later
    row is one RK4 step from the previous. Deterministic for fixed inputs.

    Raises
    ------
    DivergenceError
        If any state component becomes non-finite or exceeds 1e12,
        reporting the step at which it happened.
    """
    if not dt > 0:
        raise ValidationError("dt must be positive")
    if steps < 1:
        raise ValidationError("steps must be >= 1")
    x = np.array(x0, dtype=np.float64, copy=True)
    if x.ndim != 1:
        raise ValidationError("x0 must be a flat state vector")
    out = np.empty((steps, x.size), dtype=np.float64)
    out[0] = x
    half = dt / 2.0
    for i in range(1, steps):
        k1 = field(x)
        k2 = field(x + half * k1)
        k3 = field(x + half * k2)
        k4 = field(x + dt * k3)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > DIVERGENCE_LIMIT:
            raise DivergenceError(i)
        out[i] = x
    return out


def generate_flow_trace(spec: FlowSpec, x0: np.ndarray) -> ScalarSeries:
    """Integrate a flow and observe one coordinate after the transient.

    The result has ``spec.steps - spec.transient`` samples.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.shape != (spec.dimension,):
        raise ValidationError(
            f"x0 has shape {x0.shape}, expected ({spec.dimension},)"
        )
    traj = integrate_rk4(spec.field_function(), x0, spec.dt, spec.steps)
    observed = traj[spec.transient :, spec.observed_index]
    return ScalarSeries(observed, sample_interval=spec.dt)


def generate_map_trace(spec: MapSpec) -> ScalarSeries:
    """Iterate a map and observe its leading coordinate past the transient.

    The first sample of the (pre-transient) orbit is the initial condition
    itself, so ``spec.n`` counts it. Deterministic.
    """
    p = spec.params
    if spec.name == "logistic":
        r = p["r"]
        xs = np.empty(spec.n, dtype=np.float64)
        x = spec.x0[0]
        for i in range(spec.n):
            xs[i] = x
            x = r * x * (1.0 - x)
        return ScalarSeries(xs[spec.transient :])
    # henon: observe x
    a, b = p["a"], p["b"]
    xs = np.empty(spec.n, dtype=np.float64)
    x, y = spec.x0
    for i in range(spec.n):
        xs[i] = x
        x, y = 1.0 - a * x * x + y, b * x
        if not (np.isfinite(x) and np.isfinite(y)) or max(abs(x), abs(y)) > DIVERGENCE_LIMIT:
            raise DivergenceError(i + 1)
    return ScalarSeries(xs[spec.transient :])


def default_initial_state(name: str, params: dict, seed: int) -> np.ndarray:
    """Draw a reproducible initial condition for the named system.

    Ensemble runs perturb a generic on-basin base point with a seeded
    generator so every experiment can be replayed exactly.
    """
    rng = np.random.default_rng(seed)
    if name == "lorenz63":
        return np.array([1.0, 1.0, 1.0]) + rng.standard_normal(3)
    if name == "lorenz96":
        k = int(params["K"])
        return params["F"] + 0.1 * rng.standard_normal(k)
    if name == "rossler":
        return np.array([10.0, 0.0, 0.0]) + 0.5 * rng.standard_normal(3)
    if name == "henon":
        return 0.1 * rng.standard_normal(2)
    if name == "logistic":
        return np.array([rng.uniform(0.05, 0.95)])
    raise ValidationError(f"unknown system {name!r}")
