"""Shared fixtures: benchmark traces are expensive, so they are generated
once per session with fixed seeds."""

import pytest

import delaykit as dk


@pytest.fixture(scope="session")
def lorenz96_20k():
    """20,000-sample Lorenz 96 K=22 F=5 trace at dt=1/64."""
    spec = dk.FlowSpec("lorenz96", {"K": 22, "F": 5.0}, dt=1 / 64,
                       steps=30000, transient=10000)
    x0 = dk.default_initial_state("lorenz96", spec.params, seed=7)
    return dk.generate_flow_trace(spec, x0)


@pytest.fixture(scope="session")
def lorenz96_50k():
    """Full-scale 50,000-sample Lorenz 96 K=22 trace (60,000 steps minus
    a 10,000-step transient)."""
    spec = dk.FlowSpec("lorenz96", {"K": 22, "F": 5.0}, dt=1 / 64,
                       steps=60000, transient=10000)
    x0 = dk.default_initial_state("lorenz96", spec.params, seed=1)
    return dk.generate_flow_trace(spec, x0)


@pytest.fixture(scope="session")
def lorenz63_traj_20k():
    """20,000-sample Lorenz 63 trajectory (full 3D states) at dt=1/16."""
    spec = dk.FlowSpec("lorenz63", {}, dt=1 / 16, steps=21000, transient=1000)
    x0 = dk.default_initial_state("lorenz63", spec.params, seed=1)
    traj = dk.integrate_rk4(spec.field_function(), x0, spec.dt, spec.steps)
    return traj[1000:]


@pytest.fixture(scope="session")
def lorenz63_20k(lorenz63_traj_20k):
    """The x-coordinate trace of the session Lorenz 63 trajectory."""
    return dk.ScalarSeries(lorenz63_traj_20k[:, 0], sample_interval=1 / 16)


def make_map_trace(system: str, seed: int, n: int = 11000,
                   transient: int = 1000) -> dk.ScalarSeries:
    x0 = dk.default_initial_state(system, {}, seed)
    spec = dk.MapSpec(system, {}, x0=tuple(x0), n=n, transient=transient)
    return dk.generate_map_trace(spec)


@pytest.fixture(scope="session")
def henon_10k():
    return make_map_trace("henon", seed=1)


@pytest.fixture(scope="session")
def logistic_10k():
    return make_map_trace("logistic", seed=1)
