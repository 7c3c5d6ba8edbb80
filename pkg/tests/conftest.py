"""Shared fixtures.  The mesh-refinement simulations are expensive, so they
run once per session and are reused by the simulator, verify, and
acceptance tests.
"""

import math
import time

import pytest

from magdiff.exact import ExactSolution, solve_constants
from magdiff.params import BENCHMARK_PARAMS, ProblemParams
from magdiff.simulator import Mesh1D, SimConfig, run

N_SWEEP = (200, 400, 800, 1600)


@pytest.fixture(scope="session")
def benchmark_params():
    return BENCHMARK_PARAMS


@pytest.fixture(scope="session")
def constants(benchmark_params):
    return solve_constants(benchmark_params)


@pytest.fixture(scope="session")
def exact_solution(benchmark_params, constants):
    return ExactSolution(benchmark_params, constants=constants)


@pytest.fixture(scope="session")
def nonlinear_sweep(benchmark_params, constants):
    """Benchmark runs to t = 0.4 for N in (200, 400, 800, 1600).

    Returns (profiles, runtimes, snapshots_1600): profiles maps N to the
    final snapshot, snapshots_1600 holds the N = 1600 run's snapshots at
    t in {0.1, 0.2, 0.4}.
    """
    profiles = {}
    runtimes = {}
    snapshots_1600 = None
    for n in N_SWEEP:
        mesh = Mesh1D(n_cells=n, x_max=0.5)
        times = (0.1, 0.2, 0.4) if n == 1600 else (0.4,)
        cfg = SimConfig(t_end=0.4, cfl=0.4, output_times=times)
        t0 = time.perf_counter()
        snaps = run(mesh, benchmark_params, cfg, constants=constants)
        runtimes[n] = time.perf_counter() - t0
        profiles[n] = snaps[-1]
        if n == 1600:
            snapshots_1600 = snaps
    return profiles, runtimes, snapshots_1600


@pytest.fixture(scope="session")
def linear_params():
    """Step disabled: ec = +inf keeps eta = etaS everywhere."""
    return ProblemParams(
        B0=BENCHMARK_PARAMS.B0,
        ec=math.inf,
        etaL=BENCHMARK_PARAMS.etaL,
        etaS=BENCHMARK_PARAMS.etaS,
    )


@pytest.fixture(scope="session")
def linear_sweep(linear_params):
    """Constant-resistivity runs for the erfc oracle, N in (200 .. 1600)."""
    profiles = {}
    runtimes = {}
    for n in N_SWEEP:
        mesh = Mesh1D(n_cells=n, x_max=0.5)
        cfg = SimConfig(t_end=0.4, cfl=0.4, output_times=(0.4,))
        t0 = time.perf_counter()
        snaps = run(mesh, linear_params, cfg)
        runtimes[n] = time.perf_counter() - t0
        profiles[n] = snaps[-1]
    return profiles, runtimes
