"""Exact-solution tests.

Reference values for the benchmark parameter set (B0 = 0.2, ec = 0.1,
etaL = 9.7e-3, etaS = 9.7e-5, mu0 = 4pi*1e-2) were computed independently
with scipy.special closed forms and scipy.optimize.brentq at 1e-15
relative tolerance and frozen below.
"""

import math

import numpy as np
import pytest
from scipy.special import erf, erfc

from magdiff.exact import (
    SOLVE_SPEC,
    bc1_of_h,
    bc2_of_h,
    bracket_curve,
    build_profile,
    dimensionless_solve,
    f_prime,
    front_velocity,
    scan_table,
    solve_constants,
    x_c,
)
from magdiff.params import ProblemParams
from magdiff.quadrature import adaptive_integrate

# independently computed with scipy (see module docstring)
H_REF = 2.4406314178450897e-3
BC_REF = 0.15576716986898867
HCAL_REF = 0.25161148637578246
BCAL_REF = 0.7788358493449433
XC04_REF = 0.12464967780390401
VC04_REF = 0.15581209725488002


def test_solve_constants_matches_reference(benchmark_params, constants):
    assert abs(constants.h / H_REF - 1.0) < 1e-9
    assert abs(constants.Bc / BC_REF - 1.0) < 1e-9
    assert abs(constants.Hcal / HCAL_REF - 1.0) < 1e-9
    assert abs(constants.Bcal / BCAL_REF - 1.0) < 1e-9
    assert constants.AL < 0 and constants.AS < 0
    assert 0 < constants.Bc < benchmark_params.B0
    assert abs(constants.b - benchmark_params.b) == 0.0
    assert abs(constants.r - 100.0) < 1e-12


def test_reference_four_digit_values(constants):
    # the four-digit reference values of the benchmark case
    assert abs(constants.Bc - 0.1558) < 5e-4
    assert abs(constants.h - 2.441e-3) / 2.441e-3 < 5e-3


def test_root_residual(benchmark_params, constants):
    gap = abs(
        bc1_of_h(constants.h, benchmark_params) - bc2_of_h(constants.h, benchmark_params)
    )
    assert gap <= 1e-10 * benchmark_params.B0


def test_bc1_limits(benchmark_params):
    # h -> 0: the correction term vanishes and bc1 -> B0
    h_tiny = 1e-9 * benchmark_params.etaS
    assert abs(bc1_of_h(h_tiny, benchmark_params) / benchmark_params.B0 - 1.0) < 1e-3
    # benchmark h reproduces the reference knee value
    assert abs(bc1_of_h(2.441e-3, benchmark_params) - 0.1558) < 5e-4
    with pytest.raises(ValueError):
        bc1_of_h(0.0, benchmark_params)
    with pytest.raises(ValueError):
        bc1_of_h(math.nan, benchmark_params)


def test_bc2_limits(benchmark_params):
    assert abs(bc2_of_h(2.441e-3, benchmark_params) - 0.1558) < 5e-4
    # large h: the bracket tends to 1, bc2 -> sqrt(2 mu0 ec)
    big = 1e3 * benchmark_params.etaS
    target = math.sqrt(2.0 * benchmark_params.mu0 * benchmark_params.ec)
    assert abs(bc2_of_h(big, benchmark_params) / target - 1.0) < 0.02
    # sqrt(ec) prefactor: quadrupling ec doubles bc2
    p4 = ProblemParams(
        B0=benchmark_params.B0,
        ec=4.0 * benchmark_params.ec,
        etaL=benchmark_params.etaL,
        etaS=benchmark_params.etaS,
    )
    for h in (1e-4, 2.441e-3, 1e-2):
        assert abs(bc2_of_h(h, p4) / (2.0 * bc2_of_h(h, benchmark_params)) - 1.0) < 1e-12


def test_resistivity_scaling_law(benchmark_params, constants):
    # (k etaL, k etaS): h scales by k, Bc unchanged
    for k in (1e-2, 1e2):
        pk = ProblemParams(
            B0=benchmark_params.B0,
            ec=benchmark_params.ec,
            etaL=k * benchmark_params.etaL,
            etaS=k * benchmark_params.etaS,
        )
        ck = solve_constants(pk)
        assert abs(ck.h / (k * constants.h) - 1.0) < 1e-8
        assert abs(ck.Bc / constants.Bc - 1.0) < 1e-8


def test_field_scaling_law(benchmark_params, constants):
    # (k B0, k^2 ec) leaves b unchanged: Bc scales by k, h unchanged
    k = 3.0
    pk = ProblemParams(
        B0=k * benchmark_params.B0,
        ec=k * k * benchmark_params.ec,
        etaL=benchmark_params.etaL,
        etaS=benchmark_params.etaS,
    )
    ck = solve_constants(pk)
    assert abs(ck.Bc / (k * constants.Bc) - 1.0) < 1e-8
    assert abs(ck.h / constants.h - 1.0) < 1e-8


def test_flux_continuity(benchmark_params, constants):
    left = benchmark_params.etaL * f_prime(1.0 - 1e-14, constants, benchmark_params)
    right = benchmark_params.etaS * f_prime(1.0, constants, benchmark_params)
    assert abs(left / right - 1.0) < 1e-9


def test_fprime_boundary_integrals(benchmark_params, constants):
    p, c = benchmark_params, constants
    burned = adaptive_integrate(lambda u: f_prime(u, c, p), 0.0, 1.0, SOLVE_SPEC)
    assert abs(burned / (c.Bc - p.B0) - 1.0) < 1e-8
    u_cap = 1.0 + math.sqrt(80.0 * 2.0 * p.etaS / c.h)
    cold = adaptive_integrate(lambda u: f_prime(u, c, p), 1.0, u_cap, SOLVE_SPEC)
    assert abs(cold / (-c.Bc) - 1.0) < 1e-8


def test_fprime_shape(benchmark_params, constants):
    p, c = benchmark_params, constants
    u = np.linspace(0.0, 3.0, 301)
    vals = f_prime(u, c, p)
    assert np.all(vals < 0)
    # far side of the knee decays by the Gaussian factor
    assert abs(f_prime(1.5, c, p)) < 1e-4 * abs(f_prime(1.0, c, p))
    with pytest.raises(ValueError):
        f_prime(-0.1, c, p)


def test_build_profile(benchmark_params, constants):
    p, c = benchmark_params, constants
    prof = build_profile(c, p, n_points=257)
    assert prof.u[0] == 0.0
    assert prof.u[prof.knee_index] == 1.0
    assert prof.f[0] == p.B0
    assert abs(prof.f[prof.knee_index] / c.Bc - 1.0) < 1e-8
    assert prof.f[-1] <= 1e-12 * p.B0
    assert np.all(np.diff(prof.u) > 0)
    assert np.all(np.diff(prof.f) < 0)
    assert np.all(prof.fprime < 0)
    with pytest.raises(ValueError):
        build_profile(c, p, n_points=8)


def test_front_trajectory(benchmark_params, constants):
    p, c = benchmark_params, constants
    assert x_c(0.0, c, p) == 0.0
    assert abs(x_c(0.4, c, p) / XC04_REF - 1.0) < 1e-9
    for t in (0.01, 0.17, 0.4):
        assert abs(x_c(4.0 * t, c, p) / (2.0 * x_c(t, c, p)) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        x_c(-0.1, c, p)


def test_front_velocity(benchmark_params, constants):
    p, c = benchmark_params, constants
    assert abs(front_velocity(0.4, c, p) / VC04_REF - 1.0) < 1e-9
    for t in (0.05, 0.2, 0.4):
        v = front_velocity(t, c, p)
        assert abs(v * x_c(t, c, p) * p.mu0 / c.h - 1.0) < 1e-12
        assert abs(front_velocity(4.0 * t, c, p) / (0.5 * v) - 1.0) < 1e-12
        # consistency with the numerical time derivative of x_c
        dt = 1e-6 * t
        fd = (x_c(t + dt, c, p) - x_c(t - dt, c, p)) / (2.0 * dt)
        assert abs(v / fd - 1.0) < 1e-8
    with pytest.raises(ValueError):
        front_velocity(0.0, c, p)


def test_field_at(benchmark_params, exact_solution):
    sol = exact_solution
    for t in (0.1, 0.4):
        assert sol.field_at(0.0, t) == benchmark_params.B0
        knee = sol.field_at(sol.x_c(t), t)
        assert abs(knee / sol.constants.Bc - 1.0) < 1e-8
    assert sol.field_at(0.5, 0.4) < 1e-6
    with pytest.raises(ValueError):
        sol.field_at(0.1, 0.0)


def test_self_similarity(exact_solution):
    sol = exact_solution
    rng = np.random.default_rng(20240817)
    for _ in range(5):
        t1, t2 = rng.uniform(0.05, 0.5, size=2)
        x = rng.uniform(0.0, 1.2, size=32) * sol.x_c(t1)
        a = sol.field_at(x, t1)
        b = sol.field_at(x * sol.x_c(t2) / sol.x_c(t1), t2)
        assert np.max(np.abs(a - b)) < 1e-9


def test_energy_at(benchmark_params, exact_solution):
    sol = exact_solution
    p = benchmark_params
    for t in (0.1, 0.4):
        xc = sol.x_c(t)
        assert abs(sol.energy_at(xc, t) / p.ec - 1.0) < 1e-6
        assert sol.energy_at(4.0 * xc, t) < 1e-6 * p.ec
    # monotone non-increasing over a positive-x grid
    x = np.linspace(0.005, 0.45, 100)
    e = sol.energy_at(x, 0.4)
    assert np.all(np.diff(e) <= 0)
    # burned side above ec, cold side below
    xc = sol.x_c(0.4)
    assert np.all(e[x < xc] >= p.ec * (1.0 - 1e-9))
    assert np.all(e[x > xc] <= p.ec * (1.0 + 1e-9))
    with pytest.raises(ValueError):
        sol.energy_at(0.0, 0.4)
    with pytest.raises(ValueError):
        sol.energy_at(0.1, 0.0)


def test_dimensionless_solve_benchmark_cell(benchmark_params):
    hcal, bcal = dimensionless_solve(benchmark_params.b, benchmark_params.r)
    assert abs(hcal / HCAL_REF - 1.0) < 1e-8
    assert abs(bcal / BCAL_REF - 1.0) < 1e-8
    # quotients of the reference values
    assert abs(hcal - 0.2516) < 5e-4
    assert abs(bcal - 0.779) < 1e-3
    with pytest.raises(ValueError):
        dimensionless_solve(-1.0, 100.0)
    with pytest.raises(ValueError):
        dimensionless_solve(1.0, 1.0)


def test_dimensionless_invariance_across_parameter_sets(benchmark_params):
    # five random parameter sets sharing (b, r) must give the same map
    b, r = benchmark_params.b, benchmark_params.r
    hcal, bcal = dimensionless_solve(b, r)
    rng = np.random.default_rng(7)
    for _ in range(5):
        etaL = 10.0 ** rng.uniform(-4, 0)
        ec = 10.0 ** rng.uniform(-2, 1)
        mu0 = 10.0 ** rng.uniform(-2, 0.5)
        p = ProblemParams(
            B0=b * math.sqrt(2.0 * mu0 * ec), ec=ec, etaL=etaL, etaS=etaL / r, mu0=mu0
        )
        c = solve_constants(p)
        assert abs(c.Hcal / hcal - 1.0) < 1e-8
        assert abs(c.Bcal / bcal - 1.0) < 1e-8


def test_bcal_bounded():
    for b, r in ((0.5, 10.0), (1.26, 100.0), (3.0, 1e3)):
        _, bcal = dimensionless_solve(b, r)
        assert 0.0 < bcal < 1.0


def test_scan_table(benchmark_params):
    b, r = benchmark_params.b, benchmark_params.r
    rows = scan_table([b], [r])
    assert len(rows) == 1 and rows[0].error is None
    hcal, bcal = dimensionless_solve(b, r)
    assert rows[0].Hcal == hcal and rows[0].Bcal == bcal

    assert scan_table([], [1.0]) == []
    assert scan_table([1.0], []) == []

    dup = scan_table([b, b], [r])
    assert dup[0].Hcal == dup[1].Hcal and dup[0].Bcal == dup[1].Bcal

    # r <= 1 violates the model; the row is marked failed, not dropped
    bad = scan_table([b], [0.5])
    assert len(bad) == 1 and bad[0].error is not None
    assert math.isnan(bad[0].Hcal)

    # b-major ordering
    grid = scan_table([0.5, 1.5], [10.0, 100.0])
    assert [(row.b, row.r) for row in grid] == [
        (0.5, 10.0),
        (0.5, 100.0),
        (1.5, 10.0),
        (1.5, 100.0),
    ]


def test_bracket_curve_shape(benchmark_params):
    hs, b1, b2 = bracket_curve(benchmark_params, n=50)
    assert len(hs) == len(b1) == len(b2) == 50
    assert np.all(np.diff(hs) > 0)
    # bc1 starts near B0 and falls to ~0; bc2 starts low (log-slow decay
    # toward 0) and rises to sqrt(2 mu0 ec): exactly one crossing between
    assert abs(b1[0] / benchmark_params.B0 - 1.0) < 1e-3
    assert b1[-1] < 1e-3 * benchmark_params.B0
    assert b2[0] < 0.5 * benchmark_params.B0
    gap = b1 - b2
    assert gap[0] > 0 > gap[-1]
    assert np.count_nonzero(np.sign(gap[:-1]) != np.sign(gap[1:])) == 1


def test_profile_oracle_against_closed_form(benchmark_params, exact_solution):
    # independent closed-form profile via erf/erfc
    sol = exact_solution
    p, c = benchmark_params, sol.constants
    aL = 0.5 * c.h / p.etaL
    aS = 0.5 * c.h / p.etaS
    u = np.linspace(0.0, 1.6, 33)
    f_oracle = np.where(
        u <= 1.0,
        p.B0 + (c.Bc - p.B0) * erf(np.sqrt(aL) * u) / erf(np.sqrt(aL)),
        c.Bc * erfc(np.sqrt(aS) * np.clip(u, 1.0, None)) / erfc(np.sqrt(aS)),
    )
    f_lib = sol.f(u)
    assert np.max(np.abs(f_lib - f_oracle)) < 1e-7
