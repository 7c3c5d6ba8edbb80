"""Quantitative comparison of simulated against exact field profiles.

Errors are sampled at the simulation cell centers (the exact solution is
interpolated there), L1/L2 are cell-width weighted, and the verdict rule
is: every norm strictly decreasing along the mesh sequence, and the front
position at the finest mesh within two cell widths of the exact front.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import exact, simulator
from .errors import FrontNotFoundError
from .params import FieldProfile, ProblemParams
from .quadrature import QuadratureSpec


def norms(sim: FieldProfile, exact_eval: Callable) -> tuple[float, float, float]:
    """(L1, L2, Linf) of B_sim - B_exact at the cell centers.

    L1 and L2 carry the cell width: a constant offset d over a domain of
    length L gives L1 = d*L, L2 = d*sqrt(L), Linf = d.
    """
    if len(sim.x) < 2:
        raise ValueError("profile needs at least two cells")
    dx = float(sim.x[1] - sim.x[0])
    delta = sim.B - np.asarray(exact_eval(sim.x), dtype=float)
    ad = np.abs(delta)
    return (
        float(np.sum(ad) * dx),
        float(math.sqrt(np.sum(delta * delta) * dx)),
        float(np.max(ad)),
    )


@dataclass(frozen=True)
class ComparisonEntry:
    """Per-mesh record of the comparison run."""

    N: int
    L1: float
    L2: float
    Linf: float
    front_error: float
    runtime_s: float
    error: str | None = None


@dataclass(frozen=True)
class OrderRecord:
    """Convergence order between two successive meshes, per norm.

    Orders are log2 error ratios for doubled N (generalized to arbitrary
    ratios); a None order means the fine-mesh error was exactly zero
    ("saturated").
    """

    n_coarse: int
    n_fine: int
    L1: float | None
    L2: float | None
    Linf: float | None
    saturated: bool = False


@dataclass(frozen=True)
class ComparisonReport:
    params: ProblemParams
    constants: exact.SolvedConstants
    t: float
    entries: list[ComparisonEntry]
    orders: list[OrderRecord]
    verdict: str  # "pass" | "fail"


def convergence_orders(entries: Sequence[ComparisonEntry]) -> list[OrderRecord]:
    """Per-pair convergence orders along an ascending-N entry list."""
    ok = [en for en in entries if en.error is None]
    if len(ok) < 2:
        raise ValueError("need at least two successful entries")
    records = []
    for a, b in zip(ok[:-1], ok[1:]):
        scale = math.log(b.N / a.N)

        def order(coarse: float, fine: float) -> float | None:
            if fine == 0.0:
                return None
            return math.log(coarse / fine) / scale

        o1, o2, oi = order(a.L1, b.L1), order(a.L2, b.L2), order(a.Linf, b.Linf)
        records.append(
            OrderRecord(
                n_coarse=a.N,
                n_fine=b.N,
                L1=o1,
                L2=o2,
                Linf=oi,
                saturated=any(o is None for o in (o1, o2, oi)),
            )
        )
    return records


def verdict(entries: Sequence[ComparisonEntry], dx_finest: float) -> str:
    ok = [en for en in entries if en.error is None]
    if len(ok) != len(entries) or len(ok) < 2:
        return "fail"
    for a, b in zip(ok[:-1], ok[1:]):
        if not (b.L1 < a.L1 and b.L2 < a.L2 and b.Linf < a.Linf):
            return "fail"
    if not (ok[-1].front_error < 2.0 * dx_finest):
        return "fail"
    return "pass"


def report_from_profiles(
    p: ProblemParams,
    constants: exact.SolvedConstants,
    profiles: dict[int, FieldProfile],
    runtimes: dict[int, float] | None = None,
    x_max: float = 0.5,
    n_points: int = 1001,
    spec: QuadratureSpec | None = None,
) -> ComparisonReport:
    """Assemble a report from precomputed per-N snapshots (deterministic).

    Each profile is compared at its own recorded time, so snapshot-time
    rounding does not pollute the norms.
    """
    runtimes = runtimes or {}
    sol = exact.ExactSolution(p, n_points=n_points, spec=spec, constants=constants)
    entries: list[ComparisonEntry] = []
    t_report = 0.0
    for n in sorted(profiles):
        prof = profiles[n]
        t_report = prof.t
        try:
            l1, l2, linf = norms(prof, lambda x: sol.field_at(x, prof.t))
            front = simulator.extract_front(prof, p)
            fe = abs(front - sol.x_c(prof.t))
            entries.append(
                ComparisonEntry(
                    N=n,
                    L1=l1,
                    L2=l2,
                    Linf=linf,
                    front_error=fe,
                    runtime_s=runtimes.get(n, 0.0),
                )
            )
        except FrontNotFoundError as exc:
            entries.append(
                ComparisonEntry(
                    N=n,
                    L1=math.nan,
                    L2=math.nan,
                    Linf=math.nan,
                    front_error=math.nan,
                    runtime_s=runtimes.get(n, 0.0),
                    error=str(exc),
                )
            )
    try:
        orders = convergence_orders(entries)
    except ValueError:
        orders = []
    dx_finest = x_max / max(profiles)
    return ComparisonReport(
        params=p,
        constants=constants,
        t=t_report,
        entries=entries,
        orders=orders,
        verdict=verdict(entries, dx_finest),
    )


def build_report(
    p: ProblemParams,
    t: float,
    n_list: Sequence[int],
    constants: exact.SolvedConstants | None = None,
    x_max: float = 0.5,
    cfl: float = 0.4,
    spec: QuadratureSpec | None = None,
) -> ComparisonReport:
    """Run the mesh-refinement comparison end to end.

    Solves the constants once, runs the simulator for each N in ascending
    order, and reduces the per-mesh errors into a ComparisonReport.  The
    constants argument allows injecting perturbed values (negative
    controls); everything but the recorded runtimes is deterministic.
    """
    n_list = list(n_list)
    if len(n_list) < 2:
        raise ValueError(f"need at least two mesh sizes, got {n_list}")
    if any(b <= a for a, b in zip(n_list[:-1], n_list[1:])):
        raise ValueError(f"mesh sizes must be strictly ascending, got {n_list}")
    if constants is None:
        constants = exact.solve_constants(p, spec)
    profiles: dict[int, FieldProfile] = {}
    runtimes: dict[int, float] = {}
    for n in n_list:
        mesh = simulator.Mesh1D(n_cells=n, x_max=x_max)
        cfg = simulator.SimConfig(t_end=t, cfl=cfl, output_times=(t,))
        t0 = time.perf_counter()
        snaps = simulator.run(mesh, p, cfg, constants=constants)
        runtimes[n] = time.perf_counter() - t0
        profiles[n] = snaps[-1]
    return report_from_profiles(
        p, constants, profiles, runtimes, x_max=x_max, spec=spec
    )
