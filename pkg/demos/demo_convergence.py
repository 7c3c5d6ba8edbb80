"""Verify the exact solution against the independent finite-volume solver.

Runs the 1D simulator on a sequence of refined meshes, compares each
result to the exact field at the cell centers, and prints the error norms
with their convergence orders.  Uses coarser meshes than the acceptance
suite so it finishes in about fifteen seconds.

Run:  python demos/demo_convergence.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from magdiff import ExactSolution, BENCHMARK_PARAMS, build_report

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

p = BENCHMARK_PARAMS
t = 0.4
n_list = [100, 200, 400, 800]

print(f"comparing simulation to the exact solution at t = {t} ...")
report = build_report(p, t, n_list)

print(f"\n{'N':>6} {'L1':>12} {'L2':>12} {'Linf':>12} {'front err':>12} {'time':>8}")
for en in report.entries:
    print(
        f"{en.N:>6} {en.L1:>12.4e} {en.L2:>12.4e} {en.Linf:>12.4e} "
        f"{en.front_error:>12.4e} {en.runtime_s:>7.2f}s"
    )
print(f"\n{'pair':>12} {'L1 order':>10} {'L2 order':>10} {'Linf order':>11}")
for rec in report.orders:
    print(
        f"{rec.n_coarse:>5}->{rec.n_fine:<5} {rec.L1:>10.2f} {rec.L2:>10.2f} "
        f"{rec.Linf:>11.2f}"
    )
print(f"\nverdict: {report.verdict}")

# overlay the coarsest and finest runs on the exact curve near the knee
sol = ExactSolution(p, constants=report.constants)
fig, ax = plt.subplots(figsize=(6, 4))
x = np.linspace(0, 0.2, 800)
ax.plot(x, sol.field_at(x, t), "k-", lw=1, label="exact")
for n in (n_list[0], n_list[-1]):
    from magdiff import Mesh1D, SimConfig, run

    prof = run(Mesh1D(n_cells=n), p, SimConfig(t_end=t, output_times=(t,)),
               constants=report.constants)[-1]
    ax.plot(prof.x, prof.B, ".", ms=3, label=f"N = {n}")
ax.set_xlim(0.05, 0.13)
ax.set_ylim(0, 0.22)
ax.set_xlabel("x")
ax.set_ylabel("B(x, t)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "convergence_overlay.png", dpi=150)
print(f"wrote {OUT / 'convergence_overlay.png'}")
