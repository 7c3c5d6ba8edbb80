"""Walk through the exact solution for the benchmark parameter set.

Solves the two time-independent constants, shows the intersection of the
two knee-field curves that defines them, builds the normalized profile
f(u), and rescales it into physical B(x, t) snapshots.

Run:  python demos/demo_exact_solution.py
Writes CSV data and PNG figures into demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from magdiff import ExactSolution, BENCHMARK_PARAMS, bracket_curve

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

p = BENCHMARK_PARAMS
print("parameters:", p)

sol = ExactSolution(p)
c = sol.constants
print(f"\nsolved constants:")
print(f"  Bc   = {c.Bc:.6f}   (field on the knee)")
print(f"  h    = {c.h:.6e}   (mu0 * v_c * x_c, sets the front law)")
print(f"  AL   = {c.AL:.6f}   AS = {c.AS:.4e}")
print(f"  b    = {c.b:.6f}    r = {c.r:.1f}")
print(f"  Hcal = {c.Hcal:.6f} Bcal = {c.Bcal:.6f}")

# the intersection of the two knee-field relations pins (Bc, h)
hs, bc1, bc2 = bracket_curve(p)
fig, ax = plt.subplots(figsize=(6, 4))
ax.semilogx(hs, bc1, label="flux-continuity relation")
ax.semilogx(hs, bc2, label="energy relation")
ax.plot([c.h], [c.Bc], "ko", label=f"intersection ({c.h:.3e}, {c.Bc:.4f})")
ax.set_xlabel("h")
ax.set_ylabel("knee field")
ax.set_ylim(0, 1.1 * p.B0)
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "knee_field_intersection.png", dpi=150)
print(f"\nwrote {OUT / 'knee_field_intersection.png'}")

# normalized profile f(u): flat-ish burned segment, sharp cold tail
prof = sol.profile
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(prof.u, prof.f)
ax.axvline(1.0, color="k", ls=":", lw=0.8)
ax.annotate("knee (u=1)", (1.0, c.Bc), textcoords="offset points", xytext=(8, 8))
ax.set_xlabel("u = x / x_c(t)")
ax.set_ylabel("f(u)")
fig.tight_layout()
fig.savefig(OUT / "normalized_profile.png", dpi=150)
np.savetxt(
    OUT / "normalized_profile.csv",
    np.column_stack([prof.u, prof.f, prof.fprime]),
    delimiter=",",
    header="u,f,fprime",
    comments="",
)
print(f"wrote {OUT / 'normalized_profile.png'} and .csv ({len(prof.u)} samples)")

# physical-space snapshots: horizontal stretching by x_c(t)
fig, ax = plt.subplots(figsize=(6, 4))
x = np.linspace(0, 0.3, 600)
for t in (0.1, 0.2, 0.4):
    ax.plot(x, sol.field_at(x, t), label=f"t = {t}  (x_c = {sol.x_c(t):.4f})")
ax.set_xlabel("x")
ax.set_ylabel("B(x, t)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "field_snapshots.png", dpi=150)
print(f"wrote {OUT / 'field_snapshots.png'}")

# the front obeys x_c = sqrt(2 h t / mu0); energy at the front equals ec
for t in (0.1, 0.4):
    xc = sol.x_c(t)
    print(
        f"t={t}: x_c={xc:.5f}, v_c={sol.front_velocity(t):.5f}, "
        f"e(x_c)={sol.energy_at(xc, t):.8f} (ec = {p.ec})"
    )
