"""Map the dimensionless solution surface.

The solved constants reduce to two functions of two dimensionless inputs:
the drive strength b = B0 / sqrt(2 mu0 ec) and the resistivity ratio
r = etaL / etaS, with h = etaL * Hcal(b, r) and Bc = B0 * Bcal(b, r).
This demo tabulates a small (b, r) grid and prints it.

Run:  python demos/demo_scan.py
"""

import pathlib

import numpy as np

from magdiff import BENCHMARK_PARAMS, scan_table

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

b_values = [0.5, 1.0, BENCHMARK_PARAMS.b, 2.0]
r_values = [10.0, 100.0, 1000.0]

print("scanning the (b, r) map ...")
rows = scan_table(b_values, r_values)

print(f"\n{'b':>9} {'r':>8} {'Hcal':>12} {'Bcal':>12}")
for row in rows:
    status = "" if row.error is None else f"  FAILED: {row.error}"
    print(f"{row.b:>9.4f} {row.r:>8.1f} {row.Hcal:>12.6f} {row.Bcal:>12.6f}{status}")

table = np.array([[r.b, r.r, r.Hcal, r.Bcal] for r in rows])
np.savetxt(
    OUT / "dimensionless_map.csv",
    table,
    delimiter=",",
    header="b,r,Hcal,Bcal",
    comments="",
)
print(f"\nwrote {OUT / 'dimensionless_map.csv'}")
print(
    "\nthe benchmark cell (b=%.4f, r=%.0f) reproduces h/etaL=%.4f, Bc/B0=%.4f"
    % (BENCHMARK_PARAMS.b, BENCHMARK_PARAMS.r, rows[7].Hcal, rows[7].Bcal)
)
