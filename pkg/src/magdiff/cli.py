"""Command-line surface: config loading, file emission, exit-code mapping.

Subcommands: solve, profile, simulate, compare, scan.  A single JSON config
document pins a reproducible experiment:

    {"B0": 0.2, "ec": 0.1, "etaL": 9.7e-3, "etaS": 9.7e-5,
     "mu0": 0.12566, "xmax": 0.5, "cells": 400, "t_end": 0.4, "cfl": 0.4}

The four physical keys are required when a config file is given; without
--config the reference benchmark parameters apply.  All numeric output is
serialized as decimal with explicit exponent and 12 significant digits.

Exit codes: 0 ok, 2 invalid config/arguments, 3 root-finding failure,
4 domain too small, 5 accuracy failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import exact, simulator, verify
from .errors import (
    AccuracyError,
    AmbiguousRootError,
    DomainTooSmallError,
    NoRootError,
)
from .params import MU0_DEFAULT, ProblemParams

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ROOT = 3
EXIT_DOMAIN = 4
EXIT_ACCURACY = 5

_REQUIRED_KEYS = ("B0", "ec", "etaL", "etaS")
_OPTIONAL_KEYS = ("mu0", "xmax", "cells", "t_end", "cfl")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    problem: ProblemParams
    x_max: float = 0.5
    cells: int = 400
    t_end: float = 0.4
    cfl: float = 0.4


def fmt(x) -> str:
    """Decimal with explicit exponent, 12 significant digits."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.11e}"


def dumps_doc(obj, indent: int = 0) -> str:
    """Tiny JSON writer that renders floats via fmt()."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {dumps_doc(v, indent + 1)}"
            for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {dumps_doc(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return json.dumps(fmt(obj))  # JSON has no inf/nan literals
        return fmt(obj)
    return json.dumps(obj)


def load_config(path: str | None) -> RunConfig:
    """Load and validate the run configuration (benchmark defaults without a path)."""
    if path is None:
        return RunConfig(problem=ProblemParams())
    try:
        with open(path) as f:
            raw = json.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - set(_REQUIRED_KEYS) - set(_OPTIONAL_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = [k for k in _REQUIRED_KEYS if k not in raw]
    if missing:
        raise ConfigError(f"missing required config keys: {missing}")
    for k in list(_REQUIRED_KEYS) + ["mu0", "xmax", "t_end", "cfl"]:
        if k in raw and not isinstance(raw[k], (int, float)):
            raise ConfigError(f"config key {k} must be a number")
    if "cells" in raw and not isinstance(raw["cells"], int):
        raise ConfigError("config key cells must be an integer")
    try:
        problem = ProblemParams(
            B0=float(raw["B0"]),
            ec=float(raw["ec"]),
            etaL=float(raw["etaL"]),
            etaS=float(raw["etaS"]),
            mu0=float(raw.get("mu0", MU0_DEFAULT)),
        )
        return RunConfig(
            problem=problem,
            x_max=float(raw.get("xmax", 0.5)),
            cells=int(raw.get("cells", 400)),
            t_end=float(raw.get("t_end", 0.4)),
            cfl=float(raw.get("cfl", 0.4)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _write_text(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", newline="") as f:
            f.write(text)


def _csv(rows, header) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    cfg = load_config(args.config)
    p = cfg.problem
    c = exact.solve_constants(p)
    hs, b1, b2 = exact.bracket_curve(p)
    doc = {
        "constants": {
            "Bc": c.Bc,
            "h": c.h,
            "AL": c.AL,
            "AS": c.AS,
            "b": c.b,
            "r": c.r,
            "Hcal": c.Hcal,
            "Bcal": c.Bcal,
        },
        "bracketing_curve": [
            {"h": float(h), "bc1": float(v1), "bc2": float(v2)}
            for h, v1, v2 in zip(hs, b1, b2)
        ],
    }
    _write_text(args.out, dumps_doc(doc) + "\n")
    return EXIT_OK


def cmd_profile(args) -> int:
    cfg = load_config(args.config)
    p = cfg.problem
    t = args.t if args.t is not None else cfg.t_end
    if not (t > 0):
        raise ConfigError(f"profile time must be positive, got {t}")
    n_points = args.points
    if n_points < 16:
        raise ConfigError(f"--points must be >= 16, got {n_points}")
    sol = exact.ExactSolution(p, n_points=n_points)
    prof = sol.profile
    xc = sol.x_c(t)
    rows = []
    for u, f in zip(prof.u, prof.f):
        x = u * xc
        e = math.inf if u == 0.0 else sol.energy_at(x, t)
        rows.append((float(u), float(f), float(x), float(f), float(e)))
    _write_text(args.out, _csv(rows, header=("u", "f", "x", "B", "e")))
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    p = cfg.problem
    cells = args.cells_single if args.cells_single is not None else cfg.cells
    t = args.t if args.t is not None else cfg.t_end
    mesh = simulator.Mesh1D(n_cells=cells, x_max=cfg.x_max)
    t_end = t if t > 0 else cfg.t_end
    sim_cfg = simulator.SimConfig(t_end=t_end, cfl=cfg.cfl, output_times=(t,))
    snaps = simulator.run(mesh, p, sim_cfg)
    prof = snaps[-1]
    rows = [(float(x), float(b), float(e)) for x, b, e in zip(prof.x, prof.B, prof.e)]
    _write_text(args.out, _csv(rows, header=("x", "B", "e")))
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = load_config(args.config)
    p = cfg.problem
    t = args.t if args.t is not None else cfg.t_end
    n_list = args.cells_list if args.cells_list else [200, 400, 800, 1600]
    report = verify.build_report(p, t, n_list, x_max=cfg.x_max, cfl=cfg.cfl)
    doc = {
        "params": {
            "B0": p.B0,
            "ec": p.ec,
            "etaL": p.etaL,
            "etaS": p.etaS,
            "mu0": p.mu0,
        },
        "constants": {
            "Bc": report.constants.Bc,
            "h": report.constants.h,
            "AL": report.constants.AL,
            "AS": report.constants.AS,
            "b": report.constants.b,
            "r": report.constants.r,
            "Hcal": report.constants.Hcal,
            "Bcal": report.constants.Bcal,
        },
        "t": report.t,
        "entries": [
            {
                "N": en.N,
                "L1": en.L1,
                "L2": en.L2,
                "Linf": en.Linf,
                "front_error": en.front_error,
                "runtime_s": en.runtime_s,
                **({"error": en.error} if en.error else {}),
            }
            for en in report.entries
        ],
        "orders": [
            {
                "n_coarse": o.n_coarse,
                "n_fine": o.n_fine,
                "L1": o.L1,
                "L2": o.L2,
                "Linf": o.Linf,
                "saturated": o.saturated,
            }
            for o in report.orders
        ],
        "verdict": report.verdict,
    }
    _write_text(args.out, dumps_doc(doc) + "\n")
    return EXIT_OK


def cmd_scan(args) -> int:
    cfg = load_config(args.config)
    p = cfg.problem
    b_values = args.b if args.b else [p.b]
    r_values = args.r if args.r else [p.r]
    rows = exact.scan_table(b_values, r_values)
    if args.format == "json":
        doc = [
            {
                "b": row.b,
                "r": row.r,
                "Hcal": row.Hcal,
                "Bcal": row.Bcal,
                "status": "ok" if row.error is None else f"failed: {row.error}",
            }
            for row in rows
        ]
        _write_text(args.out, dumps_doc(doc) + "\n")
    else:
        table = [
            (
                row.b,
                row.r,
                row.Hcal,
                row.Bcal,
                "ok" if row.error is None else "failed",
            )
            for row in rows
        ]
        _write_text(args.out, _csv(table, header=("b", "r", "Hcal", "Bcal", "status")))
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="magdiff",
        description="Sharp-front magnetic diffusion: exact solution and 1D verification",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", default=None, help="JSON config path")
        sp.add_argument("--out", default=None, help="output path (stdout if omitted)")

    sp = sub.add_parser("solve", help="solve (Bc, h) and emit the bracketing curve")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("profile", help="emit the exact profile as CSV (u,f,x,B,e)")
    common(sp)
    sp.add_argument("--t", type=float, default=None, help="evaluation time")
    sp.add_argument("--points", type=int, default=1001, help="grid points on [0, 1]")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("simulate", help="run the 1D simulator, emit CSV (x,B,e)")
    common(sp)
    sp.add_argument("--t", type=float, default=None, help="snapshot time")
    sp.add_argument(
        "--cells", dest="cells_single", type=int, default=None, help="mesh cells"
    )
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("compare", help="mesh-refinement comparison report (JSON)")
    common(sp)
    sp.add_argument("--t", type=float, default=None, help="comparison time")
    sp.add_argument(
        "--cells",
        dest="cells_list",
        type=_int_list,
        default=None,
        help="comma-separated mesh sizes (default 200,400,800,1600)",
    )
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("scan", help="tabulate the dimensionless map (b, r) -> (Hcal, Bcal)")
    common(sp)
    sp.add_argument("--b", type=_float_list, default=None, help="comma-separated b values")
    sp.add_argument("--r", type=_float_list, default=None, help="comma-separated r values")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_scan)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoRootError, AmbiguousRootError) as exc:
        print(f"root-finding error: {exc}", file=sys.stderr)
        return EXIT_ROOT
    except DomainTooSmallError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
