"""Command-line interface.

Exit codes: 0 success, 1 tolerance/validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import (
    CONTOUR_HEADER,
    SWEEP_HEADER,
    VALIDATE_HEADER,
    GridSpec,
    run_contour,
    run_sweep,
    run_validate,
    sweep_spec_from_dict,
    validate_battery,
)
from .model import Design, ScenarioError, scenario_from_json
from .optimize import rbdo_frontier, rbdo_optimize, ro_optimize
from .reliability import system_failure_probability
from .tables import reference_scenario, reproduce_table
from . import report


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twobar",
        description="Reliability and risk-optimal design of two-bar redundant systems.")
    p.add_argument("--config", help="scenario JSON (default: built-in reference scenario)")
    p.add_argument("--out", help="output CSV path (default depends on the command)")
    p.add_argument("--seed", type=int, default=42, help="simulation seed (default 42)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (default 1)")
    p.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("reproduce", help="recompute a bundled reference table")
    sp.add_argument("table", type=int, help="table id: 2, 3, 4 or 5")

    sp = sub.add_parser("sweep", help="parametric sweep of optimizations")
    sp.add_argument("--spec", required=True, help="sweep specification JSON")

    sub.add_parser("ro", help="risk optimization of the scenario")

    sp = sub.add_parser("rbdo", help="reliability-constrained optimization")
    sp.add_argument("--beta-t", type=float, required=True, help="target system index")
    sp.add_argument("--lam1-grid", default="0:2:41",
                    help="frontier grid start:stop:count (default 0:2:41)")
    sp.add_argument("--lam-max", type=float, default=10.0)

    sp = sub.add_parser("contour", help="grid evaluation of beta_sys or the risk objective")
    sp.add_argument("--quantity", choices=("beta_sys", "ro_total"), default="ro_total")
    sp.add_argument("--lam1", required=True, help="start:stop:step")
    sp.add_argument("--lam2", required=True, help="start:stop:step")

    sp = sub.add_parser("validate", help="closed form vs Monte Carlo simulation")
    sp.add_argument("--n", type=int, default=1_000_000, help="replicates (default 1e6)")
    sp.add_argument("--design", help="lam1,lam2 (default: scenario-matched reference optimum)")
    sp.add_argument("--battery", action="store_true",
                    help="run the full reference battery instead of a single case")
    return p


def _scenario(args):
    if args.config:
        return scenario_from_json(args.config)
    return reference_scenario()


def _triple(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:step, got {text!r}")
    return float(parts[0]), float(parts[1]), float(parts[2])


def _out(args, default: str) -> str:
    return args.out if args.out else default


def _cmd_reproduce(args) -> int:
    rep = reproduce_table(args.table)
    path = _out(args, f"reproduce_table{args.table}.csv")
    header = ("table", "column", "cell", "computed", "reference", "deviation",
              "tolerance", "status", "note")
    rows = [(c.table, c.column, c.cell, c.computed, c.reference, c.deviation,
             c.tolerance, c.status, c.note) for c in rep.checks]
    report.write_csv(path, header, rows)
    if not args.no_plot:
        report.render_reproduce(rep, report.figure_path(path))
    print(f"table {args.table}: {rep.n_ok} ok, {rep.n_known} known, {rep.n_fail} fail "
          f"-> {path}")
    for c in rep.checks:
        if c.status == "fail":
            print(f"  FAIL {c.column}/{c.cell}: computed {c.computed:.6g} vs "
                  f"reference {c.reference:.6g} (tol {c.tolerance:g})")
    return 0 if rep.passed else 1


def _cmd_sweep(args) -> int:
    with open(args.spec, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    spec = sweep_spec_from_dict(doc)
    rows = run_sweep(spec, jobs=args.jobs)
    path = _out(args, "sweep.csv")
    report.write_csv(path, SWEEP_HEADER, rows)
    if not args.no_plot:
        report.render_sweep(rows, SWEEP_HEADER, report.figure_path(path))
    print(f"sweep: {len(rows)} rows -> {path}")
    return 0


def _cmd_ro(args) -> int:
    scenario = _scenario(args)
    res = ro_optimize(scenario)
    path = _out(args, "ro.csv")
    header = ("lam1", "lam2", "beta_sys", "p_sys", "material", "sf", "pc", "dc",
              "total", "is_best", "converged", "evaluations")
    rows = []
    for design, value in res.local_minima:
        bd = system_failure_probability(design, scenario)
        rows.append((design.lam1, design.lam2, bd.beta_sys, bd.p_sys,
                     "", "", "", "", value,
                     int(design == res.best), int(res.converged), res.evaluations))
    best = res.costs
    rows.insert(0, (res.best.lam1, res.best.lam2, res.breakdown.beta_sys,
                    res.breakdown.p_sys, best.material, best.sf, best.pc, best.dc,
                    best.total, 1, int(res.converged), res.evaluations))
    report.write_csv(path, header, rows)
    print(f"ro optimum: lam1={res.best.lam1:.4f} lam2={res.best.lam2:.4f} "
          f"total={best.total:.4f} beta_sys={res.breakdown.beta_sys:.4f} -> {path}")
    if res.message:
        print(f"  note: {res.message}")
    return 0


def _cmd_rbdo(args) -> int:
    scenario = _scenario(args)
    start, stop, count = _triple(args.lam1_grid)
    n = int(count)
    if n < 2 or stop < start:
        raise ValueError(f"bad lam1 grid {args.lam1_grid!r}")
    grid = [start + i * (stop - start) / (n - 1) for i in range(n)]
    points = rbdo_frontier(scenario, args.beta_t, grid, lam_max=args.lam_max)
    res = rbdo_optimize(scenario, args.beta_t, lam_max=args.lam_max)
    path = _out(args, "rbdo.csv")
    rows = [(p.lam1, p.lam2_required, p.beta_sys_achieved, int(p.feasible))
            for p in points]
    report.write_csv(path, ("lam1", "lam2_required", "beta_sys", "feasible"), rows)
    if not args.no_plot:
        report.render_frontier(points, args.beta_t, report.figure_path(path))
    if res.feasible:
        print(f"rbdo optimum: lam1={res.best.lam1:.4f} lam2={res.best.lam2:.4f} "
              f"material={res.costs.material:.4f} beta_sys={res.breakdown.beta_sys:.4f} "
              f"-> {path}")
        if res.message:
            print(f"  note: {res.message}")
    else:
        print(f"rbdo: {res.message} -> {path}")
    return 0


def _cmd_contour(args) -> int:
    scenario = _scenario(args)
    g1 = _triple(args.lam1)
    g2 = _triple(args.lam2)
    grid = GridSpec(g1[0], g1[1], g1[2], g2[0], g2[1], g2[2], args.quantity)
    rows = run_contour(scenario, grid)
    path = _out(args, "contour.csv")
    report.write_csv(path, CONTOUR_HEADER, rows)
    if not args.no_plot:
        report.render_contour(rows, args.quantity, report.figure_path(path))
    print(f"contour: {len(rows)} cells -> {path}")
    return 0


def _cmd_validate(args) -> int:
    if args.battery:
        rows = validate_battery(args.n, args.seed, jobs=args.jobs)
    else:
        scenario = _scenario(args)
        if args.design:
            l1, l2 = (float(x) for x in args.design.split(","))
            design = Design(l1, l2)
        else:
            design = Design(1.110, 1.110)
        rows = run_validate(scenario, design, args.n, args.seed)
    path = _out(args, "validate.csv")
    out_rows = [(r.case, r.quantity, r.closed_form, r.simulated, r.std_error,
                 r.gap, r.gap_se, r.status, r.note) for r in rows]
    report.write_csv(path, VALIDATE_HEADER, out_rows)
    if not args.no_plot:
        report.render_validation(rows, report.figure_path(path))
    n_pass = sum(r.status == "pass" for r in rows)
    n_known = sum(r.status == "known" for r in rows)
    n_fail = sum(r.status == "fail" for r in rows)
    print(f"validate: {n_pass} pass, {n_known} known, {n_fail} fail -> {path}")
    for r in rows:
        if r.status == "known":
            print(f"  KNOWN {r.case}/{r.quantity}: gap {r.gap:+.3e} "
                  f"({r.gap_se:+.1f} SE) - {r.note}")
    for r in rows:
        if r.status == "fail":
            print(f"  FAIL {r.case}/{r.quantity}: closed {r.closed_form:.6g} vs "
                  f"simulated {r.simulated:.6g} ({r.gap_se:+.1f} SE)")
    return 0 if n_fail == 0 else 1


_COMMANDS = {
    "reproduce": _cmd_reproduce,
    "sweep": _cmd_sweep,
    "ro": _cmd_ro,
    "rbdo": _cmd_rbdo,
    "contour": _cmd_contour,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ScenarioError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
