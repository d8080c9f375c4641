"""Command-line entry point: ``wpnum verify | project | wulf``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import annulus, project, quad
from .diff import HarmonicBeltrami
from .errors import NumericError
from .io import CoefficientFile, ParseError, read_coefficients, read_grid_csv, write_coefficients
from .schwarz import PowerSeries
from .verify import Config, dumps_report, run_suite, wulf_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _writable(path: str) -> Path:
    p = Path(path)
    if not p.parent.exists() or not p.parent.is_dir():
        raise UsageError(f"output directory does not exist: {p.parent}")
    if p.exists() and p.is_dir():
        raise UsageError(f"output path is a directory: {p}")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="wpnum", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite and write a JSON report")
    v.add_argument("--nr", type=int)
    v.add_argument("--ntheta", type=int)
    v.add_argument("--degree", type=int)
    v.add_argument("--tol-scale", type=float, dest="tol_scale")
    v.add_argument("--seed", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--config", help="JSON file with any of the above keys")
    v.add_argument("--out", default="report.json")
    v.add_argument("--timings", action="store_true", help="fill runtime_ms (breaks byte determinism)")

    p = sub.add_parser("project", help="harmonic projection of a Beltrami differential")
    p.add_argument("input", help="coefficient JSON or x,y,re,im[,w] CSV")
    p.add_argument("--degree", type=int, default=32)
    p.add_argument("--nr", type=int, default=64)
    p.add_argument("--ntheta", type=int, default=256)
    p.add_argument("--out", required=True)

    w = sub.add_parser("wulf", help="trial table for the annulus sup/L2 estimate")
    w.add_argument("--r", type=float, required=True)
    w.add_argument("--t", type=float, required=True)
    w.add_argument("--trials", type=int, default=1000)
    w.add_argument("--seed", type=int, default=7)
    w.add_argument("--out", help="CSV path (default: stdout)")
    return ap


# ------------------------------------------------------------------- verify

def _load_config(args) -> Config:
    data = asdict(Config())
    if args.config:
        try:
            file_data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(file_data, dict):
            raise UsageError("config file must hold a JSON object")
        file_data = {k.replace("-", "_"): v for k, v in file_data.items()}
        data.update(file_data)
    for key in ("nr", "ntheta", "degree", "tol_scale", "seed", "trials"):
        val = getattr(args, key)
        if val is not None:
            data[key] = val
    try:
        return Config.from_mapping(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid config: {exc}") from None


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    out = _writable(args.out)
    report = run_suite(cfg, timings=args.timings)
    text = dumps_report(report)
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from None
    for rec in report["checks"]:
        print(f"{'PASS' if rec['pass'] else 'FAIL'}  {rec['check']}")
    print(f"overall: {'PASS' if report['pass'] else 'FAIL'}  ({out})")
    return EXIT_OK if report["pass"] else EXIT_FAIL


# ------------------------------------------------------------------ project

def _load_beltrami(path: str, rule):
    """Returns ``(samples_on_rule, rule)`` for a coefficient file or grid CSV."""
    if path.endswith(".csv"):
        grid = read_grid_csv(path)
        if grid.weights is not None:
            if np.any(grid.weights <= 0):
                raise ParseError("weights must be positive")
            custom = quad.QuadratureRule(("disk", 1.0), grid.nodes, grid.weights, 0, 0, 0,
                                         np.abs(grid.nodes), np.angle(grid.nodes))
            return grid.values, custom
        if grid.nodes.size != rule.nodes.size or np.max(np.abs(grid.nodes - rule.nodes)) > 1e-9:
            raise ParseError(
                f"CSV without a w column must list the {rule.n_radial}x{rule.n_angular} "
                "disk-rule nodes in order")
        return grid.values, rule
    cf = read_coefficients(path)
    obj = cf.to_object()
    if isinstance(obj, HarmonicBeltrami):
        return obj(rule.nodes), rule
    if isinstance(obj, PowerSeries):
        return obj(rule.nodes), rule
    raise ParseError("laurent data is not defined on the disk; use taylor or harmonic_beltrami")


def cmd_project(args) -> int:
    if args.degree < 0:
        raise UsageError("--degree must be >= 0")
    try:
        rule = quad.disk_rule(args.nr, args.ntheta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = _writable(args.out)
    try:
        samples, rule = _load_beltrami(args.input, rule)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    harmonic = project.p_project(samples, args.degree, rule)
    trivial = np.asarray(samples) - harmonic(rule.nodes)
    ok, res = project.is_infinitesimally_trivial(trivial, args.degree, rule=rule)
    try:
        write_coefficients(out, harmonic)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from None
    print(json.dumps({"output": str(out), "degree": args.degree,
                      "max_residual_moment": float(res.max()), "trivial_part_ok": ok}))
    return EXIT_OK


# --------------------------------------------------------------------- wulf

def cmd_wulf(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if not 1 < args.t < args.r:
        raise UsageError(f"need 1 < t < r, got r={args.r}, t={args.t}")
    if args.seed < 0:
        raise UsageError("--seed must be nonnegative")
    out = _writable(args.out) if args.out else None
    rows = wulf_table(args.seed, args.r, args.t, args.trials)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "sup", "norm", "bound", "ratio"])
    for row in rows:
        w.writerow([row[0]] + [repr(float(x)) for x in row[1:]])
    if out:
        try:
            out.write_text(buf.getvalue(), encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(buf.getvalue())
    worst = max(row[4] for row in rows)
    violations = sum(row[4] > 1 for row in rows)
    print(f"# C(r,t)={float(annulus.wulf_constant(args.r, args.t))!r} max_ratio={float(worst)!r} "
          f"violations={violations} trials={len(rows)}")
    return EXIT_OK if violations == 0 else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "project": cmd_project, "wulf": cmd_wulf}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"wpnum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, NumericError) as exc:
        print(f"wpnum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
