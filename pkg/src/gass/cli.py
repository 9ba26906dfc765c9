"""Command-line front end.

Usage::

    gass analytic --config fig2a.ini
    gass simulate --config fig2a.ini --seed 7
    gass sweep    --config fig2a.ini --sweep-var hardcore_distance --sweep-values 0,100,200
    gass validate --config fig2a.ini --tol 0.02

Exit codes: 0 success, 1 validation tolerance exceeded, 2 invalid config,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .analytic import overall_connectivity
from .config import SWEEP_VARIABLES, RunConfig, SweepSpec, load_config, parse_values
from .errors import ConfigError, ConsistencyError, QuadratureError
from .simcore import combine, simulate_hop1, simulate_hop2

CSV_COLUMNS = [
    "sweep_var", "value", "p1_ana", "p2_ana", "pov_ana",
    "p1_sim", "p1_ci95_halfwidth", "p2_sim", "p2_ci95_halfwidth", "pov_sim",
]

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gass", description="Two-hop ground-air-satellite connectivity.")
    parser.add_argument("command", choices=["analytic", "simulate", "sweep", "validate"])
    parser.add_argument("--config", required=True, help="INI or JSON config file")
    parser.add_argument("--sweep-var", choices=sorted(SWEEP_VARIABLES))
    parser.add_argument("--sweep-values", help="comma-separated values in config units")
    parser.add_argument("--tol", type=float, default=0.02, help="validate: max |analytic - simulated|")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--seed", type=int, help="override [sim] seed")
    parser.add_argument("--trials", type=int, help="override [sim] trials")
    return parser


def _simulate(rc: RunConfig):
    return combine(simulate_hop1(rc.system, rc.plan), simulate_hop2(rc.system, rc.plan))


def _sweep_spec(args, rc: RunConfig) -> SweepSpec:
    if args.sweep_var or args.sweep_values:
        if not (args.sweep_var and args.sweep_values):
            raise ConfigError("sweep", "--sweep-var and --sweep-values go together")
        return SweepSpec(args.sweep_var, parse_values(args.sweep_values))
    if rc.sweep is None:
        raise ConfigError("sweep", "no sweep given on the command line or in the config")
    return rc.sweep


def sweep_rows(rc: RunConfig, spec: SweepSpec):
    rows = []
    for value in spec.values:
        point = rc.with_value(spec.variable, value)
        ana = overall_connectivity(point.system)
        sim = _simulate(point)
        rows.append({
            "sweep_var": spec.variable,
            "value": value,
            "p1_ana": ana.p1, "p2_ana": ana.p2, "pov_ana": ana.p_overall,
            "p1_sim": sim.p1, "p1_ci95_halfwidth": 0.5 * (sim.ci95["p1"][1] - sim.ci95["p1"][0]),
            "p2_sim": sim.p2, "p2_ci95_halfwidth": 0.5 * (sim.ci95["p2"][1] - sim.ci95["p2"][0]),
            "pov_sim": sim.p_overall,
        })
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([row[c] if isinstance(row[c], str) else repr(float(row[c])) for c in CSV_COLUMNS])
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = load_config(args.config)
        if args.seed is not None:
            rc = rc.with_sim(seed=args.seed)
        if args.trials is not None:
            rc = rc.with_sim(trials=args.trials)

        if args.command == "analytic":
            res = overall_connectivity(rc.system)
            _emit(_dump({"result": res.to_dict(), "config": rc.mapping}), args.out)
            return EXIT_OK

        if args.command == "simulate":
            e1, e2 = simulate_hop1(rc.system, rc.plan), simulate_hop2(rc.system, rc.plan)
            out = {"hop1": e1.to_dict(), "hop2": e2.to_dict(),
                   "overall": combine(e1, e2).to_dict(), "config": rc.mapping}
            _emit(_dump(out), args.out)
            return EXIT_OK

        if args.command == "sweep":
            spec = _sweep_spec(args, rc)
            rows = sweep_rows(rc, spec)
            if args.format == "json":
                _emit(_dump({"rows": rows, "config": rc.mapping}), args.out)
            else:
                _emit(rows_to_csv(rows), args.out)
            return EXIT_OK

        # validate
        spec = None
        if args.sweep_var or args.sweep_values or rc.sweep is not None:
            spec = _sweep_spec(args, rc)
        if spec is None:
            ana, sim = overall_connectivity(rc.system), _simulate(rc)
            rows = [{"p1_ana": ana.p1, "p2_ana": ana.p2, "p1_sim": sim.p1, "p2_sim": sim.p2}]
        else:
            rows = sweep_rows(rc, spec)
        max1 = max(abs(r["p1_ana"] - r["p1_sim"]) for r in rows)
        max2 = max(abs(r["p2_ana"] - r["p2_sim"]) for r in rows)
        ok = max1 <= args.tol and max2 <= args.tol
        report = {"max_abs_diff_hop1": max1, "max_abs_diff_hop2": max2, "tol": args.tol,
                  "points": len(rows), "pass": ok}
        _emit(_dump(report), args.out)
        return EXIT_OK if ok else EXIT_TOLERANCE

    except ConfigError as exc:
        print(f"gass: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"gass: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, ConsistencyError, ArithmeticError) as exc:
        print(f"gass: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
