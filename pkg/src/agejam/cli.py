"""Command-line surface: analytic, simulate, sweep, validate, detector-table."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .aoi import StabilityError, closed_loop_paoi
from .detection import DetectorTable
from .scenario import ScenarioError, load_scenario
from .simulate import run, run_trace, write_trace
from .sweeps import (
    RECIPES,
    SweepError,
    emit,
    load_sweep_spec,
    recipe,
    rows_to_csv,
    run_sweep,
)


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def _cmd_validate(args) -> int:
    try:
        load_scenario(args.scenario)
    except ScenarioError as exc:
        return _fail("validation", str(exc), 2)
    print(f"ok: {args.scenario}")
    return 0


def _cmd_analytic(args) -> int:
    try:
        scenario = load_scenario(args.scenario)
        result = closed_loop_paoi(scenario)
    except ScenarioError as exc:
        return _fail("validation", str(exc), 2)
    except StabilityError as exc:
        return _fail("instability", f"{exc} (rho={exc.rho:g})", 1)
    except (ValueError, ArithmeticError) as exc:
        return _fail("analytic", str(exc), 1)
    print(json.dumps(dataclasses.asdict(result), indent=2))
    return 0


def _cmd_simulate(args) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        return _fail("validation", str(exc), 2)
    try:
        if args.trace:
            stats, trace = run_trace(scenario, n_slots=args.slots, seed=args.seed)
            write_trace(trace, args.trace)
        else:
            stats = run(scenario, n_slots=args.slots, seed=args.seed)
    except (ValueError, ArithmeticError) as exc:
        return _fail("simulation", str(exc), 1)
    print(json.dumps(stats.to_dict(), indent=2))
    return 0


def _cmd_sweep(args) -> int:
    try:
        if args.spec in RECIPES:
            spec = recipe(
                args.spec,
                engines=args.engines,
                n_slots=args.slots,
                seed=args.seed,
                detector_table=args.detector_table,
            )
        else:
            spec = load_sweep_spec(args.spec)
            if args.engines != spec.engines or args.slots or args.seed is not None:
                spec = dataclasses.replace(
                    spec,
                    engines=args.engines,
                    n_slots=args.slots or spec.n_slots,
                    seed=args.seed if args.seed is not None else spec.seed,
                )
    except FileNotFoundError:
        return _fail(
            "usage",
            f"{args.spec!r} is neither a recipe ({sorted(RECIPES)}) nor a spec file",
            2,
        )
    except (ValueError, ScenarioError) as exc:
        return _fail("validation", str(exc), 2)
    try:
        rows = run_sweep(spec)
    except SweepError as exc:
        return _fail("sweep", str(exc), 1)
    if args.out:
        try:
            emit(rows, args.out, fmt=args.format, spec=spec)
        except (SweepError, ValueError) as exc:
            return _fail("emit", str(exc), 1)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        if args.format != "csv":
            return _fail("usage", "svg output requires --out FILE", 2)
        sys.stdout.write(rows_to_csv(rows))
    return 0


def _cmd_detector_table(args) -> int:
    if args.action != "check":
        return _fail("usage", f"unknown detector-table action {args.action!r}", 2)
    try:
        table = DetectorTable.load(args.file)
    except FileNotFoundError:
        return _fail("io", f"no such file: {args.file}", 2)
    except (ValueError, KeyError) as exc:
        return _fail("schema", str(exc), 2)
    print(
        f"ok: {args.file} ({len(table.packet_sizes)} packet size(s), "
        f"{len(table.snr_db)} SNR points)"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="agejam",
        description="Peak age of information under reactive jamming with decoys",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate a scenario file")
    v.add_argument("scenario")
    v.set_defaults(fn=_cmd_validate)

    a = sub.add_parser("analytic", help="closed-form pipeline for one scenario")
    a.add_argument("scenario")
    a.set_defaults(fn=_cmd_analytic)

    s = sub.add_parser("simulate", help="Monte Carlo run for one scenario")
    s.add_argument("scenario")
    s.add_argument("--slots", type=int, default=None, help="override horizon length")
    s.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    s.add_argument("--trace", default=None, help="write a per-slot audit trace file")
    s.set_defaults(fn=_cmd_simulate)

    w = sub.add_parser("sweep", help="run a parameter sweep or figure recipe")
    w.add_argument("spec", help=f"recipe name ({', '.join(sorted(RECIPES))}) or spec file")
    w.add_argument("--out", default=None, help="output path (default: CSV to stdout)")
    w.add_argument("--format", choices=("csv", "svg"), default="csv")
    w.add_argument("--engines", choices=("analytic", "simulation", "both"),
                   default="analytic")
    w.add_argument("--slots", type=int, default=None)
    w.add_argument("--seed", type=int, default=None)
    w.add_argument("--detector-table", default=None,
                   help="swap in a calibrated detector table")
    w.set_defaults(fn=_cmd_sweep)

    t = sub.add_parser("detector-table", help="detector table utilities")
    t.add_argument("action", choices=("check",))
    t.add_argument("file")
    t.set_defaults(fn=_cmd_detector_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
