"""Command-line interface.

Subcommands mirror the scenario kinds (tail, system, phase-scan, lifetime,
cohort, bayes, effdim, simulate) plus two composite emitters (figures,
golden). Compute subcommands read their parameters from a JSON config via
--config and write CSV or JSON via --out/--format, printing to stdout when
no output path is given.

Exit codes: 0 success; 1 golden-registry failure; 2 schema violation;
3 numeric domain error; 4 budget exceeded. Errors print one machine-parsable
line to stderr: ``error[schema|domain|budget]: <message>``.
"""

from __future__ import annotations

import argparse
import sys

from .datasets import figure_panels
from .errors import BudgetError, DomainError, SchemaError
from .golden import all_pass, golden_report, render_table, rows_for_output
from .scenarios import Scenario, load_scenario, run_scenario
from .tableio import file_sha256, render_csv, write_json, write_text

__all__ = ["main", "build_parser"]

_GOLDEN_COLUMNS = ["name", "value", "expected", "tol_abs", "tol_rel", "status", "note"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="screenlimits",
        description="False-alert limits of threshold screening systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scenario_commands = {
        "tail": "tail",
        "system": "system",
        "phase-scan": "phase",
        "lifetime": "lifetime",
        "cohort": "cohort",
        "bayes": "bayes",
        "effdim": "effdim",
        "simulate": "simulate",
    }
    for command, kind in scenario_commands.items():
        cmd = sub.add_parser(command, help=f"run a {kind} scenario from a JSON config")
        cmd.add_argument("--config", required=True, help="scenario JSON file")
        cmd.add_argument("--out", default=None, help="output file (stdout if omitted)")
        cmd.add_argument("--format", choices=("csv", "json"), default="csv")
        if kind == "simulate":
            cmd.add_argument("--runs", type=int, default=None, help="override trial count")
            cmd.add_argument("--seed", type=int, default=None, help="override RNG seed")
            cmd.add_argument("--workers", type=int, default=None, help="override worker threads")
        if kind == "lifetime":
            cmd.add_argument(
                "--criterion-level",
                type=float,
                default=None,
                help="expected false alerts defining failure (default 1.0)",
            )
        cmd.set_defaults(func=_scenario_command, kind=kind)

    fig = sub.add_parser("figures", help="emit the four phase-transition panel datasets")
    fig.add_argument("--out", default="figures", help="output directory")
    fig.add_argument("--runs", type=int, default=5000, help="Monte Carlo trials per point")
    fig.add_argument("--seed", type=int, default=0, help="RNG seed")
    fig.add_argument("--workers", type=int, default=1, help="worker threads")
    fig.set_defaults(func=_figures_command)

    gold = sub.add_parser("golden", help="recompute the frozen reference-value registry")
    gold.add_argument("--out", default=None, help="output file (stdout table if omitted)")
    gold.add_argument("--format", choices=("csv", "json"), default="csv")
    gold.add_argument(
        "--tol-scale",
        type=float,
        default=1.0,
        help="multiplier on all registry tolerances (0 forces exact comparison)",
    )
    gold.set_defaults(func=_golden_command)
    return parser


def _scenario_command(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.config)
    if scenario.kind != args.kind:
        raise SchemaError(
            f"config has kind {scenario.kind!r} but subcommand expects {args.kind!r}"
        )
    params = dict(scenario.parameters)
    if args.kind == "simulate":
        if args.runs is not None:
            params["runs"] = args.runs
        if args.seed is not None:
            params["seed"] = args.seed
        if args.workers is not None:
            params["workers"] = args.workers
    if args.kind == "lifetime" and args.criterion_level is not None:
        params["criterion_level"] = args.criterion_level
    scenario = Scenario(name=scenario.name, kind=scenario.kind, parameters=params)
    text, _ = run_scenario(scenario, args.out, args.format)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def _figures_command(args: argparse.Namespace) -> int:
    report = figure_panels(args.out, runs=args.runs, seed=args.seed, workers=args.workers)
    for name, digest in sorted(report["files"].items()):
        print(f"{name}  sha256={digest}")
    print(f"wrote {len(report['files'])} panels + manifest.json to {report['dir']}")
    return 0


def _golden_command(args: argparse.Namespace) -> int:
    checks = golden_report(tol_scale=args.tol_scale)
    ok = all_pass(checks)
    if args.out is None:
        print(render_table(checks))
        return 0 if ok else 1

    from pathlib import Path

    rows = [[row[col] for col in _GOLDEN_COLUMNS] for row in rows_for_output(checks)]
    out = Path(args.out)
    if out.parent:
        out.parent.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        import json

        text = json.dumps(
            {"tol_scale": args.tol_scale, "columns": _GOLDEN_COLUMNS, "rows": rows},
            sort_keys=True,
            indent=2,
        ) + "\n"
    else:
        text = render_csv(
            ["frozen reference-value registry", f"tol_scale = {args.tol_scale!r}"],
            _GOLDEN_COLUMNS,
            rows,
        )
    write_text(out, text)

    from . import __version__

    write_json(
        out.with_name(out.name + ".manifest.json"),
        {
            "scenario": "golden",
            "kind": "golden",
            "parameters": {"tol_scale": args.tol_scale},
            "seed": None,
            "artifact_version": __version__,
            "output": out.name,
            "sha256": file_sha256(out),
        },
    )
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error[schema]: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error[budget]: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error[domain]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
