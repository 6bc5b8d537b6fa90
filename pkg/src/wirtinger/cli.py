"""Command line interface.

Verbs: ``compute`` prints the report for a scene, ``check`` exits nonzero
when any inequality or certificate violation is found, ``properties``
runs the seeded property suites.  Exit codes: 0 all checks pass, 1 a
violation was found, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .properties import run_properties
from .scene import SceneError, parse_scene, run_scene


def _add_scene_arguments(parser):
    parser.add_argument("scene", help="path to a scene JSON document")
    parser.add_argument(
        "--oracle", action="store_true",
        help="also evaluate brute-force degree strategies (within cutoffs)",
    )
    parser.add_argument(
        "--tolerance", type=float, default=None,
        help="override the relative comparison tolerance (default 1e-9)",
    )
    parser.add_argument(
        "--format", choices=("table", "json"), default="table",
        help="report format (table rounds to 6 significant digits)",
    )


def _load_report(args):
    with open(args.scene, "r", encoding="utf-8") as handle:
        text = handle.read()
    scene = parse_scene(text)
    return run_scene(scene, oracle=args.oracle, tolerance=args.tolerance)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wirtinger",
        description=(
            "Degrees, Wirtinger numbers and trianalyticity tests for flat "
            "quaternionic tori."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="evaluate a scene and print the report")
    _add_scene_arguments(compute)

    check = commands.add_parser(
        "check", help="evaluate a scene; exit 1 on any inequality or certificate violation"
    )
    _add_scene_arguments(check)

    props = commands.add_parser("properties", help="run the seeded property suites")
    props.add_argument("--seed", type=int, default=0)
    props.add_argument("--size", type=int, default=100)
    props.add_argument(
        "--format", choices=("table", "json"), default="table", dest="format"
    )

    args = parser.parse_args(argv)

    if args.command in ("compute", "check"):
        try:
            report = _load_report(args)
        except OSError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        except (SceneError, ValueError) as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        output = report.to_json() if args.format == "json" else report.to_table()
        sys.stdout.write(output if output.endswith("\n") else output + "\n")
        if args.command == "check" and report.violations:
            return 1
        return 0

    if args.command == "properties":
        try:
            report = run_properties(args.seed, args.size)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        output = report.to_json() if args.format == "json" else report.to_text()
        sys.stdout.write(output if output.endswith("\n") else output + "\n")
        return 0 if report.all_passed else 1

    return 2


if __name__ == "__main__":
    sys.exit(main())
