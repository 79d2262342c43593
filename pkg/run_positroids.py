#!/usr/bin/env python3
"""
Command-line front end for positroid conversion, analysis, smoothness
decisions, Johnson graph export and the smooth positroid census

Exit status: 0 on success, 1 on domain errors, 2 on usage or malformed input.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

from dotenv import load_dotenv

from libs.decorated_lib import (
    TRANSFORMS,
    DecoratedPermutation,
    GrassmannInterval,
    GrassmannNecklace,
    alignments,
    crossed_alignments,
    direct_sum,
    from_grassmann_interval,
    from_necklace,
    grassmann_necklace,
    sif_decomposition,
    to_grassmann_interval,
    transform,
)
from libs.enumeration_lib import census, growth_ratio
from libs.export_lib import ExportService
from libs.permutation_lib import MAX_INTERVAL_N, length
from libs.positroid_lib import (
    Positroid,
    codimension,
    decorated_from_positroid,
    johnson_graph,
    matroid_ops,
    positroid_from_decorated,
    positroid_from_matrix,
    rational_matrix,
)
from libs.smoothness_lib import C2_DEFAULT_MAX_N, smoothness_report

logger = logging.getLogger(__name__)

REPRESENTATIONS = ("decorated", "interval", "necklace", "positroid", "matrix")
# Matrices are accepted as input only
TARGETS = REPRESENTATIONS[:-1]
POSITROID_OPS = {"dual": "dual", "shift": "cyclic_shift", "reversal": "ground_reversal"}
CENSUS_TABLES = ("s", "s1", "s2", "s3", "all")


class UsageError(Exception):
    """Malformed command line or input document"""


def read_source(value: str) -> str:
    """Inline JSON, @path for a file, or - for stdin"""
    try:
        if value == "-":
            text = sys.stdin.read()
        elif value.startswith("@"):
            with open(value[1:], encoding="utf-8") as handle:
                text = handle.read()
        else:
            text = value
    except OSError as e:
        raise UsageError(f"Cannot read input {value!r}: {e}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"Malformed JSON input: {e}")


def parse_input(kind: str, document: str) -> Any:
    """Build the input object; schema problems are usage errors"""
    try:
        if kind == "decorated":
            return DecoratedPermutation.from_dict(document)
        if kind == "interval":
            return GrassmannInterval.from_dict(document)
        if kind == "necklace":
            return GrassmannNecklace.from_sets(document)
        if kind == "positroid":
            return Positroid.from_dict(document)
        if kind == "matrix":
            return rational_matrix(document)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise UsageError(f"Invalid {kind} input: {e}")
    raise UsageError(f"Unknown input kind {kind!r}")


def to_decorated(kind: str, obj: Any) -> DecoratedPermutation:
    """Any input representation to its decorated permutation; domain errors propagate"""
    if kind == "decorated":
        return obj
    if kind == "interval":
        return from_grassmann_interval(obj)
    if kind == "necklace":
        return from_necklace(obj)
    if kind == "positroid":
        return decorated_from_positroid(obj)
    positroid, tnn = positroid_from_matrix(obj)
    if not tnn:
        logger.warning("Input matrix has negative maximal minors; its matroid need not be a positroid")
    return decorated_from_positroid(positroid)


def load_decorated(args: argparse.Namespace) -> Tuple[str, Any, DecoratedPermutation]:
    kind = next((name for name in REPRESENTATIONS if getattr(args, name) is not None), None)
    if kind is None:
        raise UsageError(f"One input is required: --{', --'.join(REPRESENTATIONS)}")
    obj = parse_input(kind, read_source(getattr(args, kind)))
    return kind, obj, to_decorated(kind, obj)


def represent(dp: DecoratedPermutation, target: str) -> Any:
    if target == "decorated":
        return dp.to_dict()
    if target == "interval":
        return to_grassmann_interval(dp).to_dict()
    if target == "necklace":
        return grassmann_necklace(dp).to_list()
    return positroid_from_decorated(dp).to_dict()


def command_convert(args: argparse.Namespace) -> Dict[str, Any]:
    kind, obj, dp = load_decorated(args)
    if args.to == "all":
        return {name: represent(dp, name) for name in TARGETS}
    return represent(dp, args.to)


def command_analyze(args: argparse.Namespace) -> Dict[str, Any]:
    kind, obj, dp = load_decorated(args)
    interval = to_grassmann_interval(dp)
    partition, components = sif_decomposition(dp)
    if args.svg:
        ExportService("svg").write(dp, args.svg)
    return {
        "decorated": dp.to_dict(),
        "k": interval.k,
        "necklace": grassmann_necklace(dp).to_list(),
        "interval": interval.to_dict(),
        "alignments": [a.to_dict() for a in alignments(dp)],
        "crossed_alignments": [c.to_dict() for c in crossed_alignments(dp)],
        "codimension": codimension(dp),
        "dimension": length(interval.v) - length(interval.u),
        "sif_decomposition": {
            "blocks": partition.to_list(),
            "components": [c.to_dict() for c in components],
        },
    }


def command_smooth(args: argparse.Namespace) -> Dict[str, Any]:
    kind, obj, dp = load_decorated(args)
    c2_max_n = MAX_INTERVAL_N if args.allow_factorial else C2_DEFAULT_MAX_N
    if args.include_c2 and dp.n > c2_max_n:
        hint = "" if args.allow_factorial else " without --allow-factorial"
        raise ValueError(f"Criterion C2 is limited to n <= {c2_max_n}{hint}")
    return smoothness_report(dp, include_c2=args.include_c2, c2_max_n=c2_max_n).to_dict()


def command_johnson(args: argparse.Namespace) -> Any:
    kind, obj, dp = load_decorated(args)
    positroid = obj if kind == "positroid" else positroid_from_decorated(dp)
    return johnson_graph(positroid, oriented=args.oriented)


def command_transform(args: argparse.Namespace) -> Dict[str, Any]:
    kind, obj, dp = load_decorated(args)
    if args.op in TRANSFORMS:
        result = transform(dp, args.op, args.shift)
        return {"decorated": result.to_dict(), "positroid": positroid_from_decorated(result).to_dict()}
    if args.op == "direct_sum":
        if args.other is None:
            raise UsageError("transform --op direct_sum needs --other")
        other = parse_input("decorated", read_source(args.other))
        result = direct_sum(dp, other)
        return {"decorated": result.to_dict(), "positroid": positroid_from_decorated(result).to_dict()}
    positroid = matroid_ops(positroid_from_decorated(dp), POSITROID_OPS[args.op], shift=args.shift)
    return {"decorated": decorated_from_positroid(positroid).to_dict(), "positroid": positroid.to_dict()}


def command_census(args: argparse.Namespace) -> Any:
    if args.format is None:
        # A single table reads as CSV, everything else as JSON
        args.format = "csv" if args.table != "all" and not args.brute_force else "json"
    if args.brute_force:
        if args.format != "json":
            raise UsageError("census --brute-force writes JSON only")
        from census_manager import MAX_BRUTE_FORCE_N, CensusManager, brute_force_census

        if not 1 <= args.n <= MAX_BRUTE_FORCE_N:
            raise UsageError(f"census --brute-force supports 1 <= n <= {MAX_BRUTE_FORCE_N}, got {args.n}")
        try:
            manager = CensusManager()
        except ValueError as e:
            raise UsageError(str(e))
        result = brute_force_census(args.n, manager)
        expected = census(args.n)
        return {
            "n": args.n,
            "total_decorated": result["total_decorated"],
            "total_smooth": result["total_smooth"],
            "s1": result["s1"],
            "s2": result["s2"],
            "matches_formula": result["s1"] == expected.s1[-1].values(0)
            and result["s2"] == expected.s2[-1].values(1),
        }
    return census(args.n)


def command_ratio(args: argparse.Namespace) -> Dict[str, Any]:
    return {"digits": args.digits, "ratios": {str(n): growth_ratio(n, args.digits) for n in args.n}}


def add_input_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--decorated", help='{"n":..,"w":[..],"cw":[..],"ccw":[..]}')
    group.add_argument("--interval", help='{"u":[..],"v":[..],"k":..}')
    group.add_argument("--necklace", help="[[I_1], ..., [I_n]]")
    group.add_argument("--positroid", help='{"n":..,"k":..,"bases":[[..],..]}')
    group.add_argument("--matrix", help='rows of integers or "p/q" strings')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Positroid combinatorics and smooth positroid census")
    parser.add_argument("--output", help="write output to this file instead of stdout")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    subparsers = parser.add_subparsers(dest="command", required=True)

    convert = subparsers.add_parser("convert", help="convert between representations")
    add_input_arguments(convert)
    convert.add_argument("--to", choices=TARGETS + ("all",), default="all")

    analyze = subparsers.add_parser("analyze", help="alignments, codimension and SIF decomposition")
    add_input_arguments(analyze)
    analyze.add_argument("--svg", help="also draw the chord diagram to this SVG file")

    smooth = subparsers.add_parser("smooth", help="smoothness report")
    add_input_arguments(smooth)
    smooth.add_argument("--include-c2", action="store_true", help="also walk the Bruhat interval")
    smooth.add_argument(
        "--allow-factorial", action="store_true", help=f"allow interval walks up to n = {MAX_INTERVAL_N}"
    )

    johnson = subparsers.add_parser("johnson", help="Johnson graph as DOT")
    add_input_arguments(johnson)
    johnson.add_argument("--oriented", action="store_true")

    transform_parser = subparsers.add_parser("transform", help="rigid motions and positroid operations")
    add_input_arguments(transform_parser)
    transform_parser.add_argument(
        "--op", required=True, choices=TRANSFORMS + tuple(POSITROID_OPS) + ("direct_sum",)
    )
    transform_parser.add_argument("--shift", type=int, default=1)
    transform_parser.add_argument("--other", help="second decorated permutation for direct_sum")

    census_parser = subparsers.add_parser("census", help="smooth positroid counts")
    census_parser.add_argument("--n", type=int, required=True)
    census_parser.add_argument("--table", choices=CENSUS_TABLES, default="all")
    census_parser.add_argument(
        "--format", choices=("csv", "json"), help="default: csv for a single --table, json otherwise"
    )
    census_parser.add_argument("--brute-force", action="store_true")

    ratio = subparsers.add_parser("ratio", help="growth ratios s(n+1)/s(n)")
    ratio.add_argument("--n", type=int, nargs="+", required=True)
    ratio.add_argument("--digits", type=int, default=8)
    return parser


COMMANDS = {
    "convert": command_convert,
    "analyze": command_analyze,
    "smooth": command_smooth,
    "johnson": command_johnson,
    "transform": command_transform,
    "census": command_census,
    "ratio": command_ratio,
}


def configure_logging() -> None:
    level_name = os.getenv("POSITROID_LOG_LEVEL", "WARNING").upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise ValueError(f"POSITROID_LOG_LEVEL must be a logging level name, got {level_name!r}")
    logging.basicConfig(level=level, stream=sys.stderr)


def emit(args: argparse.Namespace, payload: Any) -> None:
    if args.command == "johnson":
        ExportService("dot").write(payload, args.output)
    elif args.command == "census" and args.format == "csv":
        if args.table == "all":
            raise UsageError("census --format csv needs a single --table")
        ExportService("csv").write(payload, args.output, table=args.table)
    elif args.command == "census" and not args.brute_force and args.table != "all":
        data = payload.to_dict()
        ExportService("json").write({"n": data["n"], args.table: data[args.table]}, args.output, pretty=args.pretty)
    else:
        ExportService("json").write(payload, args.output, pretty=args.pretty)


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the exit status"""
    load_dotenv()
    try:
        configure_logging()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        payload = COMMANDS[args.command](args)
        emit(args, payload)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
