"""
Command line interface.

    toric-kstab analyze example1 --convention all --digits 5
    toric-kstab cone example2
    toric-kstab slice example1 --weight 1,0,0
    toric-kstab deform example1 --weights "1,0,0;-1,0,0"
    toric-kstab stab --input problem.txt
    toric-kstab presets

Exit codes: 0 success (whatever the verdicts), 2 bad input or usage,
3 geometric precondition violated.
"""

import argparse
import logging
import sys

from .config import CONFIG_FILE, ConfigError, load_config, save_config
from .cone import ConeError
from .deform import DeformError
from .exact import ExactError
from .parser import ProblemSpecError, read_spec
from .pdf_report import generate_pdf_report
from .polytope import DEFAULT_CONVENTION, MeasureConvention, PolygonError
from .presets import get_preset
from .report import (
    analyze_report,
    cone_report,
    deform_report,
    presets_report,
    render_text,
    slice_report,
    stab_report,
    to_json,
)
from .stability import StabilityError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GEOMETRY = 3

GEOMETRY_ERRORS = (ExactError, PolygonError, ConeError, DeformError, StabilityError)


class UsageError(ValueError):
    """Bad combination of command line arguments."""


USAGE_ERRORS = (UsageError, ProblemSpecError, ConfigError)


def parse_vector(text, size=3):
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None
    if len(values) != size:
        raise UsageError(f"expected {size} integers, got {text!r}")
    return values


def parse_vectors(text):
    """'1,0,0;-1,0,0' -> ((1, 0, 0), (-1, 0, 0))"""
    return tuple(parse_vector(part.strip()) for part in text.split(";") if part.strip())


def _conventions(name):
    if name == "all":
        return [DEFAULT_CONVENTION] + [c for c in MeasureConvention if c is not DEFAULT_CONVENTION]
    return [MeasureConvention.parse(name)]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), help="output format")
    common.add_argument("--config", metavar="FILE", help=f"defaults file (default {CONFIG_FILE})")
    common.add_argument("--save-config", action="store_true", help="persist the effective settings")
    common.add_argument("--debug", action="store_true", help="debug logging to stderr")

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("source", nargs="?", help="preset name (see 'presets')")
    problem.add_argument("--input", metavar="FILE", help="read the problem from a file")
    problem.add_argument("--digits", type=int, help="decimal digits after the point")
    problem.add_argument("--rounding", choices=("nearest", "truncate"), help="decimal rounding mode")

    parser = argparse.ArgumentParser(
        prog="toric-kstab",
        description="Exact K-stability checks for toric Sasakian cones and polygons.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common, problem], help="S0, Futaki and Zhou-Zhu")
    analyze.add_argument("--convention", choices=("euclidean", "sup", "lattice", "all"))
    analyze.add_argument("--n", type=int, help="dimension parameter of the Zhou-Zhu bound")
    analyze.add_argument("--pdf", metavar="FILE", help="also write the report as PDF")

    commands.add_parser("cone", parents=[common, problem], help="convexity, smoothness, Reeb vector")

    slice_ = commands.add_parser("slice", parents=[common, problem], help="cross-section at a weight")
    slice_.add_argument("--weight", required=True, help="weight R as a,b,c")

    deform = commands.add_parser("deform", parents=[common, problem], help="deformation dimensions")
    deform.add_argument("--weights", help="weights as 'a,b,c;d,e,f' (default: from the problem)")
    deform.add_argument("--max-terms", type=int)
    deform.add_argument("--denominator-bound", type=int)

    stab = commands.add_parser("stab", parents=[common, problem], help="polystability of supports")
    stab.add_argument("--weights", help="weights for the orbit table (default: from the problem)")

    commands.add_parser("presets", parents=[common], help="list built-in problems")
    return parser


def load_problem(args):
    """Returns (spec, source name, preset or None)."""
    if args.input and args.source:
        raise UsageError("give a preset name or --input, not both")
    if args.input:
        return read_spec(args.input), args.input, None
    if not args.source:
        raise UsageError("need a preset name or --input FILE")
    found = get_preset(args.source)
    return found.spec, found.name, found


def resolve_settings(args, spec, config):
    """Flag > problem file line > config file > built-in default."""
    settings = dict(config)
    for key in ("convention", "n", "digits"):
        from_spec = getattr(spec, key, None) if spec is not None else None
        if from_spec is not None:
            settings[key] = from_spec.value if key == "convention" else from_spec
    for key in settings:
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    for key in ("n", "digits", "max_terms", "denominator_bound"):
        if settings[key] < 1:
            raise UsageError(f"--{key.replace('_', '-')} must be positive, got {settings[key]}")
    return settings


def run_command(args, config):
    if args.command == "presets":
        return presets_report(), resolve_settings(args, None, config)

    spec, source, found = load_problem(args)
    settings = resolve_settings(args, spec, config)

    if args.command == "analyze":
        report = analyze_report(
            spec, source, _conventions(settings["convention"]),
            settings["n"], settings["digits"], settings["rounding"], found,
        )
    elif args.command == "cone":
        report = cone_report(spec, source, found)
    elif args.command == "slice":
        report = slice_report(spec, source, parse_vector(args.weight))
    elif args.command == "deform":
        weights = parse_vectors(args.weights) if args.weights else spec.weights
        if not weights:
            raise UsageError("no weights: pass --weights or add 'weight' lines")
        report = deform_report(
            spec, source, weights, settings["max_terms"], settings["denominator_bound"], found,
        )
    else:
        weights = parse_vectors(args.weights) if args.weights else None
        report = stab_report(spec, source, weights, found)
    return report, settings


def main(argv=None):
    """Entry point; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if args.debug:
        logging.basicConfig(
            level=logging.DEBUG,
            format='%(name)s: %(message)s'
        )
        print("Debug logging enabled\n", file=sys.stderr)
    else:
        logging.basicConfig(level=logging.WARNING, format='%(name)s: %(message)s')

    try:
        config = load_config(args.config)
        report, settings = run_command(args, config)
    except USAGE_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GEOMETRY_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_GEOMETRY

    if settings["format"] == "json":
        print(to_json(report))
    else:
        print(render_text(report), end="")

    if getattr(args, "pdf", None):
        written = generate_pdf_report(report, args.pdf)
        print(f"  Report written to {written}", file=sys.stderr)

    if args.save_config:
        try:
            save_config(settings, args.config)
        except (ConfigError, OSError) as e:
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_USAGE
        logger.debug("saved settings to %s", args.config or CONFIG_FILE)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
