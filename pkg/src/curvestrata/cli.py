"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 usage or parse error, 3 a
verification verdict failed.  Every flag may also be given through an
environment variable ``CURVESTRATA_<FLAG>`` (upper case, dashes as
underscores); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .algebra import render_form
from .blowup import (
    BlowupConfig,
    Exceptional,
    Interior,
    LiftedMorphism,
    exceptional_lift,
    lift,
    stratum,
    stratum_dimension,
)
from .census import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_EXCEPTIONAL_DEGREE,
    census_strata,
    estimate_dimension,
    verify_partition,
)
from .errors import BadScalarLiteral, CurveStrataError, FormSyntaxError, NotHomogeneous
from .morphism import geometric_degree, image_multiplicity, parametric_multiplicity
from .parsing import parse_field, parse_forms, parse_morphism, parse_points

ENV_PREFIX = "CURVESTRATA_"
COMMANDS = ("multiplicity", "lift", "classify", "geometric-degree", "census", "verify", "dims")
PARSE_ERRORS = (FormSyntaxError, NotHomogeneous, BadScalarLiteral)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvestrata",
        description="Rational curves on blow-ups of projective space at points.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=_env("field", "Q"), help="Q or F<p> (default: Q)")
    common.add_argument(
        "--output", choices=("human", "json", "csv"), default=_env("output", "human")
    )
    common.add_argument("--map", default=_env("map"), help='morphism, e.g. "(u^2:u*v:v^2)"')
    common.add_argument("--points", default=_env("points"), help='points, e.g. "(1:0:0),(0:1:0)"')
    common.add_argument("--n", type=int, default=_env("n"), help="target dimension")
    common.add_argument("--d", default=_env("d"), help="degree, or a list such as 1,2")
    common.add_argument("--shards", type=int, default=int(_env("shards", 1)))
    common.add_argument(
        "--max-exceptional-degree",
        type=int,
        default=int(_env("max-exceptional-degree", DEFAULT_MAX_EXCEPTIONAL_DEGREE)),
    )
    common.add_argument("--budget", type=int, default=int(_env("budget", DEFAULT_BUDGET)))
    common.add_argument(
        "--exceptional",
        type=int,
        default=_env("exceptional"),
        help="treat --map as a curve inside E_i (1-based index)",
    )
    common.add_argument("--m", default=_env("m"), help="multiplicity tuple for dims, e.g. 1,0")
    common.add_argument("--e", type=int, default=_env("e"), help="exceptional degree for dims")
    common.add_argument("--counts", default=_env("counts"), help="point counts for dims, e.g. 2:24,3:216")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) in (None, "")]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _int_list(text: str) -> list[int]:
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _components(g: LiftedMorphism) -> list[list[str]]:
    return [[render_form(F) for F in G] for G in g.components]


def _lifted(args: argparse.Namespace, field) -> LiftedMorphism:
    _need(args, "map", "points")
    points = parse_points(args.points, field)
    config = BlowupConfig.create(points)
    if args.exceptional is not None:
        forms = parse_forms(args.map, field)
        return exceptional_lift(int(args.exceptional), forms, config)
    return lift(parse_morphism(args.map, field).morphism, config)


def cmd_multiplicity(args, field) -> tuple[dict, int]:
    _need(args, "map", "points")
    f = parse_morphism(args.map, field).morphism
    ms = [parametric_multiplicity(f, p) for p in parse_points(args.points, field)]
    return {"degree": f.degree, "multiplicities": ms, "image_contains": [m >= 1 for m in ms]}, EXIT_OK


def cmd_lift(args, field) -> tuple[dict, int]:
    g = _lifted(args, field)
    base = {"exceptional": g.base.index} if g.is_exceptional else str(g.base)
    return {"base": base, "components": _components(g)}, EXIT_OK


def cmd_classify(args, field) -> tuple[dict, int]:
    g = _lifted(args, field)
    return {"stratum": stratum(g).to_record(), "components": _components(g)}, EXIT_OK


def cmd_geometric_degree(args, field) -> tuple[dict, int]:
    _need(args, "map")
    f = parse_morphism(args.map, field).morphism
    gd = geometric_degree(f)
    rec = {"degree": f.degree, "deg_g": gd.deg_g, "deg_image": gd.deg_image}
    if args.points:
        points = parse_points(args.points, field)
        rec["image_multiplicities"] = [image_multiplicity(f, p) for p in points]
    return rec, EXIT_OK


def _census_inputs(args, field):
    _need(args, "n", "d", "points")
    if not field.is_finite:
        raise UsageError("census needs a prime field, e.g. --field F2")
    return parse_points(args.points, field), _int_list(args.d)


def cmd_census(args, field) -> tuple[dict, int]:
    points, degrees = _census_inputs(args, field)
    if len(degrees) != 1:
        raise UsageError("census takes a single --d")
    report = census_strata(
        int(args.n),
        degrees[0],
        field.characteristic,
        points,
        shards=args.shards,
        budget=args.budget,
        max_exceptional_degree=args.max_exceptional_degree,
    )
    status = EXIT_OK if report.verdicts.all_true else EXIT_VERIFY
    return {"_report": report, **report.to_record()}, status


def cmd_verify(args, field) -> tuple[dict, int]:
    points, degrees = _census_inputs(args, field)
    runs = []
    for d in degrees:
        verdicts = verify_partition(
            int(args.n), d, field.characteristic, points,
            shards=args.shards, budget=args.budget,
            max_exceptional_degree=args.max_exceptional_degree,
        )
        runs.append({"d": d, "verdicts": verdicts.to_record()})
    ok = all(all(v for k, v in run["verdicts"].items() if k != "counterexamples") for run in runs)
    return {"verified": ok, "runs": runs}, EXIT_OK if ok else EXIT_VERIFY


def cmd_dims(args, field) -> tuple[dict, int]:
    if args.counts:
        counts = {}
        for part in args.counts.split(","):
            q, c = part.split(":")
            counts[int(q)] = int(c)
        return {"estimate": estimate_dimension(counts)}, EXIT_OK
    _need(args, "n")
    if args.exceptional is not None:
        _need(args, "e")
        label = Exceptional(int(args.exceptional), int(args.e))
    else:
        _need(args, "d", "m")
        label = Interior(int(args.d), tuple(_int_list(args.m)))
    bound = stratum_dimension(label, int(args.n))
    return {"stratum": label.to_record(), "kind": bound.kind, "value": bound.value}, EXIT_OK


HANDLERS = {
    "multiplicity": cmd_multiplicity,
    "lift": cmd_lift,
    "classify": cmd_classify,
    "geometric-degree": cmd_geometric_degree,
    "census": cmd_census,
    "verify": cmd_verify,
    "dims": cmd_dims,
}


def _human(record: dict, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for key, value in record.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_human(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def render(record: dict, output: str) -> str:
    report = record.pop("_report", None)
    if output == "json":
        return json.dumps(record) + "\n"
    if output == "csv":
        if report is None:
            raise UsageError("csv output is only available for census")
        return report.to_csv()
    text = "\n".join(_human(record)) + "\n"
    if report is not None:
        text += f"elapsed: {report.elapsed:.2f}s\n"
    return text


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        field = parse_field(args.field)
        record, status = HANDLERS[args.command](args, field)
        stdout.write(render(record, args.output))
        return status
    except UsageError as exc:
        stderr.write(f"{args.command}: usage error: {exc}\n")
        return EXIT_USAGE
    except CurveStrataError as exc:
        _report_error(exc, args, stdout, stderr)
        if isinstance(exc, PARSE_ERRORS) or exc.operation.startswith("parse"):
            return EXIT_USAGE
        return EXIT_DOMAIN
    except ValueError as exc:
        stderr.write(f"{args.command}: usage error: {exc}\n")
        return EXIT_USAGE


def _report_error(exc: CurveStrataError, args, stdout, stderr) -> None:
    stderr.write(f"error: {exc.kind} in {exc.operation}: {exc.message}\n")
    if args.output == "json":
        record = {"error": {"kind": exc.kind, "operation": exc.operation, "message": exc.message}}
        stdout.write(json.dumps(record) + "\n")


def main() -> None:
    sys.exit(run_command())
