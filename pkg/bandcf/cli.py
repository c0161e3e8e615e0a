"""Command line entry point `bandcf`."""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import attr

from .band_spec import BandSpec
from .config import load_document
from .const import (
    CONF_DEPTH,
    CONF_ELL_MAX,
    CONF_ENSEMBLE,
    CONF_JOBS,
    CONF_LEVELS,
    CONF_MAX_IDX,
    CONF_MAX_LEN,
    CONF_MAX_N,
    CONF_SEED,
    CONF_SIGMAS,
    CONF_SIZES,
    CONF_TRIALS,
    CONF_WIDTH,
    DEFAULT_JOBS,
    DEFAULT_SEED,
    DEFAULT_SIZES,
    DEFAULT_TRIALS,
    DEFAULT_WIDTH,
    DOMAIN,
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    LOGGER,
    SUITE_ALIASES,
    SUITE_ALL,
    SUITE_MOMENT_LIMIT,
    SUITES,
)
from .diagnostics import (
    check_lines,
    envelope,
    render_csv,
    render_json,
    render_table,
    series_payload,
    series_table,
)
from .ensemble import EnsembleSpec, moment_reports
from .errors import BandcfException, InvalidInput, WindowMiss
from .lattice_paths import (
    collection_summary,
    height_bounds,
    iterate_paths,
    path_weight,
    paths_as_rows,
)
from .mcf import LevelContext, expand
from .models import BandParameters, Flavor, PathConstraint, TailKind
from .pade import contact_order, contact_sweep, default_width
from .resolvent import ResolventRequest
from .verify import run_verify


@attr.s(auto_attribs=True)
class CommandResult:
    """What a subcommand produced, before rendering."""

    command: str
    payload: Dict[str, Any]
    text: str
    columns: Sequence[str] = ()
    rows: List[Dict[str, Any]] = attr.ib(factory=list)
    code: int = EXIT_OK


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from error


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"expected a complex number, got {text!r}") from error


def _load_spec(path: str) -> BandSpec:
    return BandSpec.from_dict(load_document(path))


def _cmd_spec(args: argparse.Namespace) -> CommandResult:
    spec = _load_spec(args.file)
    if args.width < 1:
        raise InvalidInput(f"Width must be >= 1, got {args.width}")
    _, top = height_bounds(args.width - 1, 0, 0, spec.params)
    bounds = (0, top)
    lo, hi = spec.required_window(*bounds)
    try:
        spec.check_heights(*bounds)
        covered, missing = True, None
    except WindowMiss as error:
        covered, missing = False, str(error)

    payload = {
        "spec": spec.as_dict(),
        "requiredWindow": {"width": args.width, "lo": lo, "hi": hi, "covered": covered},
    }
    if missing is not None:
        payload["requiredWindow"]["missing"] = missing

    rows = [
        {
            "k": w.k,
            "lo": w.lo,
            "hi": w.hi,
            "default": "" if w.default is None else str(w.default),
        }
        for w in spec.windows
    ]
    text = render_table(["k", "lo", "hi", "default"], [list(r.values()) for r in rows])
    text += f"required window for width {args.width}: {lo}..{hi} ({'covered' if covered else missing})\n"
    return CommandResult("spec validate", payload, text, ["k", "lo", "hi", "default"], rows)


def _cmd_paths(args: argparse.Namespace) -> CommandResult:
    constraint = PathConstraint.parse(args.constraint)
    if args.spec:
        spec = _load_spec(args.spec)
    else:
        spec = BandSpec.constant(BandParameters(args.p, args.q), 1)

    header = {"len": args.len, "from": args.start, "to": args.end, "constraint": args.constraint}
    if args.count_only:
        count, weight = collection_summary(args.len, args.start, args.end, constraint, spec)
        payload = {**header, "count": count, "weight": spec.ring.serialize(weight)}
        rows = [{"count": count, "weight": spec.ring.serialize(weight)}]
        return CommandResult(
            "paths", payload, f"{count}\n{weight}\n", ["count", "weight"], rows
        )

    paths = list(iterate_paths(args.len, args.start, args.end, constraint, spec.params))
    weights = [path_weight(path, spec) for path in paths] if args.weights else None
    documents = paths_as_rows(paths, spec if args.weights else None)

    rows = [{**doc, "heights": str(path)} for doc, path in zip(documents, paths)]
    lines = [
        str(path) if weights is None else f"{path} {weights[index]}"
        for index, path in enumerate(paths)
    ]
    columns = ["heights", "weight"] if args.weights else ["heights"]
    payload = {**header, "count": len(paths), "paths": documents}
    return CommandResult("paths", payload, "".join(f"{line}\n" for line in lines), columns, rows)


def _cmd_series(args: argparse.Namespace) -> CommandResult:
    spec = _load_spec(args.spec)
    family, shift, n = ResolventRequest.parse_family(args.family)
    series = ResolventRequest(family, args.i, args.j, args.width, shift, n).series(spec)

    payload: Dict[str, Any] = {
        "family": args.family,
        "i": args.i,
        "j": args.j,
        "width": args.width,
        "series": series_payload(series),
    }
    text = f"{series}\n"
    if args.at is not None:
        value = series.evaluate(args.at)
        payload["at"] = [args.at.real, args.at.imag]
        payload["value"] = [value.real, value.imag]
        text += f"value at {args.at}: {value}\n"
    rows = [
        {"exponent": e, "coefficient": json.dumps(spec.ring.serialize(series.coefficient(e)))}
        for e in range(series.hi, series.prec - 1, -1)
    ]
    return CommandResult("series", payload, text, ["exponent", "coefficient"], rows)


def _cmd_cf(args: argparse.Namespace) -> CommandResult:
    spec = _load_spec(args.spec)
    flavor, tail = Flavor(args.flavor), TailKind(args.tail)
    levels = args.width if args.levels is None else args.levels
    matrix = expand(flavor, levels, tail, LevelContext(spec, args.width, args.n))

    payload = {
        "flavor": flavor.value,
        "levels": levels,
        "tail": tail.value,
        "width": args.width,
        "matrix": matrix.as_dict(),
    }
    rows = [
        {
            "i": i,
            "j": j,
            "exponent": e,
            "coefficient": json.dumps(spec.ring.serialize(entry.coefficient(e))),
        }
        for i, j, entry in matrix.cells()
        for e in range(entry.hi, entry.prec - 1, -1)
    ]
    return CommandResult(
        "cf", payload, series_table(matrix), ["i", "j", "exponent", "coefficient"], rows
    )


def _cmd_pade(args: argparse.Namespace) -> CommandResult:
    spec = _load_spec(args.spec)
    width = default_width(args.n, spec.p, spec.q) if args.width is None else args.width
    if args.all:
        reports = contact_sweep(spec, args.n, width).reports
    else:
        reports = [contact_order(spec, args.n, args.i, args.j, width)]

    rows = [report.as_dict() for report in reports]
    slack = min(report.slack for report in reports)
    payload = {"reports": rows, "minSlack": slack}
    lines = "".join(json.dumps(row, separators=(",", ":")) + "\n" for row in rows)
    summary = render_table(
        ["n", "cells", "min observedMatch - L", "strict"],
        [
            (
                args.n,
                len(reports),
                min(r.observed_match - r.predicted_l for r in reports),
                sum(1 for r in reports if r.strict_at_next),
            )
        ],
    )
    code = EXIT_OK if slack >= 0 else EXIT_FAILED
    return CommandResult("pade", payload, lines + summary, list(rows[0]), rows, code)


def _cmd_random(args: argparse.Namespace) -> CommandResult:
    ens = EnsembleSpec.from_dict(load_document(args.ensemble))
    reports = moment_reports(ens, args.ell_max, args.sizes, args.trials, args.seed, args.jobs)
    rows = [row for report in reports for row in report.rows()]
    columns = ["ell", "n", "mean", "stderr", "limit"]
    payload = {
        "ensemble": ens.as_dict(),
        "trials": args.trials,
        "seed": args.seed,
        "reports": [report.as_dict() for report in reports],
    }
    text = render_table(columns, [[row[c] for c in columns] for row in rows])
    return CommandResult("random", payload, text, columns, rows)


_VERIFY_OPTIONS = {
    CONF_TRIALS: "trials",
    CONF_WIDTH: "width",
    CONF_MAX_LEN: "max_len",
    CONF_MAX_IDX: "max_idx",
    CONF_MAX_N: "max_n",
    CONF_LEVELS: "levels",
    CONF_DEPTH: "depth",
    CONF_SIZES: "sizes",
    CONF_ELL_MAX: "ell_max",
    CONF_SIGMAS: "sigmas",
    CONF_SEED: "seed",
    CONF_JOBS: "jobs",
}


def _cmd_verify(args: argparse.Namespace) -> CommandResult:
    options = {
        key: getattr(args, attribute)
        for key, attribute in _VERIFY_OPTIONS.items()
        if getattr(args, attribute) is not None
    }
    if args.ensemble:
        options[CONF_ENSEMBLE] = load_document(args.ensemble)

    reports = run_verify(args.suite, options)
    passed = all(report.passed for report in reports)
    rows = [
        {
            "suite": report.suite,
            "name": check.name,
            "passed": check.passed,
            "residual": json.dumps(check.residual),
        }
        for report in reports
        for check in report.checks
    ]
    text = render_table(
        ["suite", "checks", "failed", "status"],
        [
            (r.suite, len(r.checks), len(r.failures), "PASS" if r.passed else "FAIL")
            for r in reports
        ],
    )
    failures = [c.as_dict() for r in reports for c in r.failures]
    if failures:
        text += check_lines(failures)
    payload = {"passed": passed, "suites": [report.as_dict() for report in reports]}
    return CommandResult(
        "verify",
        payload,
        text,
        ["suite", "name", "passed", "residual"],
        rows,
        EXIT_OK if passed else EXIT_FAILED,
    )


def _output_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--json", action="store_true", help="emit a JSON document")
    parent.add_argument("--csv", metavar="PATH", help="also write rows as CSV ('-' for stdout)")
    parent.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per experiment."""

    common = _output_flags()
    parser = argparse.ArgumentParser(
        prog=DOMAIN,
        description="Lattice-path series, banded resolvents and matrix continued fractions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    spec = commands.add_parser("spec", help="inspect a spec file")
    spec_commands = spec.add_subparsers(dest="action", required=True)
    validate = spec_commands.add_parser("validate", parents=[common], help="normalize a spec")
    validate.add_argument("file")
    validate.add_argument("--width", type=int, default=DEFAULT_WIDTH)
    validate.set_defaults(handler=_cmd_spec)

    paths = commands.add_parser("paths", parents=[common], help="enumerate lattice paths")
    paths.add_argument("--len", type=int, required=True)
    paths.add_argument("--from", dest="start", type=int, required=True)
    paths.add_argument("--to", dest="end", type=int, required=True)
    paths.add_argument("--constraint", default="p", help="d, p, dhat or band:N")
    paths.add_argument("--spec")
    paths.add_argument("--p", type=int, default=1)
    paths.add_argument("--q", type=int, default=1)
    paths.add_argument("--weights", action="store_true")
    paths.add_argument("--count-only", action="store_true")
    paths.set_defaults(handler=_cmd_paths)

    series = commands.add_parser("series", parents=[common], help="one generating series")
    series.add_argument("--family", required=True, help="a, ak:K, w, v, zeta or rn:N")
    series.add_argument("--i", type=int, required=True)
    series.add_argument("--j", type=int, required=True)
    series.add_argument("--width", type=int, default=DEFAULT_WIDTH)
    series.add_argument("--spec", required=True)
    series.add_argument("--at", type=_complex, help="also evaluate at this point")
    series.set_defaults(handler=_cmd_series)

    cf = commands.add_parser("cf", parents=[common], help="evaluate a matrix continued fraction")
    cf.add_argument("--flavor", choices=[f.value for f in Flavor], required=True)
    cf.add_argument("--levels", type=int)
    cf.add_argument("--tail", choices=[t.value for t in TailKind], default=TailKind.EXACT.value)
    cf.add_argument("--width", type=int, default=DEFAULT_WIDTH)
    cf.add_argument("--spec", required=True)
    cf.add_argument("--n", type=int)
    cf.set_defaults(handler=_cmd_cf)

    pade = commands.add_parser("pade", parents=[common], help="contact order of R_n")
    pade.add_argument("--n", type=int, required=True)
    pade.add_argument("--i", type=int, default=0)
    pade.add_argument("--j", type=int, default=0)
    pade.add_argument("--all", action="store_true")
    pade.add_argument("--width", type=int)
    pade.add_argument("--spec", required=True)
    pade.set_defaults(handler=_cmd_pade)

    random = commands.add_parser("random", parents=[common], help="Monte Carlo spectral moments")
    random.add_argument("--ensemble", required=True)
    random.add_argument("--ell-max", type=int, default=4)
    random.add_argument("--sizes", type=_int_list, default=list(DEFAULT_SIZES))
    random.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    random.add_argument("--seed", type=int, default=DEFAULT_SEED)
    random.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    random.set_defaults(handler=_cmd_random)

    verify = commands.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument(
        "suite",
        help=f"one of {', '.join(SUITES + [SUITE_ALL])}, or one of the aliases "
        f"{', '.join(SUITE_ALIASES)}",
    )
    verify.add_argument("--trials", type=int)
    verify.add_argument("--width", type=int)
    verify.add_argument("--max-len", type=int)
    verify.add_argument("--max-idx", type=int)
    verify.add_argument("--max-n", type=int)
    verify.add_argument("--levels", type=int)
    verify.add_argument("--depth", type=int)
    verify.add_argument("--sizes", type=_int_list)
    verify.add_argument("--ell-max", type=int)
    verify.add_argument("--sigmas", type=float)
    verify.add_argument("--seed", type=int)
    verify.add_argument(
        "--jobs", type=int, help=f"worker threads, only {SUITE_MOMENT_LIMIT} reads this"
    )
    verify.add_argument("--ensemble")
    verify.set_defaults(handler=_cmd_verify)

    return parser


def _emit(result: CommandResult, args: argparse.Namespace) -> None:
    if args.json:
        sys.stdout.write(render_json(envelope(result.command, result.payload)))
    else:
        sys.stdout.write(result.text)

    if args.csv:
        text = render_csv(result.rows, result.columns)
        if args.csv == "-":
            sys.stdout.write(text)
            return
        try:
            with open(args.csv, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        except OSError as error:
            raise InvalidInput(f"Cannot write {args.csv} - {error}") from error


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return EXIT_OK if error.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    handler: Callable[[argparse.Namespace], CommandResult] = args.handler
    try:
        result = handler(args)
        _emit(result, args)
    except BandcfException as error:
        LOGGER.error("%s failed: %s", args.command, error)
        return EXIT_USAGE
    return result.code
