# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""Command line front end.

Installed users run, for example:
    dimeq orbit-dim "Sp(4)" "2^2" --format json
    dimeq search --dim6 m=1,k=3,r=2 --even-mult --even-parts --minimal-p
    dimeq catalog --all

Precedence of configuration:
1) CLI flags (--format/--workers/--log-level/-v)
2) Defaults: format=table, workers=1, log_level=WARNING

Exit codes: 0 success (or balanced as expected), 1 expectation mismatch,
2 usage, parse or domain error.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from . import __version__
from .catalog import NOTES, find_entries, run_catalog
from .config import Settings
from .equations import (
    IntegralIn,
    cfgk_check,
    cfgk_sweep,
    check_equation,
    orbit_shift_check,
    orbit_shift_sweep,
    theta_consistency_sweep,
    theta_lift_predict,
    theta_sweep,
)
from .errors import DimeqError
from .functionals import eisenstein_dim, functional_to_json
from .groups import LeviComposition, parse_blocks, parse_group, unipotent_radical_dim
from .orbits import filtration_profile, orbit, root_weights
from .partitions import enumerate_partitions, parse_partition
from .search import SearchFilter, SearchQuery, TargetGK, search

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2

Outcome = Tuple[int, str]


# Argument types

def _binding(text: str) -> Tuple[str, int]:
    match = re.fullmatch(r"\s*([A-Za-z_]\w*)\s*=\s*(-?\d+)\s*", text)
    if not match:
        raise argparse.ArgumentTypeError(f"binding must look like NAME=INT, got {text!r}")
    return match.group(1), int(match.group(2))


def _value_range(text: str) -> Tuple[int, int]:
    match = re.fullmatch(r"(\d+)\.\.(\d+)", text.strip())
    if not match:
        raise argparse.ArgumentTypeError(f"range must look like a..b, got {text!r}")
    return int(match.group(1)), int(match.group(2))


def _dim6(text: str) -> Dict[str, int]:
    values = dict(_binding(token) for token in text.split(","))
    if sorted(values) != ["k", "m", "r"]:
        raise argparse.ArgumentTypeError(f"--dim6 needs exactly m=..,k=..,r=.., got {text!r}")
    return values


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


# Output helpers

def _compact(payload: Any) -> str:
    return json.dumps(payload, separators=(",", ":"))


def _settings(args: argparse.Namespace) -> Settings:
    return Settings.from_flags(
        output_format=args.format,
        workers=args.workers,
        log_level=args.log_level,
        verbose=args.verbose,
    )


def _is_json(args: argparse.Namespace) -> bool:
    return args.format == "json"


# Commands

def _cmd_orbit_dim(args: argparse.Namespace, settings: Settings) -> Outcome:
    group = parse_group(args.group)
    o = orbit(group, parse_partition(args.partition, dict(args.bind)))
    if _is_json(args):
        return EXIT_OK, _compact({"dim": o.dim, "gk": o.gk, "odd_parts": o.odd_part_count})
    return EXIT_OK, f"{group} [{o.partition}]: dim {o.dim}, gk {o.gk}, odd parts {o.odd_part_count}"


def _cmd_filtration(args: argparse.Namespace, settings: Settings) -> Outcome:
    group = parse_group(args.group)
    p = parse_partition(args.partition, dict(args.bind))
    profile = filtration_profile(group, p)
    code = EXIT_OK
    if args.by_roots and root_weights(group, p) != profile.weight_histogram:
        logger.error("grouped and per-root weight histograms disagree for %s on %s", p, group)
        code = EXIT_MISMATCH
    if _is_json(args):
        return code, profile.to_json()
    lines = [
        f"{group} [{p}]",
        "  weights: " + " ".join(str(w) for w in profile.weight_vector),
        f"  dim N1 {profile.dim_n1}, dim N2 {profile.dim_n2}, weight-one roots {profile.weight_one_count}",
    ]
    lines.extend(f"  weight {w:>3}: {c}" for w, c in profile.weight_histogram.items())
    return code, "\n".join(lines)


def _cmd_orbit_list(args: argparse.Namespace, settings: Settings) -> Outcome:
    group = parse_group(args.group)
    rows = []
    for p in enumerate_partitions(group.size, group.family):
        o = orbit(group, p)
        if args.max_gk is None or o.gk <= args.max_gk:
            rows.append(o)
    if _is_json(args):
        return EXIT_OK, _compact([{"partition": o.partition.to_text(), "dim": o.dim, "gk": o.gk} for o in rows])
    width = max((len(o.partition.to_text()) for o in rows), default=9)
    lines = [f"{'partition':<{width}}  {'dim':>5}  {'gk':>5}"]
    lines.extend(f"{o.partition.to_text():<{width}}  {o.dim:>5}  {o.gk:>5}" for o in rows)
    return EXIT_OK, "\n".join(lines)


def _levi(args: argparse.Namespace) -> LeviComposition:
    return LeviComposition(gl_blocks=parse_blocks(args.blocks), keeps_classical_factor=args.classical_factor)


def _cmd_levi_dim(args: argparse.Namespace, settings: Settings) -> Outcome:
    group = parse_group(args.group)
    radical = unipotent_radical_dim(group, _levi(args))
    if _is_json(args):
        return EXIT_OK, _compact({"radical_dim": radical})
    return EXIT_OK, f"{group} blocks {args.blocks}: unipotent radical dim {radical}"


def _cmd_eisenstein_dim(args: argparse.Namespace, settings: Settings) -> Outcome:
    group = parse_group(args.group)
    e = eisenstein_dim(args.inducing_gk, group, _levi(args))
    if _is_json(args):
        return EXIT_OK, functional_to_json(e)
    return EXIT_OK, f"{group} blocks {args.blocks}: dim {e.value} (inducing {e.inducing_dim} + radical {e.radical_dim})"


def _cmd_check(args: argparse.Namespace, settings: Settings) -> Outcome:
    with open(args.spec, "r", encoding="utf-8") as fh:
        wire = IntegralIn.model_validate_json(fh.read())
    report = check_equation(wire.to_descriptor())
    code = EXIT_OK
    if wire.expected_balanced is not None and wire.expected_balanced != report.balanced:
        code = EXIT_MISMATCH
    if _is_json(args):
        return code, report.to_json()
    return code, f"{report.name or args.spec}: {report.lhs_total} vs {report.rhs_total}, deficit {report.deficit}, {report.verdict}"


def _cmd_catalog(args: argparse.Namespace, settings: Settings) -> Outcome:
    pattern = None if args.all else args.id
    if args.action == "list":
        entries = find_entries(pattern)
        if _is_json(args):
            payload = {
                "entries": [
                    {
                        "id": e.id,
                        "description": e.description,
                        "reference": e.reference,
                        "parameters": [p.name for p in e.parameters],
                        "expected_balanced": e.expected_balanced,
                    }
                    for e in entries
                ],
                "notes": [n.model_dump() for n in NOTES],
            }
            return EXIT_OK, _compact(payload)
        lines = [f"{e.id:<24} {e.description}" for e in entries]
        lines.append("")
        lines.append("notes (not checkable):")
        lines.extend(f"  {n.id:<22} {n.description}" for n in NOTES)
        return EXIT_OK, "\n".join(lines)

    runs = run_catalog(pattern, args.range, workers=settings.workers)
    code = EXIT_OK if all(r.matches for r in runs) else EXIT_MISMATCH
    if args.action == "export" or _is_json(args):
        return code, _compact([r.to_dict() for r in runs])
    lines = []
    for r in runs:
        params = ",".join(f"{k}={v}" for k, v in r.params.items()) or "-"
        status = "ok" if r.matches else "MISMATCH"
        lines.append(f"{r.id:<24} {params:<10} {r.report.lhs_total:>6} {r.report.rhs_total:>6}  {r.report.verdict:<10} {status}")
    failed = sum(1 for r in runs if not r.matches)
    lines.append(f"{len(runs)} points, {failed} mismatches")
    return code, "\n".join(lines)


def _cmd_search(args: argparse.Namespace, settings: Settings) -> Outcome:
    filters = frozenset(
        f
        for f, flag in (
            (SearchFilter.ALL_MULTIPLICITIES_EVEN, args.even_mult),
            (SearchFilter.ALL_PARTS_EVEN, args.even_parts),
            (SearchFilter.MINIMAL_DISTINCT_PARTS, args.minimal_p),
        )
        if flag
    )
    if args.dim6 is not None:
        query = SearchQuery.for_lift(args.dim6["m"], args.dim6["k"], args.dim6["r"], *filters)
        if args.group:
            query = query.model_copy(update={"group": parse_group(args.group)})
    else:
        if not args.group:
            raise DimeqError("search --gk needs --group")
        query = SearchQuery(group=parse_group(args.group), constraint=TargetGK(value=args.gk), filters=filters)
    result = search(query, workers=settings.workers)
    if _is_json(args):
        return EXIT_OK, result.to_json()
    lines = [f"{result.group}: gk {result.target_gk}, {len(result.solutions)} of {result.total_candidates} orbits"]
    lines.extend(p.to_text() for p in result.solutions)
    return EXIT_OK, "\n".join(lines)


def _cmd_predict_theta(args: argparse.Namespace, settings: Settings) -> Outcome:
    if args.sweep is not None and args.n is None:
        summary = theta_consistency_sweep(args.sweep, workers=settings.workers)
        code = EXIT_OK if summary.ok else EXIT_MISMATCH
        if _is_json(args):
            return code, summary.to_json()
        return code, f"predict-theta: {summary.passed}/{summary.points} points consistent"
    if args.n is None:
        raise DimeqError("predict-theta needs --n (or --sweep MAX alone)")
    if args.sweep is not None:
        predictions = theta_sweep(args.n, args.sweep)
    elif args.k is not None:
        predictions = [theta_lift_predict(args.n, args.k)]
    else:
        raise DimeqError("predict-theta needs --k or --sweep")
    if _is_json(args):
        if args.sweep is None:
            return EXIT_OK, predictions[0].model_dump_json()
        return EXIT_OK, "[" + ",".join(p.model_dump_json() for p in predictions) + "]"
    lines = []
    for p in predictions:
        flags = [name for name, on in (("vanishing", p.vanishing_predicted), ("generic", p.generic_compatible)) if on]
        lines.append(f"n={p.n} k={p.k}: sigma gk {p.sigma_gk} {' '.join(flags)}".rstrip())
    return EXIT_OK, "\n".join(lines)


def _report_outcome(report, args: argparse.Namespace) -> Outcome:
    code = EXIT_OK if report.balanced else EXIT_MISMATCH
    if _is_json(args):
        return code, report.to_json()
    return code, f"{report.name}: {report.lhs_total} vs {report.rhs_total}, {report.verdict}"


def _summary_outcome(summary, args: argparse.Namespace) -> Outcome:
    code = EXIT_OK if summary.ok else EXIT_MISMATCH
    if _is_json(args):
        return code, summary.to_json()
    lines = [f"{summary.name}: {summary.passed}/{summary.points} points balanced"]
    lines.extend("  failed at " + ",".join(f"{k}={v}" for k, v in f.items()) for f in summary.failures)
    return code, "\n".join(lines)


def _cmd_lemma71(args: argparse.Namespace, settings: Settings) -> Outcome:
    if args.sweep is not None:
        return _summary_outcome(orbit_shift_sweep(args.sweep, workers=settings.workers), args)
    if None in (args.m, args.k, args.r):
        raise DimeqError("lemma71 needs --m, --k and --r (or --sweep MAX)")
    return _report_outcome(orbit_shift_check(args.m, args.k, args.r), args)


def _cmd_cfgk(args: argparse.Namespace, settings: Settings) -> Outcome:
    if args.sweep is not None:
        return _summary_outcome(cfgk_sweep(args.sweep, workers=settings.workers), args)
    if None in (args.n, args.k):
        raise DimeqError("cfgk needs --n and --k (or --sweep MAX)")
    return _report_outcome(cfgk_check(args.n, args.k), args)


# Parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default=None, help="Output format (default: table)")
    common.add_argument("--workers", type=_positive, default=None, help="Parallel shards for sweeps and searches (default: 1)")
    common.add_argument("--log-level", dest="log_level", default=None, help="Log level on stderr (default: WARNING)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="INFO, or DEBUG when given twice")

    parser = argparse.ArgumentParser(prog="dimeq", description="Dimension equations for split classical groups")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable[[argparse.Namespace, Settings], Outcome], help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=handler)
        return p

    def group_and_partition(p: argparse.ArgumentParser) -> None:
        p.add_argument("group", help='Group, e.g. "Sp(16)" or "Res2:GL(3)"')
        p.add_argument("partition", help='Partition, e.g. "5^2 3^2", "[4,2]" or "{2n}^2" with --bind n=3')
        p.add_argument("--bind", type=_binding, action="append", default=[], metavar="NAME=INT",
                       help="Bind an identifier used in {EXPR} exponents")

    p = command("orbit-dim", _cmd_orbit_dim, "Orbit and GK dimension of a partition")
    group_and_partition(p)

    p = command("filtration", _cmd_filtration, "h_O weights and the N1 > N2 filtration")
    group_and_partition(p)
    p.add_argument("--by-roots", action="store_true", help="Cross-check against per-root evaluation")

    p = command("orbit-list", _cmd_orbit_list, "All orbits of a group in decreasing lexicographic order")
    p.add_argument("group")
    p.add_argument("--max-gk", type=_non_negative, default=None)

    for name, handler, text in (
        ("levi-dim", _cmd_levi_dim, "Unipotent radical dimension of a standard parabolic"),
        ("eisenstein-dim", _cmd_eisenstein_dim, "Expected dimension of an Eisenstein series"),
    ):
        p = command(name, handler, text)
        p.add_argument("group")
        p.add_argument("blocks", help='GL blocks, e.g. "2" or "1,1,2"')
        p.add_argument("--classical-factor", action="store_true", help="Keep the residual Sp/SO factor")
        if name == "eisenstein-dim":
            p.add_argument("--inducing-gk", type=_non_negative, required=True)

    p = command("check", _cmd_check, "Evaluate an IntegralDescriptor JSON file")
    p.add_argument("--spec", required=True, metavar="FILE.json")

    p = command("catalog", _cmd_catalog, "Run, list or export the built-in catalog")
    p.add_argument("action", nargs="?", choices=("run", "list", "export"), default="run")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true")
    which.add_argument("--id", metavar="PATTERN", default=None)
    p.add_argument("--range", type=_value_range, default=None, metavar="a..b")

    p = command("search", _cmd_search, "Search orbits by GK dimension")
    p.add_argument("--group", default=None)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--gk", type=_non_negative)
    target.add_argument("--dim6", type=_dim6, metavar="m=M,k=K,r=R")
    p.add_argument("--even-mult", action="store_true")
    p.add_argument("--even-parts", action="store_true")
    p.add_argument("--minimal-p", action="store_true")

    p = command("predict-theta", _cmd_predict_theta, "Predicted GK dimension of a theta lift Sp_2n -> SO_2k")
    p.add_argument("--n", type=_positive)
    how = p.add_mutually_exclusive_group()
    how.add_argument("--k", type=_positive)
    how.add_argument("--sweep", type=_positive, metavar="MAX")

    p = command("lemma71", _cmd_lemma71, "Orbit shift identity on Sp_4m(k+r-1)")
    p.add_argument("--m", type=_positive)
    p.add_argument("--k", type=_positive)
    p.add_argument("--r", type=_positive)
    p.add_argument("--sweep", type=_positive, metavar="MAX")

    p = command("cfgk", _cmd_cfgk, "Generalized doubling balance on Sp_4kn")
    p.add_argument("--n", type=_positive)
    p.add_argument("--k", type=_positive)
    p.add_argument("--sweep", type=_positive, metavar="MAX")
    return parser


def _fail(detail: str) -> Outcome:
    print(f"dimeq: error: {detail}", file=sys.stderr)
    return EXIT_ERROR, ""


def run(argv: Optional[Sequence[str]] = None) -> Outcome:
    """
    Executes one command.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``.

    Returns:
        Tuple[int, str]: The exit code and the text for stdout. Diagnostics go to stderr.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_ERROR), ""
    try:
        settings = _settings(args)
    except ValidationError as exc:
        return _fail(exc.errors()[0]["msg"])
    settings.configure_logging()
    logger.debug("running %s", args.command)
    try:
        return args.handler(args, settings)
    except DimeqError as exc:
        return _fail(exc.detail)
    except ValidationError as exc:
        return _fail(exc.errors()[0]["msg"])
    except OSError as exc:
        return _fail(str(exc))


def main(argv: Optional[List[str]] = None) -> None:
    code, output = run(argv)
    if output:
        print(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
