"""`verify` subcommands: run, list, explain, models and constants."""

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

import structlog

from src import __version__
from src.application.checks import registry
from src.application.dto import RunRequest
from src.application.services import VerificationService
from src.core.config import ALPHA_PRESETS, SYMBOLIC_TOKENS, Settings, alpha_items
from src.core.metrics import write_metrics
from src.domain.exceptions import EngineException, MalformedParameter
from src.infrastructure.sinks import JsonReportSink, TextReportSink
from src.presentation.render import render_check_table, render_explanation, render_mapping, render_report
from src.presentation.schemas import CheckInfoSchema, ReportSchema
from src.service.models import ModelParameters, build, constant_tables, constants, dump, list_models

from .error_handler import EXIT_OK, UsageError

logger = structlog.get_logger(__name__)

RATIONAL_OPTIONS = frozenset({"--alpha", "--beta", "--gamma", "--c"})
NEGATIVE_RATIONAL = re.compile(r"^-(\d+(\.\d*)?|\.\d+)(/\d+)?$")


def attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite `--alpha -1/3` as `--alpha=-1/3` before argparse sees it."""
    joined: list[str] = []
    for token in argv:
        if joined and joined[-1] in RATIONAL_OPTIONS and NEGATIVE_RATIONAL.match(token):
            joined[-1] = f"{joined[-1]}={token}"
        else:
            joined.append(token)
    return joined


def parse_rational(name: str, value: str) -> Fraction:
    """Exact rational from text such as `3`, `-1/3` or `0.5`."""
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedParameter(name, value) from e


def parse_alpha(value: str) -> Optional[Fraction]:
    if value.strip().lower() in SYMBOLIC_TOKENS:
        return None
    return parse_rational("alpha", value)


def _optional_rational(name: str, value: Optional[str]) -> Optional[Fraction]:
    return None if value is None else parse_rational(name, value)


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Certify the identities, equivalences and curvature claims about Monge normal forms "
        "of the rolling (2,3,5)-distribution.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help=f"Log level (default {settings.log_level})")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run checks and emit a report")
    run.add_argument("--check", action="append", default=[], metavar="ID", help="Check id; repeatable, default all")
    run.add_argument(
        "--alpha",
        action="append",
        default=[],
        metavar="RAT",
        help=f"alpha value, 'symbolic' or a preset ({', '.join(ALPHA_PRESETS)}); "
        f"repeatable (default {settings.alphas})",
    )
    run.add_argument("--beta", default=settings.beta, metavar="RAT")
    run.add_argument("--gamma", default=settings.gamma, metavar="RAT")
    run.add_argument("--c", default=settings.c, metavar="RAT", help="Scaling constant of the second reduction chain")
    run.add_argument("--seed", type=int, default=settings.seed)
    run.add_argument("--points", type=int, default=settings.points, help="Sample points per numeric certificate")
    run.add_argument("--tol", type=float, default=None, help="Override the flatness tolerance")
    run.add_argument("--format", choices=("json", "text"), default=settings.report_format)
    run.add_argument("--dump", action="store_true", help="Include grammar dumps of the forms involved")
    run.add_argument("--timings", action="store_true", default=settings.report_timings)
    run.add_argument("--threads", type=int, default=settings.threads)
    run.add_argument("--metrics-file", default=settings.metrics_file, metavar="PATH")
    run.add_argument("--skip-slow", action="store_true", help="Leave out structure-equation and Weyl checks")
    run.set_defaults(handler=cmd_run)

    listing = commands.add_parser("list", help="List registered checks")
    listing.add_argument("--format", choices=("json", "text"), default="text")
    listing.set_defaults(handler=cmd_list)

    explain = commands.add_parser("explain", help="Show a check's anchor and the forms it uses")
    explain.add_argument("check_id", metavar="ID")
    _add_model_parameters(explain)
    explain.set_defaults(handler=cmd_explain)

    models = commands.add_parser("models", help="Inspect the catalogue of named constructions")
    model_commands = models.add_subparsers(dest="models_command", required=True)
    model_commands.add_parser("list", help="Every named object with its anchor").set_defaults(handler=cmd_models_list)
    model_dump = model_commands.add_parser("dump", help="Grammar-serialized forms of one object")
    model_dump.add_argument("name", metavar="NAME")
    _add_model_parameters(model_dump)
    model_dump.set_defaults(handler=cmd_models_dump)

    consts = commands.add_parser("constants", help="Constant tables for the coframes")
    consts.add_argument("name", nargs="?", metavar="NAME")
    _add_model_parameters(consts)
    consts.set_defaults(handler=cmd_constants)

    return parser


def _add_model_parameters(parser: argparse.ArgumentParser) -> None:
    for name in ("alpha", "beta", "gamma", "c"):
        parser.add_argument(f"--{name}", default=None, metavar="RAT", help=f"{name} value; symbolic if omitted")


def _model_parameters(args: argparse.Namespace) -> ModelParameters:
    return ModelParameters(
        alpha=_optional_rational("alpha", args.alpha),
        beta=_optional_rational("beta", args.beta),
        gamma=_optional_rational("gamma", args.gamma),
        c=_optional_rational("c", args.c),
    )


def run_request(args: argparse.Namespace, settings: Settings) -> RunRequest:
    if args.alpha:
        alphas = tuple(parse_alpha(item) for a in args.alpha for item in alpha_items(a))
    else:
        alphas = tuple(settings.alpha_values)
    return RunRequest(
        checks=tuple(args.check),
        alphas=alphas,
        beta=parse_rational("beta", args.beta),
        gamma=parse_rational("gamma", args.gamma),
        c=parse_rational("c", args.c),
        seed=args.seed,
        points=args.points,
        tolerance=args.tol,
        dump=args.dump,
        skip_slow=args.skip_slow,
        threads=min(args.threads, settings.threads),
    )


def cmd_run(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    request = run_request(args, settings)
    errors = request.validate()
    if errors:
        raise UsageError("; ".join(errors))

    outcome = VerificationService().run(request)
    payload = ReportSchema.from_report(outcome.report, timings=args.timings).to_payload()
    sink = JsonReportSink() if args.format == "json" else TextReportSink(render_report)
    sink.write(payload, out)

    if args.metrics_file:
        write_metrics(args.metrics_file)
        logger.info("metrics_written", path=args.metrics_file)
    for message in outcome.internal_errors:
        logger.error("internal_inconsistency", run_id=outcome.run_id, detail=message)
    return outcome.exit_code


def cmd_list(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    infos = [CheckInfoSchema.from_check(c) for c in registry.all()]
    if args.format == "json":
        json.dump([i.model_dump() for i in infos], out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        out.write(render_check_table(infos))
    return EXIT_OK


def cmd_explain(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    info = CheckInfoSchema.from_check(registry.get(args.check_id))
    params = _model_parameters(args)
    dumps: dict[str, list[str]] = {}
    for name in info.models:
        try:
            dumps[name] = dump(build(name, params))
        except EngineException as e:
            dumps[name] = [f"unavailable: {e.message}"]
    out.write(render_explanation(info, dumps))
    return EXIT_OK


def cmd_models_list(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    entries = list_models()
    width = max((len(e.name) for e in entries), default=0)
    kinds = max((len(e.kind) for e in entries), default=0)
    for entry in entries:
        out.write(f"{entry.name:<{width}}  {entry.kind:<{kinds}}  {entry.anchor}\n")
    return EXIT_OK


def cmd_models_dump(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    for line in dump(build(args.name, _model_parameters(args))):
        out.write(line + "\n")
    return EXIT_OK


def cmd_constants(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    if args.name is None:
        out.write("".join(f"{name}\n" for name in constant_tables()))
        return EXIT_OK
    out.write(render_mapping(constants(args.name, _model_parameters(args))))
    return EXIT_OK


def dispatch(args: argparse.Namespace, settings: Settings, out: Optional[TextIO] = None) -> int:
    return args.handler(args, settings, out or sys.stdout)
