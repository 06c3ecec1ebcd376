"""The g1 command line: invariants, levels, minimisation and reduction."""

from __future__ import annotations

import argparse
import json
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from rich.console import Console, Group, RenderableType
from sympy import isprime

from genusone.config import OutputFormat, RunConfig, load_config
from genusone.errors import ArgumentError, GenusOneError
from genusone.invariants.core import (
    a_invariants,
    jacobian_weierstrass,
    require_nonsingular,
)
from genusone.invariants.weierstrass import level, levels
from genusone.log import configure_logging
from genusone.minimise import minimise_global, minimise_local
from genusone.models.genus_one import GenusOneModel
from genusone.models.transformations import Transformation, compose
from genusone.reduce import reduce_model
from genusone.services import load_model
from genusone.services import rendering as r
from genusone.services.parsers.json_model import model_to_json

logger = logging.getLogger(__name__)


@dataclass
class CommandOutput:
    """What a command prints, in both output formats."""

    document: dict[str, Any]
    renderable: RenderableType
    transformation: Transformation | None = None


def cmd_invariants(
    model: GenusOneModel, config: RunConfig  # noqa: ARG001
) -> CommandOutput:
    """c4, c6, Δ, the a-invariants and the Jacobian of a model."""
    triple = require_nonsingular(model)
    a = a_invariants(model)
    jacobian = jacobian_weierstrass(model)
    document = {
        "model": model_to_json(model),
        "invariants": r.invariants_to_json(triple),
        "a_invariants": r.a_invariants_to_json(a),
        "jacobian": model_to_json(jacobian),
    }
    return CommandOutput(document, r.invariants_table(triple, a, jacobian))


def cmd_level(
    model: GenusOneModel, config: RunConfig, p: int | None = None
) -> CommandOutput:
    """Level reports at p, or at every prime where the model is not minimal."""
    if p is not None:
        reports = [level(model, p)]
    else:
        reports = levels(model, config.factor_budget)
    document = {"levels": [r.level_to_json(report) for report in reports]}
    return CommandOutput(document, r.levels_table(reports))


def cmd_minimise(
    model: GenusOneModel, config: RunConfig, p: int | None = None
) -> CommandOutput:
    """Minimise at one prime, or globally when no prime is given."""
    if p is not None:
        local = minimise_local(model, p, config)
        return CommandOutput(
            r.local_result_to_json(local), r.render_local(local), local.transformation
        )
    result = minimise_global(model, config)
    return CommandOutput(
        r.global_result_to_json(result), r.render_global(result), result.transformation
    )


def cmd_reduce(model: GenusOneModel, config: RunConfig) -> CommandOutput:
    """LLL-reduce an integral model."""
    result = reduce_model(model, config)
    return CommandOutput(
        r.reduction_to_json(result), r.render_reduction(result), result.transformation
    )


def cmd_minred(model: GenusOneModel, config: RunConfig) -> CommandOutput:
    """Minimise globally, then reduce the minimal model."""
    minimal = minimise_global(model, config)
    reduced = reduce_model(minimal.model, config)
    g = compose(reduced.transformation, minimal.transformation)
    document = {
        "model": model_to_json(reduced.model),
        "transformation": r.transformation_to_json(g),
        "minimisation": r.global_result_to_json(minimal),
        "reduction": r.reduction_to_json(reduced),
    }
    renderable = Group(
        r.render_global(minimal),
        r.render_reduction(reduced),
        r.transformation_table(g, "Composite transformation"),
    )
    return CommandOutput(document, renderable, g)


def _prime(value: str) -> int:
    try:
        p = int(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from e
    if not isprime(p):
        raise argparse.ArgumentTypeError(f"not a prime: {p}")
    return p


def build_parser(version: str = "0.0.0+dev") -> argparse.ArgumentParser:
    """The g1 argument parser with its subcommands."""
    parser = argparse.ArgumentParser(
        description="Invariants, minimisation and reduction of genus one models",
        prog="g1",
    )
    parser.add_argument(
        "-V", "--version", action="version", version=f"%(prog)s {version}"
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "model", help="Model file (text or JSON) or inline model, e.g. 'w 0 0 0 0 1'"
    )
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="Output format (default: text)",
    )
    common.add_argument("--seed", type=int, default=None, help="Random seed")
    common.add_argument(
        "--precision", type=int, default=None, help="Working precision in digits"
    )
    common.add_argument("--delta", type=float, default=None, help="LLL parameter")
    common.add_argument(
        "--config", type=Path, default=None, help="YAML run configuration"
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", default=False, help="Log progress"
    )

    with_prime = argparse.ArgumentParser(add_help=False)
    with_prime.add_argument(
        "--p", type=_prime, default=None, help="Work at this prime only"
    )

    with_transform = argparse.ArgumentParser(add_help=False)
    with_transform.add_argument(
        "--transform",
        action="store_true",
        default=False,
        help="Print only the transformation",
    )

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common], help="Print c4, c6, Δ")
    sub.add_parser("level", parents=[common, with_prime], help="Print levels")
    sub.add_parser(
        "minimise", parents=[common, with_prime, with_transform], help="Minimise"
    )
    sub.add_parser("reduce", parents=[common, with_transform], help="LLL-reduce")
    sub.add_parser(
        "minred", parents=[common, with_transform], help="Minimise, then reduce"
    )
    return parser


COMMANDS: dict[str, Callable[..., CommandOutput]] = {
    "invariants": cmd_invariants,
    "level": cmd_level,
    "minimise": cmd_minimise,
    "reduce": cmd_reduce,
    "minred": cmd_minred,
}


def _config(args: argparse.Namespace) -> RunConfig:
    fmt = OutputFormat(args.format) if args.format else None
    return load_config(args.config).with_overrides(
        seed=args.seed,
        delta=args.delta,
        precision=args.precision,
        output_format=fmt,
        verbose=args.verbose or None,
    )


def _emit(output: CommandOutput, config: RunConfig, transform_only: bool) -> None:
    console = Console()
    if transform_only:
        if output.transformation is None:
            raise ArgumentError("this command has no transformation")
        document = r.transformation_to_json(output.transformation)
        renderable: RenderableType = r.transformation_table(output.transformation)
    else:
        document, renderable = output.document, output.renderable
    if config.output_format is OutputFormat.JSON:
        text = json.dumps(document, indent=2)
        console.print(text, markup=False, highlight=False, soft_wrap=True)
    else:
        console.print(renderable)


def run(argv: Sequence[str] | None = None, version: str = "0.0.0+dev") -> int:
    """
    Run one g1 command.

    Returns:
        Process exit code: 0 on success, else the exit code of the error
    """
    args = build_parser(version).parse_args(argv)
    errors = Console(stderr=True)
    try:
        config = _config(args)
        configure_logging(config.verbose)
        model = load_model(args.model)
        kwargs: dict[str, Any] = {}
        if getattr(args, "p", None) is not None:
            kwargs["p"] = args.p
        output = COMMANDS[args.command](model, config, **kwargs)
        _emit(output, config, getattr(args, "transform", False))
    except GenusOneError as e:
        logger.debug("command failed", exc_info=True)
        errors.print(f"error: {e}", markup=False, highlight=False)
        return e.exit_code
    return 0
