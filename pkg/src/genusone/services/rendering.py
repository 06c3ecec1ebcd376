"""Rich tables and JSON documents for command results.

JSON values are exact: integers and fractions are written as strings.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np
from rich.console import Group
from rich.table import Table
from rich.text import Text

from genusone.arith.polynomials import matrix_rows
from genusone.invariants.core import AInvariants, InvariantTriple
from genusone.invariants.weierstrass import LevelReport
from genusone.minimise.driver import GlobalMinimisationResult
from genusone.minimise.steps import MinimisationResult, MinimisationStep
from genusone.models.genus_one import GenusOneModel, WeierstrassModel
from genusone.models.transformations import (
    CubicTransformation,
    QuadricTransformation,
    QuarticTransformation,
    Transformation,
    WeierstrassTransformation,
)
from genusone.reduce.driver import ReductionResult
from genusone.services.parsers import format_rational
from genusone.services.parsers.json_model import model_to_json
from genusone.services.parsers.text import format_model_text


def _valuation(v: int | float) -> str:
    return "∞" if v == math.inf else str(int(v))


def _rows(m: Any) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in matrix_rows(m)]


def transformation_to_json(g: Transformation) -> dict[str, Any]:
    """Exact JSON form of a transformation of any degree."""
    doc: dict[str, Any] = {"deg": g.degree, "det": format_rational(g.det)}
    if isinstance(g, WeierstrassTransformation):
        doc.update(
            {k: format_rational(getattr(g, k)) for k in ("u", "r", "s", "t")}
        )
    elif isinstance(g, QuarticTransformation):
        doc["mu"] = format_rational(g.mu)
        doc["r"] = [format_rational(c) for c in g.r]
        doc["m"] = _rows(g.m)
    elif isinstance(g, CubicTransformation):
        doc["mu"] = format_rational(g.mu)
        doc["m"] = _rows(g.m)
    elif isinstance(g, QuadricTransformation):
        doc["m"] = _rows(g.m)
        doc["n"] = _rows(g.n)
    return doc


def invariants_to_json(triple: InvariantTriple) -> dict[str, str]:
    return {
        "c4": format_rational(triple.c4),
        "c6": format_rational(triple.c6),
        "discriminant": format_rational(triple.discriminant),
    }


def a_invariants_to_json(a: AInvariants) -> dict[str, str]:
    names = ("a1", "a2", "a3", "a4", "a6")
    return {name: format_rational(getattr(a, name)) for name in names}


def level_to_json(report: LevelReport) -> dict[str, Any]:
    return {
        "p": report.p,
        "level": report.level,
        "v_delta_model": report.v_delta_model,
        "v_delta_min": report.v_delta_min,
        "v_c4": _valuation(report.v_c4),
        "v_c6": _valuation(report.v_c6),
    }


def step_to_json(step: MinimisationStep) -> dict[str, Any]:
    return {
        "kind": step.kind.value,
        "level_before": step.level_before,
        "level_after": step.level_after,
        "v_delta_before": step.v_delta_before,
        "v_delta_after": step.v_delta_after,
        "transformation": transformation_to_json(step.transformation),
    }


def local_result_to_json(result: MinimisationResult) -> dict[str, Any]:
    return {
        "p": result.prime,
        "initial_level": result.initial_level,
        "final_level": result.final_level,
        "certificate": result.certificate.kind.value,
        "detail": result.certificate.detail,
        "steps": [step_to_json(s) for s in result.steps],
        "model": model_to_json(result.model),
        "transformation": transformation_to_json(result.transformation),
    }


def global_result_to_json(result: GlobalMinimisationResult) -> dict[str, Any]:
    return {
        "model": model_to_json(result.model),
        "transformation": transformation_to_json(result.transformation),
        "seed": result.seed,
        "minimal": result.is_minimal,
        "levels_before": [level_to_json(r) for r in result.levels_before],
        "levels_after": [level_to_json(r) for r in result.levels_after],
        "local": [local_result_to_json(r) for r in result.local],
    }


def gram_to_json(gram: np.ndarray) -> dict[str, Any]:
    """A Gram matrix with its scale, entries as floats."""
    scale = float(np.max(np.abs(gram))) if gram.size else 0.0
    return {"scale": scale, "entries": np.asarray(gram, dtype=float).tolist()}


def reduction_to_json(result: ReductionResult) -> dict[str, Any]:
    return {
        "model": model_to_json(result.model),
        "transformation": transformation_to_json(result.transformation),
        "gram_before": gram_to_json(result.gram_before),
        "gram_after": gram_to_json(result.gram_after),
    }


def model_text(model: GenusOneModel) -> Text:
    return Text(format_model_text(model), style="bold")


def transformation_table(g: Transformation, title: str = "Transformation") -> Table:
    """Key/value table of a transformation's exact entries."""
    table = Table(title=title, show_header=False)
    table.add_column("field", style="cyan")
    table.add_column("value", overflow="fold")
    for key, value in transformation_to_json(g).items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            rendered = "\n".join(" ".join(row) for row in value)
        elif isinstance(value, list):
            rendered = " ".join(value)
        else:
            rendered = str(value)
        table.add_row(key, rendered)
    return table


def invariants_table(
    triple: InvariantTriple, a: AInvariants, jacobian: WeierstrassModel
) -> Table:
    table = Table(title="Invariants", show_header=False)
    table.add_column("name", style="cyan")
    table.add_column("value", overflow="fold")
    for key, value in invariants_to_json(triple).items():
        table.add_row("Δ" if key == "discriminant" else key, value)
    for key, value in a_invariants_to_json(a).items():
        table.add_row(key, value)
    table.add_row("jacobian", format_model_text(jacobian))
    return table


def levels_table(reports: list[LevelReport], title: str = "Levels") -> Table:
    table = Table(title=title)
    for column in ("p", "level", "v(Δ)", "v(Δ_min)", "v(c4)", "v(c6)"):
        table.add_column(column, justify="right")
    for r in reports:
        table.add_row(
            str(r.p),
            str(r.level),
            str(r.v_delta_model),
            str(r.v_delta_min),
            _valuation(r.v_c4),
            _valuation(r.v_c6),
        )
    return table


def steps_table(result: MinimisationResult) -> Table:
    title = (
        f"p = {result.prime}: level {result.initial_level} → {result.final_level} "
        f"({result.certificate.kind.label})"
    )
    table = Table(title=title)
    table.add_column("#", justify="right")
    table.add_column("step")
    table.add_column("level", justify="right")
    table.add_column("v(Δ)", justify="right")
    for k, step in enumerate(result.steps, 1):
        table.add_row(
            str(k),
            step.kind.label,
            f"{step.level_before} → {step.level_after}",
            f"{step.v_delta_before} → {step.v_delta_after}",
        )
    return table


def render_local(result: MinimisationResult) -> Group:
    return Group(
        model_text(result.model),
        steps_table(result),
        transformation_table(result.transformation),
    )


def render_global(result: GlobalMinimisationResult) -> Group:
    parts: list[Any] = [model_text(result.model)]
    if result.levels_before:
        parts.append(levels_table(result.levels_before, "Levels before"))
    parts.extend(steps_table(r) for r in result.local)
    if result.levels_after:
        parts.append(levels_table(result.levels_after, "Levels after"))
    else:
        parts.append(Text("minimal at every prime", style="green"))
    parts.append(transformation_table(result.transformation))
    return Group(*parts)


def render_reduction(result: ReductionResult) -> Group:
    return Group(model_text(result.model), transformation_table(result.transformation))
