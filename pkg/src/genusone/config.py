"""Run configuration for minimisation and reduction."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any

import yaml

from genusone.errors import ArgumentError

FACTOR_BUDGET_ENV = "G1_FACTOR_BUDGET"


class OutputFormat(Enum):
    """How command results are printed."""

    TEXT = "text"
    JSON = "json"

    @property
    def label(self) -> str:
        """Human-readable label."""
        return self.value.upper()


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by every command."""

    seed: int = 0
    delta: float = 0.99
    precision: int = 40
    output_format: OutputFormat = OutputFormat.TEXT
    factor_budget: int = 10**7
    scan_limit: int = 2**20
    verbose: bool = False

    def __post_init__(self) -> None:
        if not 0.25 < self.delta < 1:
            raise ArgumentError(f"delta must lie in (0.25, 1), got {self.delta}")
        if self.precision < 10:
            raise ArgumentError(f"precision must be at least 10, got {self.precision}")
        if self.factor_budget < 1:
            raise ArgumentError(
                f"factor budget must be positive, got {self.factor_budget}"
            )
        if self.scan_limit < 2:
            raise ArgumentError(f"scan limit must be at least 2, got {self.scan_limit}")

    def with_overrides(self, **overrides: Any) -> RunConfig:
        """Return a copy with the non-None overrides applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_YAML_KEYS = {
    "seed": int,
    "delta": float,
    "precision": int,
    "format": OutputFormat,
    "factor_budget": int,
    "scan_limit": int,
}


def _coerce(key: str, value: Any) -> Any:
    try:
        return _YAML_KEYS[key](value)
    except (TypeError, ValueError) as e:
        raise ArgumentError(f"invalid value for '{key}' in config: {value!r}") from e


def load_config(
    path: Path | None = None, env: dict[str, str] | None = None
) -> RunConfig:
    """
    Build a RunConfig from an optional YAML file and the environment.

    Args:
        path: YAML file with any of seed, delta, precision, format,
            factor_budget, scan_limit
        env: Environment mapping (defaults to os.environ)

    Returns:
        The merged configuration (command-line flags are applied by the caller)
    """
    values: dict[str, Any] = {}

    if path is not None:
        try:
            content = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ArgumentError(f"Failed to read config file: {e}") from e
        try:
            data = yaml.safe_load(content) or {}
        except yaml.YAMLError as e:
            raise ArgumentError(f"Invalid YAML in {path}: {e}") from e
        if not isinstance(data, dict):
            raise ArgumentError(f"Config file {path} must contain a mapping")
        for key, value in data.items():
            if key not in _YAML_KEYS:
                raise ArgumentError(f"Unknown config key '{key}' in {path}")
            target = "output_format" if key == "format" else key
            values[target] = _coerce(key, value)

    environ = os.environ if env is None else env
    budget = environ.get(FACTOR_BUDGET_ENV)
    if budget:
        try:
            values["factor_budget"] = int(budget)
        except ValueError as e:
            raise ArgumentError(
                f"{FACTOR_BUDGET_ENV} must be an integer, got {budget!r}"
            ) from e

    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in values.items() if k in known})
