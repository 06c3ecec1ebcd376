"""Fixtures for worked-example scenario tests."""

from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import pytest

from genusone.arith import factor
from genusone.invariants import InvariantTriple, invariants, levels
from genusone.minimise import (
    GlobalMinimisationResult,
    MinimisationResult,
    minimise_global,
)
from genusone.minimise.critical import is_critical
from genusone.models.genus_one import GenusOneModel
from genusone.reduce import ReductionResult, reduce_model
from genusone.services import load_model

SCENARIOS_DIR = Path(__file__).parent / "scenarios"


@dataclass
class ScenarioResult:
    """A worked example's model with its computed invariants and results."""

    model: GenusOneModel
    scenario_name: str
    path: Path = field(default=SCENARIOS_DIR)

    # --- Invariants ---

    @cached_property
    def invariants(self) -> InvariantTriple:
        """c4, c6 and Δ of the input model."""
        return invariants(self.model)

    @cached_property
    def levels(self) -> dict[int, int]:
        """Level at each prime where the input is not minimal."""
        return {r.p: r.level for r in levels(self.model)}

    def is_critical_at(self, p: int) -> bool:
        """Whether the input model is critical at p."""
        return is_critical(self.model, p)

    # --- Minimisation and reduction ---

    @cached_property
    def minimised(self) -> GlobalMinimisationResult:
        """Global minimisation of the input."""
        return minimise_global(self.model)

    @cached_property
    def reduced(self) -> ReductionResult:
        """Reduction of the minimised model."""
        return reduce_model(self.minimised.model)

    def local(self, p: int) -> MinimisationResult:
        """The local minimisation run at p during global minimisation."""
        return next(r for r in self.minimised.local if r.prime == p)

    @property
    def minimal_invariants(self) -> InvariantTriple:
        return invariants(self.minimised.model)

    @property
    def minimal_discriminant(self) -> tuple[int, dict[int, int]]:
        """Sign and factorisation of the minimised discriminant."""
        n = int(self.minimal_invariants.discriminant)
        return (1 if n > 0 else -1), dict(factor(n))

    # --- Convenience ---

    @property
    def max_reduced_coefficient(self) -> Fraction:
        """Largest absolute coefficient of the reduced model."""
        return max(abs(c) for c in self.reduced.model.coefficients)

    def __len__(self) -> int:
        """Number of primes of positive level."""
        return len(self.levels)

    def __contains__(self, p: int) -> bool:
        """Check if the model has positive level at p."""
        return p in self.levels


_CACHE: dict[str, ScenarioResult] = {}


def _model_file(scenario_name: str) -> Path:
    scenario_path = SCENARIOS_DIR / scenario_name
    if not scenario_path.exists():
        raise ValueError(f"Scenario '{scenario_name}' not found at {scenario_path}")
    files = [p for p in scenario_path.iterdir() if p.name != "README.md"]
    if len(files) != 1:
        raise ValueError(f"Scenario '{scenario_name}' must hold exactly one model")
    return files[0]


@pytest.fixture(scope="session")
def load_scenario() -> Callable[[str], ScenarioResult]:
    """
    Fixture that returns a function to load scenarios.

    Results are shared across the session so expensive minimisations run once.

    Usage:
        def test_something(load_scenario):
            scenario = load_scenario("skoro_pair")
            assert scenario.levels == {2: 1, 3: 4}
    """

    def _load(scenario_name: str) -> ScenarioResult:
        if scenario_name not in _CACHE:
            path = _model_file(scenario_name)
            _CACHE[scenario_name] = ScenarioResult(
                model=load_model(str(path)), scenario_name=scenario_name, path=path
            )
        return _CACHE[scenario_name]

    return _load
