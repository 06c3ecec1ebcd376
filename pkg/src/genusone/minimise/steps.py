"""Steps, certificates and results of a local minimisation run."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

from genusone.errors import InvariantViolationError
from genusone.invariants.weierstrass import LevelReport, level
from genusone.minimise.critical import is_critical
from genusone.models.genus_one import GenusOneModel
from genusone.models.transformations import Transformation, apply, compose, identity

logger = logging.getLogger(__name__)


class StepKind(Enum):
    """Kind of a single minimisation step."""

    DIVIDE = "divide"
    MOVE_ROOT = "move-root"
    MOVE_POINT = "move-point"
    MOVE_LINE = "move-line"
    SITUATION1 = "situation1"
    SITUATION2 = "situation2"
    FLIPFLOP = "flipflop"
    PENCIL_ABSORB = "pencil-absorb"
    Y_SHIFT = "y-shift"
    QUARTIC_LIFT = "quartic-lift"
    COORDINATE_CHANGE = "coordinate-change"

    @property
    def label(self) -> str:
        """Human-readable label."""
        return self.value.replace("-", " ")

    @property
    def level_change(self) -> int:
        """Exact change in level caused by a step of this kind."""
        if self in _LOWERING:
            return -1
        return 1 if self is StepKind.QUARTIC_LIFT else 0


_LOWERING = frozenset(
    {StepKind.DIVIDE, StepKind.SITUATION1, StepKind.SITUATION2, StepKind.PENCIL_ABSORB}
)


class CertificateKind(Enum):
    """Why a local minimiser stopped."""

    LEVEL_ZERO = "level-zero"
    ITERATION_BOUND = "iteration-bound"
    CRITICAL = "critical"
    NO_MULTIPLE_ROOT = "no-multiple-root"

    @property
    def label(self) -> str:
        """Human-readable label."""
        return self.value.replace("-", " ")


@dataclass(frozen=True)
class MinimisationStep:
    """One transformation applied by a minimiser, with the levels around it."""

    kind: StepKind
    transformation: Transformation
    level_before: int
    level_after: int
    v_delta_before: int
    v_delta_after: int


@dataclass(frozen=True)
class MinimalityCertificate:
    """Reason the final model is minimal at p."""

    kind: CertificateKind
    detail: str = ""


@dataclass(frozen=True)
class MinimisationResult:
    """Outcome of minimising one model at one prime."""

    model: GenusOneModel
    transformation: Transformation
    certificate: MinimalityCertificate
    steps: list[MinimisationStep] = field(default_factory=list)
    prime: int = 0
    initial_level: int = 0
    final_level: int = 0

    @property
    def level_drop(self) -> int:
        return self.initial_level - self.final_level


class StepLog:
    """
    Applies steps to a model at a fixed prime and records them.

    Every step is checked to keep the model p-integral and to change the
    level by exactly the amount its kind allows. The log can be rolled back
    to an earlier mark, and its composed transformation is replayed against
    the starting model when the result is built.
    """

    def __init__(self, model: GenusOneModel, p: int) -> None:
        self.p = p
        self.initial = model
        self.model = model
        self.transformation: Transformation = identity(model.degree)
        self.report: LevelReport = level(model, p)
        self.initial_level = self.report.level
        self.steps: list[MinimisationStep] = []
        self._history: list[tuple[GenusOneModel, Transformation, LevelReport]] = []

    @property
    def level(self) -> int:
        return self.report.level

    def apply(self, kind: StepKind, g: Transformation) -> GenusOneModel:
        """
        Apply one step and record it.

        Args:
            kind: Step kind
            g: Transformation of the model's degree

        Returns:
            The transformed model

        Raises:
            InvariantViolationError: the step leaves the model non-p-integral
                or changes the level by the wrong amount
        """
        after = apply(g, self.model)
        if not after.is_p_integral(self.p):
            raise InvariantViolationError(
                f"{kind.value} step at {self.p} gave a non-{self.p}-integral model"
            )
        report = level(after, self.p)
        change = report.level - self.report.level
        if change != kind.level_change:
            raise InvariantViolationError(
                f"{kind.value} step at {self.p} changed the level by {change}"
            )
        self.steps.append(
            MinimisationStep(
                kind,
                g,
                self.report.level,
                report.level,
                self.report.v_delta_model,
                report.v_delta_model,
            )
        )
        self._history.append((self.model, self.transformation, self.report))
        self.model, self.report = after, report
        self.transformation = compose(g, self.transformation)
        logger.debug(
            "p=%d %s: level %d -> %d",
            self.p,
            kind.value,
            report.level - change,
            report.level,
        )
        return after

    def mark(self) -> int:
        """Position to roll back to."""
        return len(self.steps)

    def rollback(self, mark: int) -> None:
        """Undo every step recorded after the mark."""
        if mark >= len(self.steps):
            return
        self.model, self.transformation, self.report = self._history[mark]
        del self.steps[mark:]
        del self._history[mark:]

    def result(self, kind: CertificateKind, detail: str = "") -> MinimisationResult:
        """
        Close the run with a certificate.

        Level zero and critical coordinates override the proposed kind.

        Raises:
            InvariantViolationError: the composed transformation does not
                reproduce the final model, or a critical certificate is
                claimed for a model that is not critical
        """
        if self.level == 0:
            kind, detail = CertificateKind.LEVEL_ZERO, ""
        elif is_critical(self.model, self.p):
            if kind is not CertificateKind.CRITICAL:
                detail = ""
            kind = CertificateKind.CRITICAL
        elif kind in (CertificateKind.CRITICAL, CertificateKind.LEVEL_ZERO):
            raise InvariantViolationError(
                f"{kind.value} certificate claimed at {self.p} but it does not hold"
            )
        if apply(self.transformation, self.initial) != self.model:
            raise InvariantViolationError(
                f"composed transformation does not replay the run at {self.p}"
            )
        logger.info(
            "p=%d: level %d -> %d (%s, %d steps)",
            self.p,
            self.initial_level,
            self.level,
            kind.value,
            len(self.steps),
        )
        return MinimisationResult(
            self.model,
            self.transformation,
            MinimalityCertificate(kind, detail),
            list(self.steps),
            self.p,
            self.initial_level,
            self.level,
        )
