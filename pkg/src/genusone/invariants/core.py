"""Invariants c4, c6, Δ and Jacobian a-invariants of genus one models."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from genusone.errors import InvariantViolationError, ModelIsSingularError
from genusone.invariants.forms import (
    binary_quartic_IJ,
    doubling,
    pencil_determinant,
)
from genusone.invariants.tables import cubic_a1_to_a4, cubic_c6
from genusone.models.genus_one import (
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
    WeierstrassModel,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantTriple:
    """The invariants (c4, c6, Δ) with c4^3 - c6^2 = 1728 Δ."""

    c4: Fraction
    c6: Fraction
    discriminant: Fraction

    def __post_init__(self) -> None:
        for name in ("c4", "c6", "discriminant"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c4**3 - self.c6**2 != 1728 * self.discriminant:
            raise InvariantViolationError(
                "c4^3 - c6^2 != 1728 Δ for "
                f"({self.c4}, {self.c6}, {self.discriminant})"
            )

    @classmethod
    def from_c4_c6(cls, c4: Fraction | int, c6: Fraction | int) -> InvariantTriple:
        c4, c6 = Fraction(c4), Fraction(c6)
        return cls(c4, c6, (c4**3 - c6**2) / 1728)

    def scaled(self, d: Fraction | int) -> InvariantTriple:
        """Invariants after a transformation of determinant d."""
        d = Fraction(d)
        return InvariantTriple(
            self.c4 * d**4, self.c6 * d**6, self.discriminant * d**12
        )

    def is_singular(self) -> bool:
        return self.discriminant == 0


@dataclass(frozen=True)
class AInvariants:
    """Coefficients a1, ..., a6 of a Weierstrass equation of the Jacobian."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def b2(self) -> Fraction:
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return self.a1 * self.a3 + 2 * self.a4

    @property
    def b6(self) -> Fraction:
        return self.a3**2 + 4 * self.a6

    @property
    def c4(self) -> Fraction:
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self) -> Fraction:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    def invariants(self) -> InvariantTriple:
        return InvariantTriple.from_c4_c6(self.c4, self.c6)

    def weierstrass(self) -> WeierstrassModel:
        return WeierstrassModel(self.a1, self.a2, self.a3, self.a4, self.a6)


def _quartic_a_invariants(model: BinaryQuarticModel) -> AInvariants:
    l, m, n = model.p  # noqa: E741
    a, b, c, d, e = model.q
    return AInvariants(
        m,
        c - l * n,
        l * d + n * b,
        -4 * a * e + b * d - (l * l * e + l * n * c + n * n * a),
        -4 * a * c * e
        + a * d * d
        + b * b * e
        - (l * l * c * e + m * m * a * e + n * n * a * c + l * n * b * d)
        + l * m * b * e
        + m * n * a * d,
    )


def _cubic_a_invariants(f: CubicModel) -> AInvariants:
    a1, a2, a3, a4 = cubic_a1_to_a4(f.coefficients)
    partial = AInvariants(a1, a2, a3, a4, 0)
    c6 = cubic_c6(f.coefficients)
    b2, b4 = partial.b2, partial.b4
    b6 = (-c6 - b2**3 + 36 * b2 * b4) / 216
    a6 = (b6 - a3 * a3) / 4
    result = AInvariants(a1, a2, a3, a4, a6)
    if result.c6 != c6:
        raise InvariantViolationError("a-invariants of the cubic do not reproduce c6")
    if f.is_integral() and a6.denominator != 1:
        raise InvariantViolationError(f"a6 of an integral cubic is not integral: {a6}")
    return result


def a_invariants(model: GenusOneModel) -> AInvariants:
    """
    a-invariants of a genus one model of any degree.

    Degree 4 goes through the doubling; degree 3 recovers a6 from c6.

    Args:
        model: Genus one model

    Returns:
        AInvariants whose c4, c6 equal those of the model
    """
    if isinstance(model, WeierstrassModel):
        return AInvariants(*model.coefficients)
    if isinstance(model, BinaryQuarticModel):
        return _quartic_a_invariants(model)
    if isinstance(model, CubicModel):
        return _cubic_a_invariants(model)
    return _quartic_a_invariants(doubling(model))


def invariants(model: GenusOneModel) -> InvariantTriple:
    """
    Exact invariants (c4, c6, Δ) of a genus one model.

    Singular models are allowed and give Δ = 0.

    Args:
        model: Genus one model of degree 1 to 4

    Returns:
        InvariantTriple
    """
    if isinstance(model, WeierstrassModel):
        return a_invariants(model).invariants()
    if isinstance(model, BinaryQuarticModel):
        i, j = binary_quartic_IJ(tuple(c / 4 for c in model.quartic()))
        return InvariantTriple.from_c4_c6(16 * i, 32 * j)
    if isinstance(model, CubicModel):
        return a_invariants(model).invariants()
    if isinstance(model, QuadricPairModel):
        i, j = binary_quartic_IJ(pencil_determinant(model))
        return InvariantTriple.from_c4_c6(i, j / 2)
    raise TypeError(f"not a genus one model: {model!r}")


def discriminant(model: GenusOneModel) -> Fraction:
    """Δ of a genus one model."""
    return invariants(model).discriminant


def jacobian_weierstrass(model: GenusOneModel) -> WeierstrassModel:
    """
    Weierstrass equation of the Jacobian with the model's a-invariants.

    Raises:
        ModelIsSingularError: Δ = 0
    """
    inv = invariants(model)
    if inv.is_singular():
        raise ModelIsSingularError(inv.discriminant)
    return a_invariants(model).weierstrass()


def require_nonsingular(model: GenusOneModel) -> InvariantTriple:
    """Invariants of the model, raising ModelIsSingularError when Δ = 0."""
    inv = invariants(model)
    if inv.is_singular():
        raise ModelIsSingularError(inv.discriminant)
    return inv
