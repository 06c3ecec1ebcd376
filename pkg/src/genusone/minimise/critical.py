"""Critical models: the coordinates in which an insoluble model is minimal."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from genusone.arith.finite_field import binary_quadratic_resultant
from genusone.arith.integers import vp
from genusone.arith.polynomials import diagonal
from genusone.models.genus_one import (
    CUBIC_LABELS,
    QUADRIC_LABELS,
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
)
from genusone.models.transformations import QuadricTransformation

# (minimum valuation, exact valuation or None) per coefficient
QUARTIC_PATTERN = (
    (1, None),
    (1, None),
    (2, None),
    (1, 1),
    (2, None),
    (2, None),
    (3, None),
    (3, 3),
)
CUBIC_PATTERN = {
    "a": (0, 0),
    "b": (1, 1),
    "c": (2, 2),
    "a2": (1, None),
    "a3": (1, None),
    "b1": (1, None),
    "b3": (2, None),
    "c1": (2, None),
    "c2": (2, None),
    "m": (1, None),
}

_X1X2 = ("c11", "c12", "c22")
_X3X4 = ("c33", "c34", "c44")


def _matches(value: Fraction, p: int, rule: tuple[int, int | None]) -> bool:
    v = vp(value, p)
    low, exact = rule
    if exact is not None:
        return v == exact
    return v >= low


def _residues(q: Sequence[Fraction], p: int) -> dict[str, int]:
    return {
        label: c.numerator * pow(c.denominator, -1, p) % p
        for label, c in zip(QUADRIC_LABELS, q, strict=True)
    }


def _binary_pair(model: QuadricPairModel, p: int, labels: tuple[str, ...]) -> bool:
    """Reductions are quadrics in the two named variables without common root."""
    forms = []
    for q in (model.q1, model.q2):
        residues = _residues(q, p)
        if any(residues[k] for k in QUADRIC_LABELS if k not in labels):
            return False
        forms.append([residues[k] for k in labels])
    return binary_quadratic_resultant(*forms) % p != 0


def flip_flop(p: int) -> QuadricTransformation:
    """[p^-1 I, Diag(p, p, 1, 1)]."""
    return QuadricTransformation(
        diagonal(Fraction(1, p), Fraction(1, p)), diagonal(p, p, 1, 1)
    )


def is_critical(model: GenusOneModel, p: int) -> bool:
    """
    Whether a p-integral model is critical at p.

    Degrees 2 and 3 test coefficient valuations; degree 4 tests the
    reductions before and after the flip-flop transformation.

    Args:
        model: p-integral genus one model
        p: Prime

    Returns:
        True if the model is critical (hence insoluble and minimal)
    """
    if not model.is_p_integral(p):
        return False
    if isinstance(model, BinaryQuarticModel):
        return all(
            _matches(c, p, rule)
            for c, rule in zip(model.coefficients, QUARTIC_PATTERN, strict=True)
        )
    if isinstance(model, CubicModel):
        return all(
            _matches(model[label], p, CUBIC_PATTERN[label]) for label in CUBIC_LABELS
        )
    if isinstance(model, QuadricPairModel):
        if not _binary_pair(model, p, _X1X2):
            return False
        flipped = flip_flop(p).apply(model)
        return flipped.is_p_integral(p) and _binary_pair(flipped, p, _X3X4)
    return False


__all__ = ["flip_flop", "is_critical"]
