"""Covariant forms: binary quartic invariants, Hessians and quadric pencils."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from genusone.arith.polynomials import fractions
from genusone.errors import InvariantViolationError
from genusone.invariants.tables import (
    hessian_coefficients,
    pencil_determinant_coefficients,
    quadric_determinant,
)
from genusone.models.genus_one import (
    QUADRIC_LABELS,
    BinaryQuarticModel,
    CubicModel,
    QuadricPairModel,
)

# Pairs of labels whose products make up the Pfaffian-like invariant pf.
PF_PAIRS = (("c12", "c34"), ("c13", "c24"), ("c14", "c23"))


def binary_quartic_IJ(  # noqa: N802
    q: Sequence[Fraction | int],
) -> tuple[Fraction, Fraction]:
    """
    Invariants I and J of a x^4 + b x^3 z + c x^2 z^2 + d x z^3 + e z^4.

    Args:
        q: Coefficients (a, b, c, d, e)

    Returns:
        Tuple (I, J)
    """
    a, b, c, d, e = fractions(q)
    i = 12 * a * e - 3 * b * d + c * c
    j = 72 * a * c * e - 27 * a * d * d - 27 * b * b * e + 9 * b * c * d - 2 * c**3
    return i, j


def hessian(f: CubicModel) -> CubicModel:
    """Determinant of the matrix of second partial derivatives of a ternary cubic."""
    return CubicModel.from_coefficients(hessian_coefficients(f.coefficients))


def _pf(c: dict[str, Any]) -> Any:
    return sum(c[u] * c[v] for u, v in PF_PAIRS)


def pf_rd(q: Sequence[Fraction | int]) -> tuple[Fraction, Fraction]:
    """
    The invariants pf and rd of a quaternary quadric.

    det(second partials of Q) = pf(Q)^2 + 4 rd(Q).

    Args:
        q: Coefficients c11, c12, ..., c44

    Returns:
        Tuple (pf, rd)
    """
    values = fractions(q)
    labelled = dict(zip(QUADRIC_LABELS, values, strict=True))
    pf = Fraction(_pf(labelled))
    rd = (quadric_determinant(values) - pf * pf) / 4
    if all(v.denominator == 1 for v in values) and rd.denominator != 1:
        raise InvariantViolationError(
            f"rd of an integral quadric is not integral: {rd}"
        )
    return pf, rd


def pencil_determinant(model: QuadricPairModel) -> tuple[Fraction, ...]:
    """Coefficients of the binary quartic det(A x + B z)."""
    return pencil_determinant_coefficients(model.q1, model.q2)


def _square(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    l, m, n = p  # noqa: E741
    return (l * l, 2 * l * m, m * m + 2 * l * n, 2 * m * n, n * n)


def pencil_pf_rd(
    model: QuadricPairModel,
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """
    pf and rd of the pencil x Q1 + z Q2.

    Returns:
        Tuple of (binary quadratic pf, binary quartic rd)
    """
    first = dict(zip(QUADRIC_LABELS, model.q1, strict=True))
    second = dict(zip(QUADRIC_LABELS, model.q2, strict=True))
    cross = sum(
        (first[u] * second[v] + second[u] * first[v] for u, v in PF_PAIRS),
        Fraction(0),
    )
    pf = (Fraction(_pf(first)), cross, Fraction(_pf(second)))
    det = pencil_determinant(model)
    rd = tuple((d - s) / 4 for d, s in zip(det, _square(pf), strict=True))
    if model.is_integral() and any(c.denominator != 1 for c in rd):
        raise InvariantViolationError(
            "rd of an integral quadric pencil is not integral"
        )
    return pf, rd


def doubling(model: QuadricPairModel) -> BinaryQuarticModel:
    """
    The generalised binary quartic (pf, rd) of the pencil of a quadric pair.

    It has the same invariants as the pair, and P^2 + 4Q = det(A x + B z).
    """
    pf, rd = pencil_pf_rd(model)
    return BinaryQuarticModel(pf, rd)
