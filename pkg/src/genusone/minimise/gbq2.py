"""Minimisation of generalised binary quartics at p = 2."""

from __future__ import annotations

from fractions import Fraction

from genusone.arith.finite_field import Point
from genusone.arith.integers import vp_all
from genusone.arith.polynomials import diagonal
from genusone.errors import ArgumentError
from genusone.minimise.critical import is_critical
from genusone.minimise.quartics import repeated_root, residue, root_to_origin
from genusone.minimise.steps import (
    CertificateKind,
    MinimisationResult,
    StepKind,
    StepLog,
)
from genusone.models.genus_one import BinaryQuarticModel
from genusone.models.transformations import QuarticTransformation

MOVE_ROOT_BOUND = 2


def _odd(c: Fraction) -> int:
    return residue(c, 2)


def square_shift(model: BinaryQuarticModel) -> QuarticTransformation | None:
    """
    The y-shift making 2 | Q when 2 | P and Q is a square mod 2.

    Returns None when no shift is needed or none exists.
    """
    a, b, c, d, e = model.q
    if vp_all(model.p, 2) < 1 or _odd(b) or _odd(d):
        return None
    r = (_odd(a), _odd(c), _odd(e))
    if not any(r):
        return None
    return QuarticTransformation(1, r)


def _divisible(model: BinaryQuarticModel) -> bool:
    return vp_all(model.p, 2) >= 1 and vp_all(model.q, 2) >= 2


def repeated_root_form(model: BinaryQuarticModel) -> tuple[Fraction, ...]:
    """
    The form whose repeated root mod 2 is moved: P when v(P) = 0, the mixed
    second partial of Q when v(P, Q) = 0, and Q / 2 when v(Q) = 1.
    """
    if vp_all(model.p, 2) == 0:
        return model.p
    _, b, c, d, _ = model.q
    if vp_all(model.q, 2) == 0:
        return (3 * b, 4 * c, 3 * d)
    return tuple(v / 2 for v in model.q)


def gbq2_move(model: BinaryQuarticModel, root: Point) -> QuarticTransformation:
    """
    Move the repeated root to (0:1), shift y so that 2 | e, then
    P <- P(2x, z) / 2 and Q <- Q(2x, z) / 4.
    """
    move = root_to_origin(root, 2)
    moved = move.apply(model)
    shift = QuarticTransformation(1, (0, 0, _odd(moved.q[4])))
    scale = QuarticTransformation(Fraction(1, 2), (0, 0, 0), diagonal(2, 1))
    return move.then(shift).then(scale)


def gbq2_step(model: BinaryQuarticModel) -> QuarticTransformation | None:
    """The level-preserving move of a 2-integral model with v(P, Q) <= 1."""
    root = repeated_root(repeated_root_form(model), 2, 2)
    return None if root is None else gbq2_move(model, root)


def minimise_gbq2(model: BinaryQuarticModel) -> MinimisationResult:
    """
    Minimise a generalised binary quartic at 2.

    Args:
        model: 2-integral nonsingular model

    Returns:
        MinimisationResult

    Raises:
        ArgumentError: the model is not 2-integral
    """
    if not model.is_p_integral(2):
        raise ArgumentError("model is not 2-integral")
    log = StepLog(model, 2)
    moves = 0
    mark = log.mark()
    while True:
        if log.level == 0:
            return log.result(CertificateKind.LEVEL_ZERO)
        if is_critical(log.model, 2):
            return log.result(CertificateKind.CRITICAL)
        shift = square_shift(log.model)  # type: ignore[arg-type]
        if shift is not None:
            log.apply(StepKind.Y_SHIFT, shift)
        if _divisible(log.model):  # type: ignore[arg-type]
            log.apply(StepKind.DIVIDE, QuarticTransformation(Fraction(1, 2)))
            moves, mark = 0, log.mark()
            continue
        if moves >= MOVE_ROOT_BOUND:
            log.rollback(mark)
            return log.result(
                CertificateKind.ITERATION_BOUND, f"{moves} root moves without a divide"
            )
        g = gbq2_step(log.model)  # type: ignore[arg-type]
        if g is None:
            log.rollback(mark)
            return log.result(
                CertificateKind.NO_MULTIPLE_ROOT, "no repeated root mod 2"
            )
        log.apply(StepKind.MOVE_ROOT, g)
        moves += 1
