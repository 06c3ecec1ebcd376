"""Minimisation of binary quartics and generalised binary quartics at odd p."""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

from genusone.arith.finite_field import Point, binary_form_roots, sl_lift_at
from genusone.arith.integers import vp, vp_all
from genusone.arith.polynomials import diagonal, matrix
from genusone.errors import ArgumentError
from genusone.minimise.critical import is_critical
from genusone.minimise.steps import (
    CertificateKind,
    MinimisationResult,
    StepKind,
    StepLog,
)
from genusone.models.genus_one import BinaryQuarticModel
from genusone.models.transformations import QuarticTransformation

MOVE_ROOT_BOUND = 2


def residue(c: Fraction, m: int) -> int:
    """c mod m for c with denominator prime to m."""
    return c.numerator * pow(c.denominator, -1, m) % m


def reduced(values: Sequence[Fraction], p: int) -> list[int]:
    """p^-v values mod p, where v is the least valuation."""
    v = vp_all(values, p)
    if v == math.inf:
        return [0] * len(values)
    scale = Fraction(p) ** int(v)
    return [residue(c / scale, p) for c in values]


def repeated_root(
    values: Sequence[Fraction], p: int, multiplicity: int
) -> Point | None:
    """A root of the primitive reduction with at least the given multiplicity."""
    for root, mult in binary_form_roots(reduced(values, p), p):
        if mult >= multiplicity:
            return root
    return None


def root_to_origin(root: Point, p: int) -> QuarticTransformation:
    """Unimodular [1, 0, M] sending the point (0:1) to the given root mod p."""
    u = sl_lift_at([root], [1], p, 2)
    return QuarticTransformation(1, (0, 0, 0), matrix(u).T)


def move_root(root: Point, p: int) -> QuarticTransformation:
    """Move a root to (0:1), then F <- p^-2 F(p x, z)."""
    return root_to_origin(root, p).then(
        QuarticTransformation(Fraction(1, p), (0, 0, 0), diagonal(p, 1))
    )


def quartic_move(
    quartic: Sequence[Fraction], p: int
) -> QuarticTransformation | None:
    """
    The level-preserving move of an odd-p binary quartic of positive level.

    Args:
        quartic: Coefficients of F with v(F) <= 1
        p: Odd prime

    Returns:
        The move, or None if F mod p has no root of multiplicity >= 3
    """
    root = repeated_root(quartic, p, 3)
    return None if root is None else move_root(root, p)


def _as_quartic_model(
    quartic: BinaryQuarticModel | Sequence[Fraction],
) -> BinaryQuarticModel:
    if isinstance(quartic, BinaryQuarticModel):
        if any(quartic.p):
            raise ArgumentError("minimise_bq needs a model y^2 = F(x, z)")
        return quartic
    return BinaryQuarticModel.from_quartic(quartic)


def _run_bq(log: StepLog) -> tuple[CertificateKind, str]:
    p = log.p
    moves = 0
    mark = log.mark()
    while True:
        f = log.model.q  # type: ignore[attr-defined]
        if vp_all(f, p) >= 2:
            log.apply(StepKind.DIVIDE, QuarticTransformation(Fraction(1, p)))
            moves, mark = 0, log.mark()
            continue
        if log.level == 0:
            return CertificateKind.LEVEL_ZERO, ""
        if is_critical(log.model, p):
            return CertificateKind.CRITICAL, ""
        if moves >= MOVE_ROOT_BOUND:
            log.rollback(mark)
            detail = f"{moves} root moves without a divide"
            return CertificateKind.ITERATION_BOUND, detail
        g = quartic_move(f, p)
        if g is None:
            log.rollback(mark)
            return CertificateKind.NO_MULTIPLE_ROOT, f"no triple root mod {p}"
        log.apply(StepKind.MOVE_ROOT, g)
        moves += 1


def minimise_bq(
    quartic: BinaryQuarticModel | Sequence[Fraction], p: int
) -> MinimisationResult:
    """
    Minimise a binary quartic y^2 = F(x, z) at an odd prime.

    Args:
        quartic: F as five coefficients, or a model with P = 0
        p: Odd prime

    Returns:
        MinimisationResult whose model is y^2 = F_min

    Raises:
        ArgumentError: p = 2, or F is not p-integral
    """
    if p == 2:
        raise ArgumentError("binary quartics at 2 are minimised with minimise_gbq2")
    model = _as_quartic_model(quartic)
    if not model.is_p_integral(p):
        raise ArgumentError(f"quartic is not {p}-integral")
    log = StepLog(model, p)
    kind, detail = _run_bq(log)
    return log.result(kind, detail)


def _symmetric_residue(c: Fraction, m: int) -> int:
    r = residue(c, m)
    return r - m if r > m // 2 else r


def minimise_gbq_odd(model: BinaryQuarticModel, p: int) -> MinimisationResult:
    """
    Minimise a generalised binary quartic at an odd prime.

    Works on F = P^2 + 4Q: a y-shift by -P/2 gives y^2 = F/4, the quartic is
    minimised, and a final y-shift with denominator 2 restores a 2-integral
    P whenever the input was 2-integral.

    Args:
        model: p-integral generalised binary quartic
        p: Odd prime

    Returns:
        MinimisationResult
    """
    if p == 2:
        raise ArgumentError("use minimise_gbq2 at p = 2")
    if not model.is_p_integral(p):
        raise ArgumentError(f"model is not {p}-integral")
    inner = minimise_bq(tuple(c / 4 for c in model.quartic()), p)
    log = StepLog(model, p)
    kind = inner.certificate.kind
    if kind is CertificateKind.CRITICAL:
        kind = CertificateKind.ITERATION_BOUND
    if not inner.steps:
        return log.result(kind, inner.certificate.detail)

    if any(model.p):
        shift = tuple(-c / 2 for c in model.p)
        log.apply(StepKind.Y_SHIFT, QuarticTransformation(1, shift))
    for step in inner.steps:
        log.apply(step.kind, step.transformation)

    g = inner.transformation
    bare = QuarticTransformation(g.mu, (0, 0, 0), g.m)  # type: ignore[union-attr]
    tracked = bare.apply(model).p
    if all(vp(c, 2) >= 0 for c in tracked):
        target = [_symmetric_residue(c, 4) for c in tracked]
        if any(target):
            back = tuple(Fraction(c, 2) for c in target)
            log.apply(StepKind.Y_SHIFT, QuarticTransformation(1, back))
    return log.result(kind, inner.certificate.detail)
