"""Minimisation of quadric intersections at a prime."""

from __future__ import annotations

from fractions import Fraction

from genusone.arith.finite_field import binary_common_root, gf_kernel, sl_lift_at
from genusone.arith.integers import vp_all
from genusone.arith.polynomials import diagonal, matrix
from genusone.errors import ArgumentError, InvariantViolationError
from genusone.invariants.forms import doubling, pencil_determinant
from genusone.minimise.critical import flip_flop, is_critical
from genusone.minimise.gbq2 import gbq2_step, square_shift
from genusone.minimise.quadric_geometry import (
    QuadraticForm,
    Vector,
    common_kernel,
    common_plane,
    from_coefficients,
    is_zero,
    line_on_reduction,
    to_coefficients,
)
from genusone.minimise.quartics import quartic_move
from genusone.minimise.steps import (
    CertificateKind,
    MinimisationResult,
    StepKind,
    StepLog,
)
from genusone.models.genus_one import BinaryQuarticModel, QuadricPairModel
from genusone.models.transformations import QuadricTransformation

CAP_FACTOR = 16
LIFT_BOUND = 2


def _reductions(
    model: QuadricPairModel, p: int
) -> tuple[QuadraticForm, QuadraticForm]:
    return from_coefficients(model.q1, 4, p), from_coefficients(model.q2, 4, p)


def _square_shifted(model: QuadricPairModel) -> BinaryQuarticModel:
    gbq = doubling(model)
    shift = square_shift(gbq)
    return gbq if shift is None else shift.apply(gbq)


def absorb_matrix(model: QuadricPairModel, p: int) -> QuadricTransformation | None:
    """
    The pencil change dividing one quadric by p when the reductions of Q1
    and Q2 are linearly dependent mod p.

    Returns:
        [M, I] with det M = 1/p, or None when Q1 and Q2 are independent mod p
    """
    q1, q2 = _reductions(model, p)
    if is_zero(q1):
        return QuadricTransformation(diagonal(Fraction(1, p), 1))
    if is_zero(q2):
        return QuadricTransformation(diagonal(1, Fraction(1, p)))
    c1, c2 = to_coefficients(q1, 4), to_coefficients(q2, 4)
    pivot = next(i for i, c in enumerate(c1) if c)
    lam = c2[pivot] * pow(c1[pivot], -1, p) % p
    if any((b - lam * a) % p for a, b in zip(c1, c2, strict=True)):
        return None
    return QuadricTransformation(
        matrix([[1, 0], [Fraction(-lam, p), Fraction(1, p)]])
    )


def mrl_hypothesis(model: QuadricPairModel, p: int) -> bool:
    """
    Whether the level can be lowered without first lifting the pencil.

    For odd p this asks p^2 | det(A x + B z); at 2 the doubled quartic,
    after the square y-shift, must have 2 | P and 4 | Q.
    """
    if p != 2:
        return vp_all(pencil_determinant(model), p) >= 2
    gbq = _square_shifted(model)
    return vp_all(gbq.p, 2) >= 1 and vp_all(gbq.q, 2) >= 2


def quartic_lift(model: QuadricPairModel, p: int) -> QuadricTransformation | None:
    """
    The pencil change [M, I] lifting the level by one, taken from the root
    move of the pencil's binary quartic.

    Returns:
        The lift, or None when the quartic has no suitable repeated root
    """
    if p != 2:
        g = quartic_move(pencil_determinant(model), p)
    else:
        g = gbq2_step(_square_shifted(model))
    return None if g is None else QuadricTransformation(m=g.m)


def _moving(
    vectors: list[Vector], positions: list[int], p: int
) -> QuadricTransformation:
    """Change of coordinates putting the span of the vectors at the positions."""
    return QuadricTransformation(n=matrix(sl_lift_at(vectors, positions, p, 4)).T)


def situation1(ell: Vector, p: int) -> QuadricTransformation:
    """
    Move the plane ell = 0 to x1 = 0, then apply [p^-1 I, Diag(p, 1, 1, 1)].

    Both reductions must vanish on the plane.
    """
    return _moving(gf_kernel([ell], p), [1, 2, 3], p).then(
        QuadricTransformation(
            diagonal(Fraction(1, p), Fraction(1, p)), diagonal(p, 1, 1, 1)
        )
    )


def _binary_residues(q: QuadraticForm, i: int, j: int) -> list[int]:
    return [q.get((i, i), 0), q.get((i, j), 0), q.get((j, j), 0)]


def _single_singular_point(log: StepLog, common: list[Vector]) -> None:
    p = log.p
    model: QuadricPairModel = log.model  # type: ignore[assignment]
    move = _moving(common, [0], p)
    moved = move.apply(model)
    if vp_all((moved.q1[0], moved.q2[0]), p) >= 2:
        shrink = QuadricTransformation(n=diagonal(Fraction(1, p), 1, 1, 1))
        log.apply(StepKind.SITUATION2, move.then(shrink))
        return
    ell = common_plane(*_reductions(model, p), 4, p)
    if ell is None:
        raise InvariantViolationError(
            f"singular point mod {p} without a common plane or p^2 | c11"
        )
    log.apply(StepKind.SITUATION1, situation1(ell, p))


def _singular_line(log: StepLog, common: list[Vector]) -> bool:
    p = log.p
    model: QuadricPairModel = log.model  # type: ignore[assignment]
    move = _moving(common[:2], [2, 3], p)
    moved = move.apply(model)
    m1, m2 = _reductions(moved, p)
    root = binary_common_root(_binary_residues(m1, 0, 1), _binary_residues(m2, 0, 1), p)
    if root is not None:
        xi, eta = root
        log.apply(StepKind.SITUATION1, move.then(situation1([eta, -xi % p, 0, 0], p)))
        return False
    flip = move.then(flip_flop(p))
    flipped = flip.apply(model)
    f1, f2 = _reductions(flipped, p)
    root = binary_common_root(_binary_residues(f1, 2, 3), _binary_residues(f2, 2, 3), p)
    if root is not None:
        xi, eta = root
        log.apply(StepKind.FLIPFLOP, flip)
        log.apply(StepKind.SITUATION1, situation1([0, 0, eta, -xi % p], p))
        return False
    if is_critical(moved, p):
        log.apply(StepKind.COORDINATE_CHANGE, move)
        return True
    absorb = absorb_matrix(flipped, p)
    if absorb is None:
        raise InvariantViolationError(
            f"singular line mod {p}: no common root and no dependent pencil"
        )
    log.apply(StepKind.FLIPFLOP, flip)
    log.apply(StepKind.PENCIL_ABSORB, absorb)
    return False


def mrl_step(log: StepLog) -> bool:
    """
    Apply the level-lowering moves for the current model, chosen by the
    dimension of the common singular locus of the reductions.

    Returns:
        True when the model has been brought to critical coordinates

    Raises:
        InvariantViolationError: none of the moves applies
    """
    p = log.p
    model: QuadricPairModel = log.model  # type: ignore[assignment]
    q1, q2 = _reductions(model, p)
    common = common_kernel([q1, q2], 4, p)
    if len(common) >= 2:
        return _singular_line(log, common)
    if len(common) == 1:
        _single_singular_point(log, common)
        return False
    ell = common_plane(q1, q2, 4, p)
    if ell is not None:
        log.apply(StepKind.SITUATION1, situation1(ell, p))
        return False
    line = line_on_reduction(q1, q2, p)
    log.apply(StepKind.FLIPFLOP, _moving(line, [2, 3], p).then(flip_flop(p)))
    return False


def minimise_qi(model: QuadricPairModel, p: int) -> MinimisationResult:
    """
    Minimise a quadric intersection at p.

    Each round first absorbs a dependent pencil; then, if the pencil's
    binary quartic allows it, lowers the level directly, and otherwise
    lifts the pencil by one level. Runs that go two lifts without falling
    below their best level are rolled back to it.

    Args:
        model: p-integral nonsingular quadric intersection
        p: Prime

    Returns:
        MinimisationResult

    Raises:
        ArgumentError: the model is not p-integral
        InvariantViolationError: a step misbehaved, or the round cap ran out
    """
    if not model.is_p_integral(p):
        raise ArgumentError(f"quadric intersection is not {p}-integral")
    log = StepLog(model, p)
    cap = CAP_FACTOR * (log.initial_level + 1)
    baseline, mark, lifts = log.level, log.mark(), 0
    for _ in range(cap):
        if log.level < baseline:
            baseline, mark, lifts = log.level, log.mark(), 0
        if log.level == 0:
            return log.result(CertificateKind.LEVEL_ZERO)
        if is_critical(log.model, p):
            return log.result(CertificateKind.CRITICAL)
        current: QuadricPairModel = log.model  # type: ignore[assignment]
        absorb = absorb_matrix(current, p)
        if absorb is not None:
            log.apply(StepKind.PENCIL_ABSORB, absorb)
            continue
        if mrl_hypothesis(current, p):
            if mrl_step(log):
                return log.result(CertificateKind.CRITICAL)
            continue
        if lifts >= LIFT_BOUND:
            log.rollback(mark)
            return log.result(
                CertificateKind.ITERATION_BOUND, f"{lifts} lifts without a level drop"
            )
        lift = quartic_lift(current, p)
        if lift is None:
            log.rollback(mark)
            return log.result(
                CertificateKind.NO_MULTIPLE_ROOT,
                f"pencil quartic has no usable repeated root mod {p}",
            )
        log.apply(StepKind.QUARTIC_LIFT, lift)
        lifts += 1
    raise InvariantViolationError(
        f"quadric minimisation at {p} used all {cap} rounds at level {log.level}"
    )
