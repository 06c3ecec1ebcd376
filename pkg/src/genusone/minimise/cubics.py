"""Minimisation of ternary cubics at a prime."""

from __future__ import annotations

from collections.abc import Iterator
from fractions import Fraction

import numpy as np

from genusone.arith.finite_field import Point, sl_lift_at
from genusone.arith.integers import vp_all
from genusone.arith.polynomials import CUBIC_MONOMIALS, diagonal, matrix
from genusone.config import RunConfig
from genusone.errors import ArgumentError, InvariantViolationError
from genusone.minimise.critical import is_critical
from genusone.minimise.quartics import residue
from genusone.minimise.steps import (
    CertificateKind,
    MinimisationResult,
    StepKind,
    StepLog,
)
from genusone.models.genus_one import CubicModel
from genusone.models.transformations import CubicTransformation

MOVE_BOUND = 4
CHUNK = 1 << 20


def _gradient_terms(coeffs: list[int]) -> list[list[tuple[int, tuple[int, ...]]]]:
    """Terms (coefficient, exponents) of F and of its three partials."""
    terms: list[list[tuple[int, tuple[int, ...]]]] = [[], [], [], []]
    for c, exps in zip(coeffs, CUBIC_MONOMIALS, strict=True):
        if not c:
            continue
        terms[0].append((c, exps))
        for k in range(3):
            if exps[k]:
                lowered = tuple(e - int(i == k) for i, e in enumerate(exps))
                terms[k + 1].append((c * exps[k], lowered))
    return terms


def _vanishing(
    points: np.ndarray, terms: list[list[tuple[int, tuple[int, ...]]]], p: int
) -> np.ndarray:
    """Mask of points (rows) where F and its partials vanish mod p."""
    powers = [[np.ones(len(points), dtype=np.int64)] for _ in range(3)]
    for k in range(3):
        for _ in range(3):
            powers[k].append(powers[k][-1] * points[:, k] % p)
    mask = np.ones(len(points), dtype=bool)
    for poly in terms:
        value = np.zeros(len(points), dtype=np.int64)
        for c, (i, j, k) in poly:
            term = powers[0][i] * powers[1][j] % p * powers[2][k] % p
            value = (value + c % p * term) % p
        mask &= value == 0
        if not mask.any():
            break
    return mask


def _chunks(p: int) -> Iterator[np.ndarray]:
    """P^2(F_p) as blocks of rows (0:0:1), (0:1:z), (1:y:z)."""
    yield np.array([[0, 0, 1]], dtype=np.int64)
    yield np.column_stack(
        [np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64), np.arange(p)]
    )
    rows = max(1, CHUNK // p)
    zs = np.arange(p, dtype=np.int64)
    for start in range(0, p, rows):
        ys = np.arange(start, min(p, start + rows), dtype=np.int64)
        yy, zz = np.meshgrid(ys, zs, indexing="ij")
        yield np.column_stack(
            [np.ones(yy.size, dtype=np.int64), yy.ravel(), zz.ravel()]
        )


def singular_points(model: CubicModel, p: int, scan_limit: int) -> list[Point]:
    """
    Points of P^2(F_p) where the reduction of F is singular.

    Args:
        model: p-integral cubic
        p: Prime
        scan_limit: Largest prime for which the scan is attempted

    Returns:
        Normalised points (first nonzero coordinate 1)

    Raises:
        ArgumentError: p exceeds scan_limit
    """
    if p > scan_limit:
        raise ArgumentError(
            f"prime {p} too large for degree-3 singular-locus scan (limit {scan_limit})"
        )
    terms = _gradient_terms([residue(c, p) for c in model.coefficients])
    found: list[Point] = []
    for points in _chunks(p):
        mask = _vanishing(points, terms, p)
        found.extend(tuple(int(v) for v in row) for row in points[mask])
    return sorted(found)


def _cross(a: Point, b: Point, p: int) -> Point:
    return (
        (a[1] * b[2] - a[2] * b[1]) % p,
        (a[2] * b[0] - a[0] * b[2]) % p,
        (a[0] * b[1] - a[1] * b[0]) % p,
    )


def point_move(point: Point, p: int) -> CubicTransformation:
    """Move a singular point to (1:0:0), then [p, Diag(1/p, 1, 1)]."""
    u = sl_lift_at([point], [0], p, 3)
    return CubicTransformation(1, matrix(u).T).then(
        CubicTransformation(p, diagonal(Fraction(1, p), 1, 1))
    )


def line_move(
    model: CubicModel, first: Point, second: Point, p: int
) -> CubicTransformation:
    """
    Move the line through two singular points to z = 0, then apply
    [1/p, Diag(1, 1, p)].

    Raises:
        InvariantViolationError: the square of the line does not divide F mod p
    """
    u = sl_lift_at([first, second], [0, 1], p, 3)
    move = CubicTransformation(1, matrix(u).T)
    moved = move.apply(model)
    low = [
        c
        for c, exps in zip(moved.coefficients, CUBIC_MONOMIALS, strict=True)
        if exps[2] < 2
    ]
    if any(residue(c, p) for c in low):
        line = _cross(first, second, p)
        raise InvariantViolationError(
            f"line {line} through singular points is not a double component mod {p}"
        )
    return move.then(CubicTransformation(Fraction(1, p), diagonal(1, 1, p)))


def minimise_tc(
    model: CubicModel, p: int, config: RunConfig | None = None
) -> MinimisationResult:
    """
    Minimise a ternary cubic at p.

    Args:
        model: p-integral nonsingular cubic
        p: Prime
        config: Supplies the singular-locus scan limit

    Returns:
        MinimisationResult

    Raises:
        ArgumentError: the cubic is not p-integral, or p exceeds the scan limit
        InvariantViolationError: a move produced a non-integral model
    """
    config = config or RunConfig()
    if not model.is_p_integral(p):
        raise ArgumentError(f"cubic is not {p}-integral")
    log = StepLog(model, p)
    moves = 0
    mark = log.mark()
    while True:
        if vp_all(log.model.coefficients, p) >= 1:
            log.apply(StepKind.DIVIDE, CubicTransformation(Fraction(1, p)))
            moves, mark = 0, log.mark()
            continue
        if log.level == 0:
            return log.result(CertificateKind.LEVEL_ZERO)
        if is_critical(log.model, p):
            return log.result(CertificateKind.CRITICAL)
        if moves >= MOVE_BOUND:
            log.rollback(mark)
            return log.result(
                CertificateKind.ITERATION_BOUND, f"{moves} moves without a divide"
            )
        current: CubicModel = log.model  # type: ignore[assignment]
        points = singular_points(current, p, config.scan_limit)
        if not points:
            log.rollback(mark)
            return log.result(
                CertificateKind.NO_MULTIPLE_ROOT, f"reduction mod {p} is nonsingular"
            )
        if len(points) == 1:
            log.apply(StepKind.MOVE_POINT, point_move(points[0], p))
        else:
            log.apply(StepKind.MOVE_LINE, line_move(current, points[0], points[1], p))
        moves += 1
