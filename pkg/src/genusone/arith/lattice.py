"""LLL reduction of positive definite Gram matrices."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np
from sympy import Matrix

from genusone.errors import ArgumentError, InvariantViolationError

logger = logging.getLogger(__name__)

GRAM_SCALE = 10**24
SYMMETRY_TOLERANCE = 1e-10

IntMatrix = list[list[int]]


def check_gram(gram: np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    """
    Validate a Gram matrix.

    Args:
        gram: Square real matrix

    Returns:
        The matrix as a float64 array

    Raises:
        ArgumentError: not square, not symmetric or not positive definite
    """
    g = np.asarray(gram, dtype=np.float64)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or not np.all(np.isfinite(g)):
        raise ArgumentError(
            f"Gram matrix must be a finite square matrix, got {g.shape}"
        )
    scale = float(np.max(np.abs(g))) or 1.0
    if np.max(np.abs(g - g.T)) > SYMMETRY_TOLERANCE * scale:
        raise ArgumentError("Gram matrix is not symmetric")
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError as e:
        raise ArgumentError("Gram matrix is not positive definite") from e
    return g


def _near(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def _gram_schmidt(b: list[list[int]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """GSO coefficients and squared lengths from an exact Gram matrix."""
    n = len(b)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(b[i][j]) - sum(
                (mu[j][k] * mu[i][k] * bstar[k] for k in range(j)), Fraction(0)
            )
            mu[i][j] = s / bstar[j]
        bstar[i] = Fraction(b[i][i]) - sum(
            (mu[i][j] ** 2 * bstar[j] for j in range(i)), Fraction(0)
        )
        if bstar[i] <= 0:
            raise ArgumentError("scaled Gram matrix is not positive definite")
    return mu, bstar


def _congruence(g0: list[list[int]], u: IntMatrix) -> list[list[int]]:
    n = len(g0)
    idx = range(n)
    gu = [[sum(g0[i][k] * u[k][j] for k in idx) for j in idx] for i in idx]
    return [[sum(u[k][i] * gu[k][j] for k in idx) for j in idx] for i in idx]


def _lll_exact(g0: list[list[int]], delta: Fraction) -> IntMatrix:
    n = len(g0)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    b = g0
    k = 1
    while k < n:
        for j in reversed(range(k)):
            mu, _ = _gram_schmidt(b)
            if abs(mu[k][j]) > Fraction(1, 2):
                q = _near(mu[k][j])
                for r in range(n):
                    u[r][k] -= q * u[r][j]
                b = _congruence(g0, u)
        mu, bstar = _gram_schmidt(b)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            for r in range(n):
                u[r][k], u[r][k - 1] = u[r][k - 1], u[r][k]
            b = _congruence(g0, u)
            k = max(k - 1, 1)
    return u


def is_lll_reduced(gram: Sequence[Sequence[int]], delta: float = 0.99) -> bool:
    """Size-reduction and Lovasz conditions for an exact Gram matrix."""
    b = [[int(x) for x in row] for row in gram]
    mu, bstar = _gram_schmidt(b)
    d = Fraction(repr(delta))
    n = len(b)
    size_reduced = all(
        abs(mu[i][j]) <= Fraction(1, 2) for i in range(n) for j in range(i)
    )
    lovasz = all(
        bstar[k] >= (d - mu[k][k - 1] ** 2) * bstar[k - 1] for k in range(1, n)
    )
    return size_reduced and lovasz


def scale_gram(g: np.ndarray) -> list[list[int]]:
    """Integer Gram matrix: scale to unit largest diagonal, times 10**24, round."""
    top = float(np.max(np.diag(g)))
    scaled = g / top * GRAM_SCALE
    return [[int(round(float(x))) for x in row] for row in scaled]


def lll_gram(
    gram: np.ndarray | Sequence[Sequence[float]], delta: float = 0.99
) -> tuple[IntMatrix, np.ndarray]:
    """
    LLL-reduce a positive definite Gram matrix.

    Args:
        gram: Symmetric positive definite matrix
        delta: Lovasz constant in (0.25, 1)

    Returns:
        Tuple of (U with |det U| = 1, U^t G U); the columns of U are the
        reduced basis
    """
    if not 0.25 < delta < 1:
        raise ArgumentError(f"delta must lie in (0.25, 1), got {delta}")
    g = check_gram(gram)
    g0 = scale_gram(g)
    u = _lll_exact(g0, Fraction(repr(delta)))

    det = Matrix(u).det()
    if abs(det) != 1:
        raise InvariantViolationError(f"LLL transformation has determinant {det}")
    reduced = _congruence(g0, u)
    det_g0 = Matrix(g0).det()
    if Matrix(reduced).det() != det**2 * det_g0:
        raise InvariantViolationError("LLL changed the Gram determinant")

    ua = np.array(u, dtype=np.float64)
    return u, ua.T @ g @ ua
