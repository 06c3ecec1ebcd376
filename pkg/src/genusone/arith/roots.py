"""Complex roots of univariate polynomials by Aberth-Ehrlich iteration."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

import mpmath
import numpy as np

from genusone.errors import ArgumentError, NumericError

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10
MAX_ITERATIONS = 500
DEFAULT_PRECISION = 40


def _normalised(coeffs: Sequence[Fraction | int]) -> list[Fraction]:
    values = [Fraction(c) for c in coeffs]
    while values and values[0] == 0:
        values.pop(0)
    if len(values) < 2:
        raise ArgumentError("polynomial must have degree at least 1")
    scale = max(abs(v) for v in values)
    return [v / scale for v in values]


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    radius = 1.0 + float(np.max(np.abs(coeffs[1:] / coeffs[0])))
    # Shrink towards the geometric mean of the root moduli.
    mean = abs(coeffs[-1] / coeffs[0]) ** (1.0 / n) if coeffs[-1] != 0 else 1.0
    radius = min(radius, max(mean, 1e-3))
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def _aberth_float(coeffs: np.ndarray, max_iter: int) -> tuple[np.ndarray, bool]:
    deriv = np.polyder(coeffs)
    x = _initial_guesses(coeffs)
    n = len(x)
    for _ in range(max_iter):
        pv = np.polyval(coeffs, x)
        dpv = np.polyval(deriv, x)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        denom = dpv - pv * inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = np.where(denom != 0, pv / denom, 0.0)
        x = x - delta
        if not np.all(np.isfinite(x)):
            return x, False
        if np.all(np.abs(delta) <= 1e-14 * np.maximum(1.0, np.abs(x))):
            return x, True
    return x, n == 1


def _aberth_mp(
    coeffs: list[mpmath.mpf], start: Sequence[complex], max_iter: int
) -> list[mpmath.mpc]:
    x = [mpmath.mpc(s) for s in start]
    n = len(x)
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    for _ in range(max_iter):
        moved = mpmath.mpf(0)
        for i in range(n):
            pv, dpv = mpmath.polyval(coeffs, x[i], derivative=True)
            if pv == 0:
                continue
            s = mpmath.fsum(1 / (x[i] - x[j]) for j in range(n) if j != i)
            denom = dpv - pv * s
            if denom == 0:
                continue
            delta = pv / denom
            x[i] -= delta
            moved = max(moved, abs(delta) / max(1, abs(x[i])))
        if moved <= eps:
            break
    return x


def _pair_conjugates(roots: list[mpmath.mpc], tol: mpmath.mpf) -> list[mpmath.mpc]:
    """Symmetrise the root list of a real polynomial under conjugation."""
    real = [mpmath.mpc(r.real, 0) for r in roots if abs(r.imag) <= tol * max(1, abs(r))]
    upper = [r for r in roots if r.imag > tol * max(1, abs(r))]
    lower = [r for r in roots if r.imag < -tol * max(1, abs(r))]
    if len(upper) != len(lower):
        raise NumericError("complex roots of a real polynomial do not pair up")
    paired: list[mpmath.mpc] = []
    for r in upper:
        partner = min(lower, key=lambda s: abs(s - mpmath.conj(r)))
        lower.remove(partner)
        mean = (r + mpmath.conj(partner)) / 2
        paired.extend([mean, mpmath.conj(mean)])
    return real + paired


def poly_roots_mp(
    coeffs: Sequence[Fraction | int],
    precision: int = DEFAULT_PRECISION,
    max_iter: int = MAX_ITERATIONS,
) -> list[mpmath.mpc]:
    """
    All complex roots (with multiplicity) of a polynomial with rational
    coefficients, as mpmath numbers at the current working precision.

    A float64 Aberth run supplies starting values; the same iteration is then
    repeated at ``precision`` decimal digits.

    Args:
        coeffs: Coefficients, highest degree first
        precision: Decimal digits for the polishing pass
        max_iter: Iteration cap for each pass

    Returns:
        List of roots, conjugate-symmetric

    Raises:
        NumericError: the iteration did not converge
    """
    values = _normalised(coeffs)
    floats = np.array([float(v) for v in values], dtype=np.float64)
    start, converged = _aberth_float(floats, max_iter)
    if not converged:
        logger.debug("float Aberth pass did not settle; polishing anyway")
        start = _initial_guesses(floats)

    with mpmath.workdps(precision):
        mp_coeffs = [mpmath.mpf(v.numerator) / v.denominator for v in values]
        roots = _aberth_mp(mp_coeffs, list(start), max_iter)
        scale = mpmath.fsum(abs(c) for c in mp_coeffs)
        for r in roots:
            residual = abs(mpmath.polyval(mp_coeffs, r))
            size = scale * max(1, abs(r)) ** (len(mp_coeffs) - 1)
            if not mpmath.isfinite(residual) or residual > RESIDUAL_TOLERANCE * size:
                raise NumericError(
                    "root finder did not converge "
                    f"(residual {mpmath.nstr(residual, 5)})"
                )
        tol = mpmath.mpf(10) ** (-precision // 2)
        roots = _pair_conjugates(roots, tol)
        return [+r for r in roots]


def poly_roots_complex(
    coeffs: Sequence[Fraction | int],
    precision: int = DEFAULT_PRECISION,
    max_iter: int = MAX_ITERATIONS,
) -> list[complex]:
    """
    All complex roots of a polynomial as Python complex numbers.

    Args:
        coeffs: Coefficients, highest degree first
        precision: Decimal digits used by the polishing pass
        max_iter: Iteration cap

    Returns:
        Roots with multiplicity, conjugate-symmetric
    """
    roots = poly_roots_mp(coeffs, precision, max_iter)
    result = [complex(r) for r in roots]
    if not all(math.isfinite(r.real) and math.isfinite(r.imag) for r in result):
        raise NumericError("root outside float range")
    return result
