"""
Reduction covariants: positive definite Gram matrices attached to genus one
models so that a model is reduced when its covariant is LLL reduced.

Convention: if F' = F o W (old coordinates = W * new) then
phi(F') is proportional to W^t phi(F) W.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import mpmath
import numpy as np
from sympy import ImmutableMatrix, Poly

from genusone.arith.polynomials import CUBIC_MONOMIALS, X, Z, matrix, to_fraction
from genusone.arith.roots import DEFAULT_PRECISION, poly_roots_mp
from genusone.errors import ArgumentError, InvariantViolationError, NumericError
from genusone.invariants.core import require_nonsingular
from genusone.invariants.forms import binary_quartic_IJ, hessian, pencil_determinant
from genusone.models.genus_one import CubicModel, QuadricPairModel
from genusone.models.transformations import (
    CubicTransformation,
    QuadricTransformation,
    QuarticTransformation,
)

logger = logging.getLogger(__name__)

CovariantGram = np.ndarray
CovariantMethod = Literal["torsion", "roots"]

RANK_ONE_TOLERANCE = 1e-6
SHUFFLE_ATTEMPTS = 50


@dataclass(frozen=True)
class TorsionMatrix:
    """Action of a torsion point T = (x_T, y_T) of the Jacobian on P^(n-1)."""

    point: tuple[complex, complex]
    matrix: np.ndarray
    det: complex


def _mp(value: Fraction | int) -> mpmath.mpf:
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def _to_numpy(m: mpmath.matrix) -> np.ndarray:
    return np.array(
        [[complex(m[i, j]) for j in range(m.cols)] for i in range(m.rows)],
        dtype=np.complex128,
    )


def _mp_matrix(m: ImmutableMatrix) -> mpmath.matrix:
    return mpmath.matrix(
        [[_mp(to_fraction(m[i, j])) for j in range(m.cols)] for i in range(m.rows)]
    )


def normalise_gram(g: np.ndarray) -> CovariantGram:
    """Symmetrise a real matrix and scale it to unit largest entry."""
    g = np.real(np.asarray(g, dtype=np.complex128))
    g = (g + g.T) / 2
    top = float(np.max(np.abs(g)))
    if top == 0:
        raise NumericError("reduction covariant vanished")
    return g / top


def _real_gram(m: mpmath.matrix) -> CovariantGram:
    return normalise_gram(_to_numpy(m))


def _shuffle(rng: np.random.Generator, n: int) -> list[list[int]]:
    """A random unimodular matrix with small entries."""
    while True:
        u = rng.integers(-2, 3, size=(n, n))
        if round(abs(np.linalg.det(u))) == 1:
            return [[int(v) for v in row] for row in u]


# Degree 2


def _leading_nonzero(
    quartic: Sequence[Fraction],
) -> tuple[tuple[Fraction, ...], list[list[int]]]:
    """F o W with a nonzero x^4 coefficient, W = [[1, 0], [k, 1]]."""
    quartic = tuple(Fraction(c) for c in quartic)
    if quartic[0]:
        return quartic, [[1, 0], [0, 1]]
    for k in range(1, 6):
        w = [[1, 0], [k, 1]]
        shifted = QuarticTransformation(1, (0, 0, 0), matrix(w).T).apply_quartic(
            quartic
        )
        if shifted[0]:
            return shifted, w
    raise ArgumentError("binary quartic vanishes identically")


def _undo(g: np.ndarray, w: list[list[int]]) -> np.ndarray:
    w_inv = np.linalg.inv(np.array(w, dtype=np.float64))
    return w_inv.T @ g @ w_inv


def covariant2_roots(
    quartic: Sequence[Fraction], precision: int = DEFAULT_PRECISION
) -> CovariantGram:
    """
    The covariant sum over the roots theta of f(X) = F(X, 1) of
    |f'(theta)|^-1 (x - theta z)(x - conj(theta) z).

    Args:
        quartic: Coefficients (a, b, c, d, e) of a nonsingular F
        precision: Decimal digits for the root finder

    Returns:
        2 x 2 Gram matrix scaled to unit largest entry
    """
    shifted, w = _leading_nonzero(quartic)
    with mpmath.workdps(precision):
        coeffs = [_mp(c) for c in shifted]
        deriv = [coeffs[k] * (4 - k) for k in range(4)]
        g = mpmath.zeros(2, 2)
        for theta in poly_roots_mp(shifted, precision):
            weight = 1 / abs(mpmath.polyval(deriv, theta))
            g[0, 0] += weight
            g[0, 1] -= weight * mpmath.re(theta)
            g[1, 1] += weight * abs(theta) ** 2
        g[1, 0] = g[0, 1]
        gram = _to_numpy(g).real
    return normalise_gram(_undo(gram, w))


def _a_matrix(coeffs: list[mpmath.mpf], phi: mpmath.mpc) -> mpmath.matrix:
    a, b, c, d, _ = coeffs
    alpha1 = 4 * a * phi - 8 * a * c + 3 * b**2
    alpha2 = b * phi - 6 * a * d + b * c
    alpha3 = (-2 * phi**2 + 2 * c * phi - 9 * b * d + 4 * c**2) / 3
    return mpmath.matrix([[alpha1, alpha2], [alpha2, alpha3]])


def _resolvent_roots(
    quartic: Sequence[Fraction], precision: int
) -> list[mpmath.mpc]:
    i, j = binary_quartic_IJ(quartic)
    return poly_roots_mp([1, 0, -3 * i, j], precision)


def _torsion_mp(
    quartic: Sequence[Fraction], precision: int
) -> list[tuple[mpmath.mpc, mpmath.matrix]]:
    """
    Pairs (phi, M_T) for the nontrivial 2-torsion points, M_T = W A_phi.

    A_phi vanishes identically when alpha_1(phi) = 0; that M_T is then the
    product of the other two. Call inside the working precision.
    """
    w = mpmath.matrix([[0, -1], [1, 0]])
    coeffs = [_mp(c) for c in quartic]
    roots = _resolvent_roots(quartic, precision)
    mats = [w * _a_matrix(coeffs, phi) for phi in roots]
    norms = [mpmath.mnorm(m, 1) for m in mats]
    tiny = max(norms) * mpmath.mpf(10) ** (-(precision // 2))
    vanishing = [k for k, norm in enumerate(norms) if norm <= tiny]
    if len(vanishing) > 1:
        raise InvariantViolationError("A_phi vanishes at more than one root")
    for k in vanishing:
        i, j = (t for t in range(len(mats)) if t != k)
        mats[k] = mats[i] * mats[j]
        logger.debug("A_phi vanishes at phi=%s, using the product", roots[k])
    return list(zip(roots, mats, strict=True))


def torsion_matrices2(
    quartic: Sequence[Fraction], precision: int = DEFAULT_PRECISION
) -> list[TorsionMatrix]:
    """
    Actions W A_phi of the three nontrivial 2-torsion points on P^1, one
    per root phi of the resolvent cubic.
    """
    with mpmath.workdps(precision):
        return [
            TorsionMatrix((complex(phi), 0j), _to_numpy(m), complex(mpmath.det(m)))
            for phi, m in _torsion_mp(quartic, precision)
        ]


def covariant2_torsion(
    quartic: Sequence[Fraction], precision: int = DEFAULT_PRECISION
) -> CovariantGram:
    """
    The degree 2 covariant from the 2-torsion of the Jacobian.

    For positive discriminant it is +-A_phi for the unique real root phi
    of the resolvent cubic with det A_phi > 0. For negative discriminant it
    is the average I + sum |det M_T|^-1 conj(M_T)^t M_T over E[2].

    Raises:
        InvariantViolationError: the root selection is not unique
    """
    i, j = binary_quartic_IJ(quartic)
    with mpmath.workdps(precision):
        coeffs = [_mp(c) for c in quartic]
        if 4 * i**3 - j**2 > 0:
            a_mats = [
                _a_matrix(coeffs, mpmath.re(phi))
                for phi in _resolvent_roots(quartic, precision)
            ]
            scale = max(mpmath.mnorm(a, 1) for a in a_mats) ** 2
            tiny = scale * mpmath.mpf(10) ** (-(precision // 2))
            candidates = [a for a in a_mats if mpmath.det(a) > tiny]
            if len(candidates) != 1:
                raise InvariantViolationError(
                    f"{len(candidates)} resolvent roots with det A_phi > 0"
                )
            a_phi = candidates[0]
            sign = 1 if a_phi[0, 0] > 0 else -1
            return _real_gram(a_phi * sign)
        g = mpmath.eye(2)
        for _, m in _torsion_mp(quartic, precision):
            g += m.H * m / abs(mpmath.det(m))
        return _real_gram(g)


def covariant2(
    quartic: Sequence[Fraction],
    method: CovariantMethod = "roots",
    precision: int = DEFAULT_PRECISION,
) -> CovariantGram:
    """Degree 2 reduction covariant by the chosen method."""
    if method == "torsion":
        return covariant2_torsion(quartic, precision)
    if method == "roots":
        return covariant2_roots(quartic, precision)
    raise ArgumentError(f"unknown covariant method {method!r}")


# Degree 3


def _syzygetic(
    f: tuple[Fraction, ...], h: tuple[Fraction, ...], x_t: mpmath.mpc
) -> dict[str, mpmath.mpc]:
    """Labelled coefficients of 2 x_T F - 3 H."""
    c = [2 * x_t * _mp(fk) - 3 * _mp(hk) for fk, hk in zip(f, h, strict=True)]
    return {
        "r": c[0],
        "s3": c[1],
        "t3": c[2],
        "s1": c[3],
        "t1": c[4],
        "s2": c[5],
        "v": c[6],
        "t2": c[7],
        "w": c[8],
        "u": c[9],
    }


def _m_t(t: dict[str, mpmath.mpc], y: mpmath.mpc) -> mpmath.matrix:
    """M_T = r A + 2 y_T B, unnormalised."""
    r, s1, s2, s3 = t["r"], t["s1"], t["s2"], t["s3"]
    t1, t2, t3 = t["t1"], t["t2"], t["t3"]
    u, v, w = t["u"], t["v"], t["w"]
    a = mpmath.matrix(3, 3)
    a[0, 0] = (
        -12 * r * s2 * w - 36 * r * s3 * t2 + 12 * r * u * v + 4 * s1**2 * w
        + 4 * s1 * s2 * t2 - 8 * s1 * t1 * v - s1 * u**2 + 12 * s3 * t1**2
    )
    a[0, 1] = (
        -54 * r * s3 * w + 18 * r * v**2 + 6 * s1 * s2 * w - 3 * s1 * u * v
        - 6 * s2 * t1 * v + 9 * s3 * t1 * u
    )
    a[0, 2] = (
        -81 * r * s3 * t3 + 9 * r * v * w + 9 * s1 * s2 * t3 - 3 * s1 * t2 * v
        - 3 * s2 * t1 * w + 9 * s3 * t1 * t2
    )
    a[1, 0] = (
        36 * r * s2 * t2 - 9 * r * u**2 - 12 * s1**2 * t2 + 12 * s1 * t1 * u
        - 12 * s2 * t1**2
    )
    a[1, 1] = (
        24 * r * s2 * w + 18 * r * s3 * t2 - 15 * r * u * v - 8 * s1**2 * w
        - 2 * s1 * s2 * t2 + 10 * s1 * t1 * v + 2 * s1 * u**2 - 3 * s2 * t1 * u
        - 6 * s3 * t1**2
    )
    a[1, 2] = (
        54 * r * s2 * t3 - 9 * r * u * w - 18 * s1**2 * t3 + 6 * s1 * t1 * w
        + 3 * s1 * t2 * u - 6 * s2 * t1 * t2
    )
    a[2, 1] = (
        -18 * r * s2 * v + 27 * r * s3 * u + 6 * s1**2 * v - 3 * s1 * s2 * u
        - 18 * s1 * s3 * t1 + 6 * s2**2 * t1
    )
    a[2, 2] = (
        -12 * r * s2 * w + 18 * r * s3 * t2 + 3 * r * u * v + 4 * s1**2 * w
        - 2 * s1 * s2 * t2 - 2 * s1 * t1 * v - s1 * u**2 + 3 * s2 * t1 * u
        - 6 * s3 * t1**2
    )
    b = mpmath.matrix(3, 3)
    b[0, 0] = s1 * u - 2 * s2 * t1
    b[0, 1] = s1 * v - 3 * s3 * t1
    b[0, 2] = s1 * w - 4 * s2 * t2 - t1 * v + u**2
    b[1, 0] = -3 * r * u + 2 * s1 * t1
    b[1, 1] = -3 * r * v + s2 * t1
    b[1, 2] = -3 * r * w + s1 * t2
    b[2, 0] = 6 * r * s2 - 2 * s1**2
    b[2, 1] = 9 * r * s3 - s1 * s2
    b[2, 2] = 3 * r * v - s1 * u + s2 * t1
    b = b * r
    b[0, 2] += s1**2 * t2 - s1 * t1 * u + s2 * t1**2
    return a * r + b * (2 * y)


def _negligible(m: mpmath.matrix, other: mpmath.matrix) -> bool:
    """Whether m vanishes next to other."""
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps // 2)
    return mpmath.mnorm(m, 1) <= eps * mpmath.mnorm(other, 1)


def _cubic_value(coeffs: Sequence[mpmath.mpf], point: mpmath.matrix) -> mpmath.mpc:
    x, y, z = point[0], point[1], point[2]
    return mpmath.fsum(
        c * x ** e[0] * y ** e[1] * z ** e[2]
        for c, e in zip(coeffs, CUBIC_MONOMIALS, strict=True)
    )


def _point_action(
    m: mpmath.matrix, coeffs: Sequence[mpmath.mpf], rng: np.random.Generator
) -> mpmath.matrix:
    """
    The candidate (m or its transpose) with F(M v) proportional to F(v),
    checked at random complex points in the working precision.

    Raises:
        NumericError: neither candidate preserves F
    """
    points = [
        mpmath.matrix([mpmath.mpc(float(re), float(im)) for re, im in sample])
        for sample in rng.normal(size=(6, 3, 2))
    ]
    base = [_cubic_value(coeffs, p) for p in points]
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 3))
    for candidate in (m, m.T):
        ratios = [
            _cubic_value(coeffs, candidate * p) / b
            for p, b in zip(points, base, strict=True)
        ]
        spread = max(abs(r - ratios[0]) for r in ratios)
        if spread <= tol * abs(ratios[0]):
            return candidate
    raise NumericError("torsion matrix does not preserve the cubic")


def _working_cubic(
    model: CubicModel, x_roots: list[mpmath.mpc], rng: np.random.Generator
) -> tuple[CubicModel, list[list[int]]]:
    """The cubic F o S for a unimodular S making every T(1, 0, 0) nonzero."""
    identity = [[int(i == j) for j in range(3)] for i in range(3)]
    candidates = [identity] + [_shuffle(rng, 3) for _ in range(SHUFFLE_ATTEMPTS)]
    for s in candidates:
        working = CubicTransformation(1, matrix(s).T).apply(model)
        h = hessian(working).coefficients
        f = working.coefficients
        scale = max(abs(_mp(c)) for c in f + h)
        tol = scale * mpmath.mpf(10) ** -8
        if all(
            abs(_syzygetic(f, h, x_t)["r"]) > tol * max(1, abs(x_t)) for x_t in x_roots
        ):
            if s is not identity:
                logger.debug("shuffled cubic coordinates by %s", s)
            return working, s
    raise NumericError("no coordinate change avoids the syzygetic triangles")


def cubic_working_precision(model: CubicModel, precision: int) -> int:
    """Digits for the 3-torsion of a cubic: six more per digit of its largest
    coefficient."""
    top = max(abs(c) for c in model.coefficients)
    return precision + 6 * len(str(max(int(top), 1)))


def _torsion3_mp(
    model: CubicModel, precision: int, seed: int
) -> list[tuple[tuple[mpmath.mpc, mpmath.mpc], mpmath.matrix]]:
    """Points T and their determinant one actions M_T. Call inside workdps."""
    inv = require_nonsingular(model)
    c4, c6 = inv.c4, inv.c6
    rng = np.random.default_rng(seed)
    result = []
    x_roots = poly_roots_mp([3, 0, -162 * c4, -648 * c6, -729 * c4**2], precision)
    working, s = _working_cubic(model, x_roots, rng)
    f = working.coefficients
    h = hessian(working).coefficients
    f_mp = [_mp(c) for c in f]
    s_mp = mpmath.matrix(s)
    s_inv = mpmath.inverse(s_mp)
    for x_t in x_roots:
        y_t = mpmath.sqrt(x_t**3 - 27 * _mp(c4) * x_t - 54 * _mp(c6))
        t = _syzygetic(f, h, x_t)
        plus, minus = _m_t(t, y_t), _m_t(t, -y_t)
        if mpmath.mnorm(plus, 1) == 0 and mpmath.mnorm(minus, 1) == 0:
            raise NumericError(f"M_T and M_-T both vanish at x_T = {complex(x_t)}")
        if _negligible(plus, minus):
            plus = mpmath.inverse(minus)
        elif _negligible(minus, plus):
            minus = mpmath.inverse(plus)
        for y, raw in ((y_t, plus), (-y_t, minus)):
            m = raw / mpmath.root(mpmath.det(raw), 3)
            action = _point_action(m, f_mp, rng)
            result.append(((x_t, y), s_mp * action * s_inv))
    return result


def torsion_matrices3(
    model: CubicModel, precision: int = DEFAULT_PRECISION, seed: int = 0
) -> list[TorsionMatrix]:
    """
    Actions of the eight nontrivial 3-torsion points on P^2, each scaled to
    determinant 1.

    Args:
        model: Nonsingular ternary cubic
        precision: Decimal digits, raised with the size of the coefficients
        seed: Seed for coordinate shuffles and the action check

    Returns:
        Eight TorsionMatrix entries, T and -T adjacent

    Raises:
        NumericError: both M_T and M_-T vanish, or no matrix preserves F
    """
    digits = cubic_working_precision(model, precision)
    with mpmath.workdps(digits):
        return [
            TorsionMatrix(
                (complex(x_t), complex(y_t)), _to_numpy(m), complex(mpmath.det(m))
            )
            for (x_t, y_t), m in _torsion3_mp(model, digits, seed)
        ]


def covariant3(
    model: CubicModel, precision: int = DEFAULT_PRECISION, seed: int = 0
) -> CovariantGram:
    """
    The average of |det M_T|^(-2/3) conj(M_T)^t M_T over the 3-torsion,
    the identity included.
    """
    digits = cubic_working_precision(model, precision)
    with mpmath.workdps(digits):
        g = mpmath.eye(3)
        for _, m in _torsion3_mp(model, digits, seed):
            g += m.H * m / abs(mpmath.det(m)) ** (mpmath.mpf(2) / 3)
        return _real_gram(g)


# Degree 4


def _pencil_with_ends(
    model: QuadricPairModel, rng: np.random.Generator
) -> tuple[QuadricPairModel, tuple[Fraction, ...]]:
    """A pencil basis in which F = det(A x + B z) has a, e both nonzero."""
    quartic = pencil_determinant(model)
    if quartic[0] and quartic[4]:
        return model, quartic
    for _ in range(SHUFFLE_ATTEMPTS):
        changed = QuadricTransformation(matrix(_shuffle(rng, 2))).apply(model)
        quartic = pencil_determinant(changed)
        if quartic[0] and quartic[4]:
            return changed, quartic
    raise NumericError("no pencil basis with nonzero end coefficients")


def _adjugate_coefficients(
    model: QuadricPairModel,
) -> tuple[ImmutableMatrix, ...]:
    """Coefficients of x^3, x^2 z, x z^2, z^3 in adj(adj(A) x + adj(B) z)."""
    a, b = model.matrices()
    adj = (a.adjugate() * X + b.adjugate() * Z).adjugate()
    monomials = (X**3, X**2 * Z, X * Z**2, Z**3)
    return tuple(
        matrix(
            [
                [
                    to_fraction(Poly(adj[i, j], X, Z).coeff_monomial(mono))
                    for j in range(4)
                ]
                for i in range(4)
            ]
        )
        for mono in monomials
    )


def covariant4(
    model: QuadricPairModel, precision: int = DEFAULT_PRECISION, seed: int = 0
) -> CovariantGram:
    """
    The degree 4 covariant sum over the roots theta_j of F(X, 1) of
    |alpha_j| / |f'(theta_j)|^(1/2) |G_j|^2, where alpha_j G_j^2 is the
    rank one quadric e/theta A + M1 + theta M2 + a theta^2 B.

    The pencil basis may be changed first; the covariant does not depend
    on it.

    Raises:
        InvariantViolationError: the adjugate expansion is inconsistent
        NumericError: a quadric expected to have rank one does not
    """
    require_nonsingular(model)
    rng = np.random.default_rng(seed)
    working, quartic = _pencil_with_ends(model, rng)
    a_frac, e_frac = quartic[0], quartic[4]
    big_a, big_b = working.matrices()
    cubic, x2z, xz2, cubic_z = _adjugate_coefficients(working)
    if cubic != big_a * a_frac**2 or cubic_z != big_b * e_frac**2:
        raise InvariantViolationError("adj(adj(A) x + adj(B) z) has wrong end terms")
    with mpmath.workdps(precision):
        a, e = _mp(a_frac), _mp(e_frac)
        ma, mb = _mp_matrix(big_a), _mp_matrix(big_b)
        m1, m2 = _mp_matrix(x2z) / a, _mp_matrix(xz2) / e
        coeffs = [_mp(c) for c in quartic]
        deriv = [coeffs[k] * (4 - k) for k in range(4)]
        g = mpmath.zeros(4, 4)
        for theta in poly_roots_mp(quartic, precision):
            s = ma * (e / theta) + m1 + m2 * theta + mb * (a * theta**2)
            singular = np.linalg.svd(_to_numpy(s), compute_uv=False)
            if singular[1] > RANK_ONE_TOLERANCE * singular[0]:
                raise NumericError(
                    f"pencil quadric at theta = {complex(theta):.6g} is not rank one "
                    f"(singular values {singular[0]:.3e}, {singular[1]:.3e})"
                )
            k = 0
            for i in range(1, 4):
                if abs(s[i, i]) > abs(s[k, k]):
                    k = i
            alpha = s[k, k]
            column = [s[i, k] / alpha for i in range(4)]
            weight = abs(alpha) / mpmath.sqrt(abs(mpmath.polyval(deriv, theta)))
            for i in range(4):
                for j in range(4):
                    g[i, j] += weight * mpmath.conj(column[i]) * column[j]
        return _real_gram(g)


__all__ = [
    "CovariantGram",
    "TorsionMatrix",
    "covariant2",
    "covariant2_roots",
    "covariant2_torsion",
    "covariant3",
    "covariant4",
    "cubic_working_precision",
    "normalise_gram",
    "torsion_matrices2",
    "torsion_matrices3",
]
