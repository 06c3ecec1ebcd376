"""Quadratic forms over F_p: kernels, linear factors, planes and lines.

A form in n variables is a dict {(i, j): c} over i <= j, so that the same
code serves odd p and p = 2, where the kernel of Q is the common zero set
of Q and all of its partial derivatives.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations

from sympy import Matrix, Poly, symbols

from genusone.arith.finite_field import (
    IntMatrix,
    binary_form_roots,
    gf_intersect,
    gf_inverse,
    gf_kernel,
    sl_lift_at,
)
from genusone.errors import InvariantViolationError

QuadraticForm = dict[tuple[int, int], int]
Vector = list[int]

_S, _T = symbols("s t")


def pairs(n: int) -> list[tuple[int, int]]:
    """Index pairs i <= j in the standard monomial order."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def from_coefficients(values: Sequence[Fraction], n: int, p: int) -> QuadraticForm:
    """Reduce p-integral coefficients (ordered by pairs(n)) mod p."""
    return {
        ij: c.numerator * pow(c.denominator, -1, p) % p
        for ij, c in zip(pairs(n), values, strict=True)
    }


def to_coefficients(q: QuadraticForm, n: int) -> list[int]:
    return [q.get(ij, 0) for ij in pairs(n)]


def is_zero(q: QuadraticForm) -> bool:
    return not any(q.values())


def evaluate(q: QuadraticForm, v: Sequence[int], p: int) -> int:
    return sum(c * v[i] * v[j] for (i, j), c in q.items()) % p


def polar(q: QuadraticForm, n: int, p: int) -> IntMatrix:
    """Matrix of second partial derivatives mod p."""
    m = [[0] * n for _ in range(n)]
    for (i, j), c in q.items():
        if i == j:
            m[i][i] = 2 * c % p
        else:
            m[i][j] = m[j][i] = c % p
    return m


def kernel(q: QuadraticForm, n: int, p: int) -> list[Vector]:
    """
    Basis of the kernel of a quadratic form mod p.

    For odd p this is the kernel of the polar matrix. For p = 2 the polar
    kernel W is cut down to the vectors of W where Q vanishes, Q being
    additive on W.
    """
    w = gf_kernel(polar(q, n, p), p)
    if p != 2 or not w:
        return w
    values = [evaluate(q, v, 2) for v in w]
    if not any(values):
        return w
    return [
        [sum(a * v[k] for a, v in zip(combo, w, strict=True)) % 2 for k in range(n)]
        for combo in gf_kernel([values], 2)
    ]


def rank(q: QuadraticForm, n: int, p: int) -> int:
    return n - len(kernel(q, n, p))


def common_kernel(forms: Sequence[QuadraticForm], n: int, p: int) -> list[Vector]:
    """Intersection of the kernels of several forms."""
    basis = kernel(forms[0], n, p)
    for q in forms[1:]:
        basis = gf_intersect(basis, kernel(q, n, p), p)
    return basis


def substitute(
    q: QuadraticForm, u: Sequence[Sequence[int]], p: int
) -> QuadraticForm:
    """
    The form y -> q(U y) mod p, for U an n x m integer matrix.

    With m < n this restricts q to the span of the columns of U.
    """
    m = len(u[0])
    result: QuadraticForm = {}
    for a, b in pairs(m):
        total = 0
        for (i, j), c in q.items():
            if a == b:
                total += c * u[i][a] * u[j][a]
            else:
                total += c * (u[i][a] * u[j][b] + u[i][b] * u[j][a])
        result[(a, b)] = total % p
    return result


def combine(
    a: int, q1: QuadraticForm, b: int, q2: QuadraticForm, p: int
) -> QuadraticForm:
    """a q1 + b q2 mod p."""
    keys = set(q1) | set(q2)
    return {ij: (a * q1.get(ij, 0) + b * q2.get(ij, 0)) % p for ij in keys}


def columns(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix whose columns are the given vectors."""
    return [list(row) for row in zip(*vectors, strict=True)]


def divides(ell: Sequence[int], q: QuadraticForm, n: int, p: int) -> bool:
    """Whether the linear form ell divides q mod p."""
    plane = gf_kernel([list(ell)], p)
    return is_zero(substitute(q, columns(plane), p))


def linear_factors(q: QuadraticForm, n: int, p: int) -> list[Vector]:
    """
    The linear forms over F_p dividing a nonzero form of rank at most 2.

    Returns an empty list for forms of rank 3 or more and for rank 2 forms
    irreducible over F_p.
    """
    ker = kernel(q, n, p)
    r = n - len(ker)
    if r > 2 or r == 0:
        return []
    u = sl_lift_at(ker, list(range(r, n)), p, n)
    moved = substitute(q, u, p)
    inverse = gf_inverse(u, p)
    if r == 1:
        return [inverse[0]]
    binary = [moved.get((0, 0), 0), moved.get((0, 1), 0), moved.get((1, 1), 0)]
    factors = []
    for (xi, eta), _ in binary_form_roots(binary, p):
        factors.append(
            [(eta * a - xi * b) % p for a, b in zip(*inverse[:2], strict=True)]
        )
    return factors


def common_plane(
    q1: QuadraticForm, q2: QuadraticForm, n: int, p: int
) -> Vector | None:
    """A linear form dividing both q1 and q2 mod p, or None."""
    if is_zero(q1) and is_zero(q2):
        return [1] + [0] * (n - 1)
    source, other = (q2, q1) if is_zero(q1) else (q1, q2)
    for ell in linear_factors(source, n, p):
        if divides(ell, other, n, p):
            return ell
    return None


def _rank_two_members(
    q1: QuadraticForm, q2: QuadraticForm, p: int
) -> list[tuple[int, int]]:
    """Candidate pencil members s q1 + t q2 of rank at most 2."""
    if p == 2:
        return [(1, 0), (0, 1), (1, 1)]
    pencil = Matrix(polar(q1, 4, p)) * _S + Matrix(polar(q2, 4, p)) * _T
    for rows in combinations(range(4), 3):
        for cols in combinations(range(4), 3):
            minor = Poly(pencil.extract(list(rows), list(cols)).det(), _S, _T)
            coeffs = [
                int(minor.coeff_monomial(_S ** (3 - k) * _T**k)) % p for k in range(4)
            ]
            if any(coeffs):
                return [root for root, _ in binary_form_roots(coeffs, p)]
    return [(1, 0), (0, 1), (1, 1)]


def line_on_reduction(q1: QuadraticForm, q2: QuadraticForm, p: int) -> list[Vector]:
    """
    A line over F_p on {q1 = q2 = 0} in P^3, for a pair without common
    kernel whose pencil contains a rank 2 member.

    The rank 2 member splits into two planes; on one of them the other
    generator of the pencil is the square of a linear form, whose zero set
    is the line.

    Returns:
        Two vectors spanning the line

    Raises:
        InvariantViolationError: no such line exists
    """
    for s, t in _rank_two_members(q1, q2, p):
        member = combine(s, q1, t, q2, p)
        if is_zero(member) or rank(member, 4, p) != 2:
            continue
        other = q1 if t % p else q2
        for ell in linear_factors(member, 4, p):
            plane = gf_kernel([ell], p)
            restricted = substitute(other, columns(plane), p)
            ker = kernel(restricted, 3, p)
            if len(ker) == 2:
                return [
                    [sum(k[c] * plane[c][i] for c in range(3)) % p for i in range(4)]
                    for k in ker
                ]
    raise InvariantViolationError(f"no line over F_{p} on the reduction")

