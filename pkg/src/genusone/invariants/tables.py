"""
Generic covariant polynomials, expanded once and evaluated with Fractions.

Ternary cubic Hessians, the cubic invariant c6 and the determinant of a
quadric pencil are polynomials in the model coefficients. They are expanded
over QQ in a sparse sympy ring on first use and cached as term tables, so
evaluating them never goes through symbolic determinants.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import permutations
from typing import Any

from sympy.combinatorics import Permutation
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from genusone.arith.polynomials import (
    CUBIC_MONOMIALS,
    QUADRIC_MONOMIALS,
    QUARTIC_MONOMIALS,
    Exponents,
)
from genusone.errors import InvariantViolationError

Table = tuple[tuple[Fraction, Exponents], ...]


def cubic_a1_to_a4(coeffs: Sequence[Any]) -> tuple[Any, ...]:
    """
    a1, ..., a4 of the Jacobian of a ternary cubic.

    Works for any commutative coefficients: Fractions or generic ring elements.
    """
    a, b, c, a2, a3, b1, b3, c1, c2, m = coeffs
    return (
        m,
        -(a2 * c2 + a3 * b3 + b1 * c1),
        9 * a * b * c
        - (a * b3 * c2 + b * a3 * c1 + c * a2 * b1)
        - (a2 * b3 * c1 + a3 * b1 * c2),
        -3 * (a * b * c1 * c2 + a * c * b1 * b3 + b * c * a2 * a3)
        + a * (b1 * c2 * c2 + b3 * b3 * c1)
        + b * (a2 * c1 * c1 + a3 * a3 * c2)
        + c * (a2 * a2 * b3 + a3 * b1 * b1)
        + a2 * c2 * a3 * b3
        + b1 * c1 * a2 * c2
        + a3 * b3 * b1 * c1,
    )


def _det(rows: Sequence[Sequence[Any]]) -> Any:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        term = Permutation(list(perm)).signature()
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def _fraction(c: Any) -> Fraction:
    return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))


def _split(poly: PolyElement, n: int) -> dict[Exponents, Table]:
    """Group the terms of poly by the exponents of its generators after the n-th."""
    parts: dict[Exponents, list[tuple[Fraction, Exponents]]] = defaultdict(list)
    for monom, coeff in poly.terms():
        parts[tuple(monom[n:])].append((_fraction(coeff), tuple(monom[:n])))
    return {key: tuple(terms) for key, terms in parts.items()}


def evaluate(table: Table, values: Sequence[Fraction]) -> Fraction:
    """Value of a term table at the given coefficients."""
    total = Fraction(0)
    for coeff, exps in table:
        prod: Fraction | int = 1
        for v, e in zip(values, exps, strict=True):
            if e:
                prod *= v**e
        total += coeff * prod
    return total


@dataclass(frozen=True)
class CubicTables:
    """Hessian coefficients in cubic monomial order, and c6."""

    hessian: tuple[Table, ...]
    c6: Table


@cache
def cubic_tables() -> CubicTables:
    names = [f"f{k}" for k in range(len(CUBIC_MONOMIALS))] + ["x", "y", "z"]
    r, *gens = ring(names, QQ)
    f_coeffs, xyz = gens[:-3], gens[-3:]
    f = r.zero
    for c, mono in zip(f_coeffs, CUBIC_MONOMIALS, strict=True):
        f += c * xyz[0] ** mono[0] * xyz[1] ** mono[1] * xyz[2] ** mono[2]
    h = _det([[f.diff(u).diff(v) for v in xyz] for u in xyz])
    n = len(f_coeffs)
    parts = _split(h, n)
    hessian = tuple(parts.get(mono, ()) for mono in CUBIC_MONOMIALS)

    # HH(e1) = 48 c4^2 F(e1) + 16 c6 H(e1), and HH(e1) = det of third partials.
    hx = h.diff(xyz[0])
    hh_x3 = _det([[hx.diff(u).diff(v) for v in xyz] for u in xyz])
    h_x3 = r.from_dict(
        {m: c for m, c in h.terms() if tuple(m[n:]) == CUBIC_MONOMIALS[0]}
    )
    a1, a2, a3, a4 = cubic_a1_to_a4(f_coeffs)
    b2, b4 = a1**2 + 4 * a2, a1 * a3 + 2 * a4
    c4 = b2**2 - 24 * b4
    c6, rem = (hh_x3 - 48 * c4**2 * f_coeffs[0]).div(16 * h_x3)
    if rem:
        raise InvariantViolationError("generic cubic c6 is not a polynomial")
    return CubicTables(hessian, _split(c6, n).get((0, 0, 0), ()))


@cache
def pencil_tables() -> tuple[Table, ...]:
    """det(A x + B z) of a quadric pair, one table per quartic coefficient."""
    size = len(QUADRIC_MONOMIALS)
    names = [f"q{k}" for k in range(2 * size)] + ["x", "z"]
    r, *gens = ring(names, QQ)
    x, z = gens[-2:]
    entries = [[r.zero] * 4 for _ in range(4)]
    for k, mono in enumerate(QUADRIC_MONOMIALS):
        i, j = (t for t in range(4) for _ in range(mono[t]))
        scale = 2 if i == j else 1
        entry = scale * (gens[k] * x + gens[size + k] * z)
        entries[i][j] = entries[j][i] = entry
    parts = _split(_det(entries), 2 * size)
    return tuple(parts.get(mono, ()) for mono in QUARTIC_MONOMIALS)


def hessian_coefficients(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Coefficients of the Hessian of a ternary cubic, in cubic monomial order."""
    return tuple(evaluate(t, coeffs) for t in cubic_tables().hessian)


def cubic_c6(coeffs: Sequence[Fraction]) -> Fraction:
    return evaluate(cubic_tables().c6, coeffs)


def pencil_determinant_coefficients(
    q1: Sequence[Fraction], q2: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    values = tuple(q1) + tuple(q2)
    return tuple(evaluate(t, values) for t in pencil_tables())


def quadric_determinant(q: Sequence[Fraction]) -> Fraction:
    """det of the matrix of second partials of a single quadric."""
    zeros = (Fraction(0),) * len(q)
    return evaluate(pencil_tables()[0], tuple(q) + zeros)
