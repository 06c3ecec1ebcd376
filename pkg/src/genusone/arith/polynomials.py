"""Exact forms as sympy polynomials over QQ, with fixed monomial orders."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Any

from sympy import ImmutableMatrix, Poly, Rational, Symbol, sympify

from genusone.errors import ArgumentError

X, Z = Symbol("x"), Symbol("z")
X1, X2, X3, X4 = (Symbol(f"x{i}") for i in range(1, 5))
Y = Symbol("y")

BINARY = (X, Z)
TERNARY = (X1, X2, X3)
QUATERNARY = (X1, X2, X3, X4)

Exponents = tuple[int, ...]

QUADRATIC_MONOMIALS: tuple[Exponents, ...] = ((2, 0), (1, 1), (0, 2))
QUARTIC_MONOMIALS: tuple[Exponents, ...] = ((4, 0), (3, 1), (2, 2), (1, 3), (0, 4))
CUBIC_MONOMIALS: tuple[Exponents, ...] = (
    (3, 0, 0),
    (0, 3, 0),
    (0, 0, 3),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (0, 2, 1),
    (1, 0, 2),
    (0, 1, 2),
    (1, 1, 1),
)
QUADRIC_MONOMIALS: tuple[Exponents, ...] = tuple(
    tuple(int(k == i) + int(k == j) for k in range(4))
    for i in range(4)
    for j in range(i, 4)
)


def to_fraction(value: Any) -> Fraction:
    """Convert an int, Fraction, string or sympy rational to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    r = sympify(value)
    if not r.is_Rational:
        raise ArgumentError(f"expected a rational number, got {value!r}")
    return Fraction(int(r.p), int(r.q))


def to_rational(value: Fraction | int) -> Rational:
    """Convert a Fraction or int to a sympy Rational."""
    f = Fraction(value)
    return Rational(f.numerator, f.denominator)


def fractions(values: Iterable[Any]) -> tuple[Fraction, ...]:
    """Tuple of Fractions from any iterable of rationals."""
    return tuple(to_fraction(v) for v in values)


def form(
    coeffs: Sequence[Fraction | int],
    monomials: Sequence[Exponents],
    gens: Sequence[Symbol],
) -> Poly:
    """Build a form from coefficients listed in a fixed monomial order."""
    if len(coeffs) != len(monomials):
        raise ArgumentError(
            f"expected {len(monomials)} coefficients, got {len(coeffs)}"
        )
    terms = {
        mono: to_rational(c) for mono, c in zip(monomials, coeffs, strict=True) if c
    }
    return Poly.from_dict(terms or {monomials[0]: 0}, *gens, domain="QQ")


def coefficients(
    poly: Poly, monomials: Sequence[Exponents], strict: bool = True
) -> tuple[Fraction, ...]:
    """
    Read coefficients of a form in a fixed monomial order.

    Args:
        poly: The form
        monomials: Monomial order
        strict: Raise if the form has a monomial outside the order

    Returns:
        Tuple of Fractions
    """
    terms = {m: c for m, c in poly.as_dict(native=False).items() if c != 0}
    if strict:
        extra = set(terms) - set(monomials)
        if extra:
            raise ArgumentError(f"unexpected monomials {sorted(extra)} in {poly}")
    return tuple(to_fraction(terms.get(m, 0)) for m in monomials)


def as_poly(expr: Any, gens: Sequence[Symbol]) -> Poly:
    """Expand an expression into a Poly over QQ in the given generators."""
    return Poly(expr, *gens, domain="QQ")


def linear_substitution(
    poly: Poly, matrix: ImmutableMatrix, gens: Sequence[Symbol]
) -> Poly:
    """
    Substitute x_j <- sum_i m_ij x_i, i.e. evaluate the form at M^t x.

    Args:
        poly: Form in gens
        matrix: Square matrix with rows and columns indexed by gens
        gens: Generators

    Returns:
        The substituted form
    """
    n = len(gens)
    images = {
        gens[j]: sum(matrix[i, j] * gens[i] for i in range(n)) for j in range(n)
    }
    return as_poly(poly.as_expr().xreplace(images), gens)


def matrix(rows: Sequence[Sequence[Any]]) -> ImmutableMatrix:
    """Exact immutable matrix from nested rationals."""
    return ImmutableMatrix([[to_rational(to_fraction(x)) for x in row] for row in rows])


def matrix_rows(m: ImmutableMatrix) -> list[list[Fraction]]:
    """Nested Fractions from an exact matrix."""
    return [[to_fraction(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def is_integral_matrix(m: ImmutableMatrix) -> bool:
    """True if every entry is an integer."""
    return all(to_fraction(x).denominator == 1 for x in m)


def form_at(poly: Poly, point: Sequence[int]) -> Fraction:
    """Evaluate a form at an integer point."""
    return to_fraction(poly.eval(dict(zip(poly.gens, point, strict=True))))


def diagonal(*values: Any) -> ImmutableMatrix:
    """Exact diagonal matrix."""
    n = len(values)
    return matrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])
