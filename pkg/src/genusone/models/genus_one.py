"""Genus one models of degrees 1 to 4 with exact rational coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, ClassVar

from sympy import ImmutableMatrix, Poly

from genusone.arith.polynomials import (
    BINARY,
    CUBIC_MONOMIALS,
    QUADRATIC_MONOMIALS,
    QUADRIC_MONOMIALS,
    QUARTIC_MONOMIALS,
    QUATERNARY,
    TERNARY,
    coefficients,
    form,
    fractions,
    matrix,
    to_fraction,
)
from genusone.errors import ArgumentError

CUBIC_LABELS = ("a", "b", "c", "a2", "a3", "b1", "b3", "c1", "c2", "m")
QUADRIC_LABELS = ("c11", "c12", "c13", "c14", "c22", "c23", "c24", "c33", "c34", "c44")


def _fixed(values: Any, length: int, name: str) -> tuple[Fraction, ...]:
    result = fractions(values)
    if len(result) != length:
        raise ArgumentError(f"{name} needs {length} coefficients, got {len(result)}")
    return result


def _content(values: tuple[Fraction, ...]) -> Fraction:
    nums = reduce(math.gcd, (v.numerator for v in values), 0)
    dens = reduce(math.lcm, (v.denominator for v in values), 1)
    return Fraction(nums, dens)


class _Coefficients:
    """Shared integrality queries over the flat coefficient tuple."""

    degree: ClassVar[int]

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        raise NotImplementedError

    def is_integral(self) -> bool:
        """True if every coefficient is an integer."""
        return all(c.denominator == 1 for c in self.coefficients)

    def is_p_integral(self, p: int) -> bool:
        """True if no coefficient has p in its denominator."""
        return all(c.denominator % p for c in self.coefficients)

    def content(self) -> Fraction:
        """gcd of numerators over lcm of denominators (0 for the zero model)."""
        return _content(self.coefficients)

    def is_zero(self) -> bool:
        """True if every coefficient vanishes."""
        return not any(self.coefficients)


@dataclass(frozen=True)
class WeierstrassModel(_Coefficients):
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    degree: ClassVar[int] = 1

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_coefficients(cls, values: Any) -> WeierstrassModel:
        """Build from [a1, a2, a3, a4, a6]."""
        return cls(*_fixed(values, 5, "Weierstrass model"))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)


@dataclass(frozen=True)
class BinaryQuarticModel(_Coefficients):
    """Generalised binary quartic y^2 + P(x, z) y = Q(x, z)."""

    p: tuple[Fraction, ...] = (Fraction(0),) * 3
    q: tuple[Fraction, ...] = (Fraction(0),) * 5

    degree: ClassVar[int] = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _fixed(self.p, 3, "P"))
        object.__setattr__(self, "q", _fixed(self.q, 5, "Q"))

    @classmethod
    def from_coefficients(cls, values: Any) -> BinaryQuarticModel:
        """Build from [l, m, n, a, b, c, d, e]."""
        flat = _fixed(values, 8, "generalised binary quartic")
        return cls(flat[:3], flat[3:])

    @classmethod
    def from_quartic(cls, quartic: Any) -> BinaryQuarticModel:
        """The model y^2 = F(x, z)."""
        return cls((0, 0, 0), quartic)

    @classmethod
    def from_forms(cls, p: Poly, q: Poly) -> BinaryQuarticModel:
        """Build from sympy forms in (x, z)."""
        return cls(
            coefficients(p, QUADRATIC_MONOMIALS), coefficients(q, QUARTIC_MONOMIALS)
        )

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self.p + self.q

    def p_form(self) -> Poly:
        """P as a form in (x, z)."""
        return form(self.p, QUADRATIC_MONOMIALS, BINARY)

    def q_form(self) -> Poly:
        """Q as a form in (x, z)."""
        return form(self.q, QUARTIC_MONOMIALS, BINARY)

    def quartic(self) -> tuple[Fraction, ...]:
        """Coefficients of P^2 + 4Q."""
        f = self.p_form() ** 2 + 4 * self.q_form()
        return coefficients(f, QUARTIC_MONOMIALS)


@dataclass(frozen=True)
class CubicModel(_Coefficients):
    """Ternary cubic.

    Coefficient order: x^3, y^3, z^3, x^2y, x^2z, xy^2, y^2z, xz^2, yz^2, xyz.
    """

    coeffs: tuple[Fraction, ...] = (Fraction(0),) * 10

    degree: ClassVar[int] = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _fixed(self.coeffs, 10, "ternary cubic"))

    @classmethod
    def from_coefficients(cls, values: Any) -> CubicModel:
        return cls(tuple(values))

    @classmethod
    def from_form(cls, poly: Poly) -> CubicModel:
        """Build from a sympy form in (x1, x2, x3)."""
        return cls(coefficients(poly, CUBIC_MONOMIALS))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self.coeffs

    def __getitem__(self, label: str) -> Fraction:
        return self.coeffs[CUBIC_LABELS.index(label)]

    def form(self) -> Poly:
        """The cubic as a form in (x1, x2, x3)."""
        return form(self.coeffs, CUBIC_MONOMIALS, TERNARY)


def quadric_matrix(coeffs: tuple[Fraction, ...]) -> ImmutableMatrix:
    """Matrix of second partial derivatives of sum c_ij x_i x_j."""
    rows = [[Fraction(0)] * 4 for _ in range(4)]
    for mono, c in zip(QUADRIC_MONOMIALS, coeffs, strict=True):
        idx = [k for k in range(4) for _ in range(mono[k])]
        i, j = idx
        if i == j:
            rows[i][i] = 2 * c
        else:
            rows[i][j] = rows[j][i] = c
    return matrix(rows)


def quadric_from_matrix(m: ImmutableMatrix) -> tuple[Fraction, ...]:
    """Inverse of quadric_matrix."""
    result = []
    for i in range(4):
        for j in range(i, 4):
            value = to_fraction(m[i, j])
            result.append(value / 2 if i == j else value)
    return tuple(result)


@dataclass(frozen=True)
class QuadricPairModel(_Coefficients):
    """Intersection of two quadrics Q1 = Q2 = 0 in P^3, c_ij for i <= j."""

    q1: tuple[Fraction, ...] = (Fraction(0),) * 10
    q2: tuple[Fraction, ...] = (Fraction(0),) * 10

    degree: ClassVar[int] = 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "q1", _fixed(self.q1, 10, "Q1"))
        object.__setattr__(self, "q2", _fixed(self.q2, 10, "Q2"))

    @classmethod
    def from_coefficients(cls, values: Any) -> QuadricPairModel:
        flat = _fixed(values, 20, "quadric intersection")
        return cls(flat[:10], flat[10:])

    @classmethod
    def from_forms(cls, q1: Poly, q2: Poly) -> QuadricPairModel:
        """Build from sympy forms in (x1, x2, x3, x4)."""
        return cls(
            coefficients(q1, QUADRIC_MONOMIALS), coefficients(q2, QUADRIC_MONOMIALS)
        )

    @classmethod
    def from_matrices(cls, a: Any, b: Any) -> QuadricPairModel:
        """Build from the two matrices of second partial derivatives."""
        return cls(quadric_from_matrix(matrix(a)), quadric_from_matrix(matrix(b)))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self.q1 + self.q2

    def forms(self) -> tuple[Poly, Poly]:
        """Both quadrics as forms in (x1, x2, x3, x4)."""
        return (
            form(self.q1, QUADRIC_MONOMIALS, QUATERNARY),
            form(self.q2, QUADRIC_MONOMIALS, QUATERNARY),
        )

    def matrices(self) -> tuple[ImmutableMatrix, ImmutableMatrix]:
        """Matrices of second partial derivatives (A, B)."""
        return quadric_matrix(self.q1), quadric_matrix(self.q2)


GenusOneModel = WeierstrassModel | BinaryQuarticModel | CubicModel | QuadricPairModel

MODEL_CLASSES: dict[int, type[GenusOneModel]] = {
    1: WeierstrassModel,
    2: BinaryQuarticModel,
    3: CubicModel,
    4: QuadricPairModel,
}


def model_from_coefficients(degree: int, values: Any) -> GenusOneModel:
    """Build a model of the given degree from its flat coefficient list."""
    try:
        cls = MODEL_CLASSES[degree]
    except KeyError as e:
        raise ArgumentError(f"unsupported model degree {degree}") from e
    return cls.from_coefficients(values)
