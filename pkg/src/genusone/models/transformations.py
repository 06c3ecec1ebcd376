"""The groups acting on genus one models, with exact action and composition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, ClassVar

from sympy import ImmutableMatrix, eye

from genusone.arith.polynomials import (
    BINARY,
    QUADRATIC_MONOMIALS,
    QUATERNARY,
    TERNARY,
    coefficients,
    form,
    is_integral_matrix,
    linear_substitution,
    matrix,
    to_fraction,
    to_rational,
)
from genusone.errors import ArgumentError
from genusone.models.genus_one import (
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
    WeierstrassModel,
)


def _square(m: Any, n: int, name: str) -> ImmutableMatrix:
    result = m if isinstance(m, ImmutableMatrix) else matrix(m)
    if result.shape != (n, n):
        raise ArgumentError(f"{name} must be {n}x{n}, got {result.shape}")
    if result.det() == 0:
        raise ArgumentError(f"{name} is singular")
    return result


def _det(m: ImmutableMatrix) -> Fraction:
    return to_fraction(m.det())


@dataclass(frozen=True)
class WeierstrassTransformation:
    """[u; r, s, t]: x <- u^2 x + r, y <- u^3 y + u^2 s x + t."""

    u: Fraction = Fraction(1)
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    degree: ClassVar[int] = 1

    def __post_init__(self) -> None:
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.u == 0:
            raise ArgumentError("u must be nonzero")

    @classmethod
    def identity(cls) -> WeierstrassTransformation:
        return cls()

    @property
    def det(self) -> Fraction:
        return 1 / self.u

    def apply(self, model: WeierstrassModel) -> WeierstrassModel:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = model.coefficients
        return WeierstrassModel(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u**2,
            (a3 + r * a1 + 2 * t) / u**3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t)
            / u**4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
        )

    def then(self, other: WeierstrassTransformation) -> WeierstrassTransformation:
        """The transformation applying self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return WeierstrassTransformation(
            u1 * u2,
            r1 + u1**2 * r2,
            s1 + u1 * s2,
            t1 + u1**2 * s1 * r2 + u1**3 * t2,
        )

    def inverse(self) -> WeierstrassTransformation:
        u, r, s, t = self.u, self.r, self.s, self.t
        return WeierstrassTransformation(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in (self.u, self.r, self.s, self.t))


@dataclass(frozen=True)
class QuarticTransformation:
    """[mu, r, M] acting on generalised binary quartics.

    P' = mu (P o M + 2 r), Q' = mu^2 (Q o M - (P o M) r - r^2), where
    (P o M)(x, z) = P(m11 x + m21 z, m12 x + m22 z).
    """

    mu: Fraction = Fraction(1)
    r: tuple[Fraction, ...] = (Fraction(0),) * 3
    m: ImmutableMatrix = ImmutableMatrix(eye(2))

    degree: ClassVar[int] = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", to_fraction(self.mu))
        object.__setattr__(self, "r", tuple(to_fraction(v) for v in self.r))
        object.__setattr__(self, "m", _square(self.m, 2, "M"))
        if self.mu == 0:
            raise ArgumentError("mu must be nonzero")
        if len(self.r) != 3:
            raise ArgumentError("r needs 3 coefficients")

    @classmethod
    def identity(cls) -> QuarticTransformation:
        return cls()

    @property
    def det(self) -> Fraction:
        return self.mu * _det(self.m)

    def apply(self, model: BinaryQuarticModel) -> BinaryQuarticModel:
        p_m = linear_substitution(model.p_form(), self.m, BINARY)
        q_m = linear_substitution(model.q_form(), self.m, BINARY)
        r = form(self.r, QUADRATIC_MONOMIALS, BINARY)
        mu = to_rational(self.mu)
        return BinaryQuarticModel.from_forms(
            (p_m + 2 * r) * mu, (q_m - p_m * r - r**2) * mu**2
        )

    def apply_quartic(self, quartic: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        """Action on a plain binary quartic F, as the model y^2 = F."""
        return self.apply(BinaryQuarticModel.from_quartic(quartic)).q

    def then(self, other: QuarticTransformation) -> QuarticTransformation:
        """The transformation applying self first, then other."""
        r1 = linear_substitution(
            form(self.r, QUADRATIC_MONOMIALS, BINARY), other.m, BINARY
        )
        r2 = form(other.r, QUADRATIC_MONOMIALS, BINARY)
        shift = r1 + r2 * to_rational(1 / self.mu)
        return QuarticTransformation(
            self.mu * other.mu,
            coefficients(shift, QUADRATIC_MONOMIALS),
            other.m * self.m,
        )

    def inverse(self) -> QuarticTransformation:
        inv = self.m.inv()
        shift = linear_substitution(
            form(self.r, QUADRATIC_MONOMIALS, BINARY), inv, BINARY
        )
        return QuarticTransformation(
            1 / self.mu,
            tuple(-self.mu * c for c in coefficients(shift, QUADRATIC_MONOMIALS)),
            inv,
        )

    def is_integral(self) -> bool:
        return (
            self.mu.denominator == 1
            and all(v.denominator == 1 for v in self.r)
            and is_integral_matrix(self.m)
        )


@dataclass(frozen=True)
class CubicTransformation:
    """[mu, M]: F'(x) = mu F(M^t x)."""

    mu: Fraction = Fraction(1)
    m: ImmutableMatrix = ImmutableMatrix(eye(3))

    degree: ClassVar[int] = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", to_fraction(self.mu))
        object.__setattr__(self, "m", _square(self.m, 3, "M"))
        if self.mu == 0:
            raise ArgumentError("mu must be nonzero")

    @classmethod
    def identity(cls) -> CubicTransformation:
        return cls()

    @property
    def det(self) -> Fraction:
        return self.mu * _det(self.m)

    def apply(self, model: CubicModel) -> CubicModel:
        f = linear_substitution(model.form(), self.m, TERNARY)
        return CubicModel.from_form(f * to_rational(self.mu))

    def then(self, other: CubicTransformation) -> CubicTransformation:
        """The transformation applying self first, then other."""
        return CubicTransformation(self.mu * other.mu, other.m * self.m)

    def inverse(self) -> CubicTransformation:
        return CubicTransformation(1 / self.mu, self.m.inv())

    def is_integral(self) -> bool:
        return self.mu.denominator == 1 and is_integral_matrix(self.m)


@dataclass(frozen=True)
class QuadricTransformation:
    """[M, N]: pencil change (Q1, Q2) <- M (Q1, Q2), then x_j <- sum_i n_ij x_i."""

    m: ImmutableMatrix = ImmutableMatrix(eye(2))
    n: ImmutableMatrix = ImmutableMatrix(eye(4))

    degree: ClassVar[int] = 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", _square(self.m, 2, "M"))
        object.__setattr__(self, "n", _square(self.n, 4, "N"))

    @classmethod
    def identity(cls) -> QuadricTransformation:
        return cls()

    @property
    def det(self) -> Fraction:
        return _det(self.m) * _det(self.n)

    def apply(self, model: QuadricPairModel) -> QuadricPairModel:
        q1, q2 = model.forms()
        m = self.m
        new1 = q1 * m[0, 0] + q2 * m[0, 1]
        new2 = q1 * m[1, 0] + q2 * m[1, 1]
        return QuadricPairModel.from_forms(
            linear_substitution(new1, self.n, QUATERNARY),
            linear_substitution(new2, self.n, QUATERNARY),
        )

    def then(self, other: QuadricTransformation) -> QuadricTransformation:
        """The transformation applying self first, then other."""
        return QuadricTransformation(other.m * self.m, other.n * self.n)

    def inverse(self) -> QuadricTransformation:
        return QuadricTransformation(self.m.inv(), self.n.inv())

    def is_integral(self) -> bool:
        return is_integral_matrix(self.m) and is_integral_matrix(self.n)


Transformation = (
    WeierstrassTransformation
    | QuarticTransformation
    | CubicTransformation
    | QuadricTransformation
)

TRANSFORMATION_CLASSES: dict[int, type[Transformation]] = {
    1: WeierstrassTransformation,
    2: QuarticTransformation,
    3: CubicTransformation,
    4: QuadricTransformation,
}


def identity(degree: int) -> Transformation:
    """Identity transformation for models of the given degree."""
    try:
        return TRANSFORMATION_CLASSES[degree].identity()
    except KeyError as e:
        raise ArgumentError(f"unsupported model degree {degree}") from e


def apply(g: Transformation, model: GenusOneModel) -> GenusOneModel:
    """Apply a transformation to a model of the same degree."""
    if g.degree != model.degree:
        raise ArgumentError(
            f"cannot apply a degree {g.degree} transformation to a degree "
            f"{model.degree} model"
        )
    return g.apply(model)  # type: ignore[arg-type]


def compose(g2: Transformation, g1: Transformation) -> Transformation:
    """The transformation g2 o g1 (first g1, then g2)."""
    if g1.degree != g2.degree:
        raise ArgumentError("cannot compose transformations of different degrees")
    return g1.then(g2)  # type: ignore[arg-type]


def scalar(degree: int, value: Fraction | int) -> Transformation:
    """The scaling transformation [value, I] for degrees 2 and 3, [value I, I] for 4."""
    v = to_fraction(value)
    if degree == 2:
        return QuarticTransformation(v)
    if degree == 3:
        return CubicTransformation(v)
    if degree == 4:
        return QuadricTransformation(ImmutableMatrix(eye(2)) * to_rational(v))
    raise ArgumentError(f"no scaling transformation for degree {degree}")
