"""Maps between Weierstrass equations and models of higher degree."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from sympy import ImmutableMatrix

from genusone.arith.integers import complete_to_unimodular, primitive
from genusone.arith.polynomials import TERNARY, as_poly, form_at, matrix
from genusone.errors import ArgumentError
from genusone.models.genus_one import (
    QUADRIC_LABELS,
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
    WeierstrassModel,
)
from genusone.models.transformations import (
    CubicTransformation,
    QuadricTransformation,
    QuarticTransformation,
    Transformation,
)


def _quadric(**coeffs: Fraction | int) -> tuple[Fraction, ...]:
    return tuple(Fraction(coeffs.get(label, 0)) for label in QUADRIC_LABELS)


def _check_degree(n: int) -> None:
    if n not in (2, 3, 4):
        raise ArgumentError(f"embedding degree must be 2, 3 or 4, got {n}")


def weierstrass_embed(w: WeierstrassModel, n: int) -> GenusOneModel:
    """
    Model of degree n defined by the linear system |n . O| on W.

    Args:
        w: Weierstrass equation
        n: Target degree

    Returns:
        A model of degree n with the same invariants as W
    """
    _check_degree(n)
    a1, a2, a3, a4, a6 = w.coefficients
    if n == 2:
        return BinaryQuarticModel((0, a1, a3), (0, 1, a2, a4, a6))
    if n == 3:
        return CubicModel((-1, 0, -a6, 0, -a2, 0, 1, -a4, a3, a1))
    return QuadricPairModel(
        _quadric(c11=1, c34=-1),
        _quadric(c22=1, c12=a1, c23=a3, c14=-1, c11=-a2, c13=-a4, c33=-a6),
    )


def weierstrass_embed_P(w: WeierstrassModel, n: int) -> GenusOneModel:  # noqa: N802
    """
    Model of degree n defined by |(n - 1) . O + P| with P = (0, 0).

    Args:
        w: Weierstrass equation with a6 = 0
        n: Target degree

    Returns:
        A model of degree n with the same invariants as W
    """
    _check_degree(n)
    a1, a2, a3, a4, a6 = w.coefficients
    if a6 != 0:
        raise ArgumentError("(0, 0) lies on W only when a6 = 0")
    if n == 2:
        return BinaryQuarticModel((-1, a1, a2), (0, 0, 0, -a3, -a4))
    if n == 3:
        return CubicModel((0, 0, a4, -1, 0, 0, 1, a3, a2, a1))
    return QuadricPairModel(
        _quadric(c34=1, c12=-1, c23=a1, c33=a3),
        _quadric(c22=1, c14=-1, c23=a2, c33=a4),
    )


def _unproject_quartic(model: BinaryQuarticModel) -> CubicModel:
    pl, pm, pn = model.p
    a, b, c, d, e = model.q
    if a != 0:
        raise ArgumentError("binary quartic must have Q(1, 0) = 0 to unproject")
    return CubicModel((-b, 0, -e, -pl, -c, 0, 1, -d, -pn, -pm))


def _unproject_cubic(model: CubicModel) -> QuadricPairModel:
    if model["c"] != 0:
        raise ArgumentError("ternary cubic must vanish at (0:0:1) to unproject")
    # F = x1 q2 - x2 q1 with q2 the terms divisible by x1, q1 the rest over -x2
    q1 = _quadric(c14=1, c22=-model["b"], c23=-model["b3"], c33=-model["c2"])
    q2 = _quadric(
        c24=1,
        c11=model["a"],
        c12=model["a2"],
        c13=model["a3"],
        c22=model["b1"],
        c33=model["c1"],
        c23=model["m"],
    )
    return QuadricPairModel(q1, q2)


def unproject(model: GenusOneModel) -> GenusOneModel:
    """
    Raise the degree by one using the rational point in prepared position.

    A binary quartic y^2 + P y = Q must have Q(1, 0) = 0, so that
    Q = z f3(x, z); a ternary cubic must vanish at (0:0:1).

    Args:
        model: Binary quartic or ternary cubic

    Returns:
        Ternary cubic or quadric intersection with the same discriminant
    """
    if isinstance(model, BinaryQuarticModel):
        return _unproject_quartic(model)
    if isinstance(model, CubicModel):
        return _unproject_cubic(model)
    raise ArgumentError(f"cannot unproject a model of degree {model.degree}")


def _project_cubic(model: CubicModel) -> BinaryQuarticModel:
    if model["b"] != 0:
        raise ArgumentError("ternary cubic must vanish at (0:1:0) to project")
    # F = f1 y^2 + f2 y + f3 with f1, f2, f3 forms in (x, z)
    f1 = (model["b1"], model["b3"])
    f3 = (-model["a"], -model["a3"], -model["c1"], -model["c"])
    q = (
        f1[0] * f3[0],
        f1[0] * f3[1] + f1[1] * f3[0],
        f1[0] * f3[2] + f1[1] * f3[1],
        f1[0] * f3[3] + f1[1] * f3[2],
        f1[1] * f3[3],
    )
    return BinaryQuarticModel((-model["a2"], -model["m"], -model["c2"]), q)


def _project_quadrics(model: QuadricPairModel) -> CubicModel:
    c44 = QUADRIC_LABELS.index("c44")
    if model.q1[c44] != 0 or model.q2[c44] != 0:
        raise ArgumentError("both quadrics must vanish at (0:0:0:1) to project")
    q1, q2 = model.forms()
    x4 = q1.gens[3]
    lines, rests = [], []
    for q in (q1, q2):
        linear = q.diff(x4)
        lines.append(linear.as_expr())
        rests.append((q - linear * x4).as_expr())
    f = lines[0] * rests[1] - lines[1] * rests[0]
    return CubicModel.from_form(as_poly(f, TERNARY))


def project(model: GenusOneModel) -> GenusOneModel:
    """
    Lower the degree by one by projecting from the distinguished point.

    The point is (0:1:0) for a ternary cubic and (0:0:0:1) for a quadric
    intersection.

    Args:
        model: Ternary cubic or quadric intersection

    Returns:
        Binary quartic or ternary cubic with the same discriminant
    """
    if isinstance(model, CubicModel):
        return _project_cubic(model)
    if isinstance(model, QuadricPairModel):
        return _project_quadrics(model)
    raise ArgumentError(f"cannot project a model of degree {model.degree}")


def _transpose(rows: list[list[int]]) -> ImmutableMatrix:
    return matrix(rows).T


def _on_model(model: GenusOneModel, point: Sequence[int]) -> bool:
    if isinstance(model, CubicModel):
        return form_at(model.form(), point) == 0
    if isinstance(model, QuadricPairModel):
        return all(form_at(q, point) == 0 for q in model.forms())
    raise ArgumentError(f"no projective points for degree {model.degree}")


def move_point(
    model: GenusOneModel, point: Sequence[Fraction | int], axis: int
) -> tuple[GenusOneModel, Transformation]:
    """
    Move a rational point of a ternary cubic or quadric intersection to a
    coordinate axis with an integral transformation of determinant 1.

    Args:
        model: Ternary cubic or quadric intersection
        point: Projective coordinates of a point on the model
        axis: Index of the coordinate vector the point is sent to

    Returns:
        Tuple of (moved model, transformation used)
    """
    v, _ = primitive(point)
    if len(v) != (3 if isinstance(model, CubicModel) else 4):
        raise ArgumentError(f"point {tuple(point)} has the wrong number of coordinates")
    if not _on_model(model, v):
        raise ArgumentError(f"point {tuple(point)} does not lie on the model")
    m = _transpose(complete_to_unimodular(v, axis))
    g: Transformation
    if isinstance(model, CubicModel):
        g = CubicTransformation(1, m)
    else:
        g = QuadricTransformation(n=m)
    return g.apply(model), g  # type: ignore[arg-type]


def prepare_for_unprojection(
    model: GenusOneModel, point: Sequence[Fraction | int]
) -> tuple[GenusOneModel, Transformation]:
    """
    Bring a model with a known rational point into the shape unproject needs.

    For a binary quartic the point is (x, z, y) with y of weight two; it is
    moved to (1:0) and a y-shift makes Q(1, 0) vanish. For a ternary cubic
    the point (x1:x2:x3) is moved to (0:0:1).

    Returns:
        Tuple of (prepared model, transformation used)
    """
    if isinstance(model, BinaryQuarticModel):
        if len(point) != 3:
            raise ArgumentError("a point on a binary quartic is given as (x, z, y)")
        (xi, zeta), scale = primitive(point[:2])
        eta = Fraction(point[2]) * scale**2
        value = eta**2 + form_at(model.p_form(), (xi, zeta)) * eta
        if value != form_at(model.q_form(), (xi, zeta)):
            raise ArgumentError(f"point {tuple(point)} does not lie on the model")
        m = _transpose(complete_to_unimodular([xi, zeta]))
        g = QuarticTransformation(1, (0, 0, 0), m).then(
            QuarticTransformation(1, (eta, 0, 0))
        )
        return g.apply(model), g
    if isinstance(model, CubicModel):
        return move_point(model, point, 2)
    raise ArgumentError(f"cannot unproject a model of degree {model.degree}")


def prepare_for_projection(
    model: GenusOneModel, point: Sequence[Fraction | int]
) -> tuple[GenusOneModel, Transformation]:
    """
    Move a rational point to the position project expects: (0:1:0) for a
    ternary cubic, (0:0:0:1) for a quadric intersection.

    Returns:
        Tuple of (prepared model, transformation used)
    """
    if isinstance(model, CubicModel):
        return move_point(model, point, 1)
    if isinstance(model, QuadricPairModel):
        return move_point(model, point, 3)
    raise ArgumentError(f"cannot project a model of degree {model.degree}")


__all__ = [
    "move_point",
    "prepare_for_projection",
    "prepare_for_unprojection",
    "project",
    "unproject",
    "weierstrass_embed",
    "weierstrass_embed_P",
]
