"""LLL reduction of genus one models through their reduction covariants."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from genusone.arith.lattice import lll_gram
from genusone.arith.polynomials import matrix
from genusone.config import RunConfig
from genusone.errors import ArgumentError, InvariantViolationError
from genusone.invariants.core import invariants, require_nonsingular
from genusone.invariants.forms import pencil_determinant
from genusone.minimise.driver import normalise_sign
from genusone.models.genus_one import (
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
)
from genusone.models.transformations import (
    CubicTransformation,
    QuadricTransformation,
    QuarticTransformation,
    Transformation,
    compose,
)
from genusone.reduce.covariants import (
    CovariantGram,
    covariant2,
    covariant3,
    covariant4,
)

logger = logging.getLogger(__name__)

# Covariant recomputations allowed while LLL keeps changing a cubic.
REDUCTION_ROUNDS = 3


@dataclass(frozen=True)
class ReductionResult:
    """A reduced model, the unimodular change that produced it, and its Grams."""

    model: GenusOneModel
    transformation: Transformation
    gram_before: CovariantGram
    gram_after: CovariantGram


def normalise_cross_terms(
    model: BinaryQuarticModel,
) -> tuple[BinaryQuarticModel, QuarticTransformation]:
    """
    The integer y-shift putting each coefficient of P in {0, 1}.

    Args:
        model: Integral generalised binary quartic

    Returns:
        Tuple of (shifted model, the shift [1, r, I])
    """
    if not model.is_integral():
        raise ArgumentError("cross-term normalisation needs an integral model")
    r = tuple(Fraction(-(c.numerator // 2)) for c in model.p)
    shift = QuarticTransformation(1, r)
    return shift.apply(model), shift


def _lll(gram: CovariantGram, delta: float) -> tuple[list[list[int]], np.ndarray]:
    u, reduced = lll_gram(gram, delta)
    logger.debug("LLL basis change %s", u)
    return u, reduced


def _reduce_quartic(
    model: BinaryQuarticModel, config: RunConfig
) -> tuple[QuarticTransformation, CovariantGram, CovariantGram]:
    gram = covariant2(model.quartic(), precision=config.precision)
    u, reduced = _lll(gram, config.delta)
    g = QuarticTransformation(1, (0, 0, 0), matrix(u).T)
    _, shift = normalise_cross_terms(g.apply(model))
    return g.then(shift), gram, reduced


def _reduce_cubic(
    model: CubicModel, config: RunConfig
) -> tuple[CubicTransformation, CovariantGram, CovariantGram]:
    first = covariant3(model, config.precision, config.seed)
    gram, g, current = first, CubicTransformation.identity(), model
    identity = [[int(i == j) for j in range(3)] for i in range(3)]
    for _ in range(REDUCTION_ROUNDS):
        u, reduced = _lll(gram, config.delta)
        if u == identity:
            break
        step = CubicTransformation(1, matrix(u).T)
        g, current = g.then(step), step.apply(current)
        gram = covariant3(current, config.precision, config.seed)
    else:
        logger.warning("cubic reduction still moving after %d rounds", REDUCTION_ROUNDS)
        reduced = gram
    return g, first, reduced


def _reduce_pair(
    model: QuadricPairModel, config: RunConfig
) -> tuple[QuadricTransformation, CovariantGram, CovariantGram]:
    pencil_gram = covariant2(pencil_determinant(model), precision=config.precision)
    v, _ = _lll(pencil_gram, config.delta)
    pencil = QuadricTransformation(matrix(v).T)
    rebased = pencil.apply(model)
    gram = covariant4(rebased, config.precision, config.seed)
    u, reduced = _lll(gram, config.delta)
    return pencil.then(QuadricTransformation(n=matrix(u).T)), gram, reduced


def reduce_model(
    model: GenusOneModel, config: RunConfig | None = None
) -> ReductionResult:
    """
    Reduce a genus one model of degree 2, 3 or 4.

    The covariant is LLL reduced and the basis change applied to the model;
    degree 2 then normalises the cross terms and degree 4 first reduces its
    pencil through the quartic det(A x + B z). A final unit scaling makes
    the leading coefficient positive.

    Args:
        model: Nonsingular integral model
        config: Precision, seed and LLL delta

    Returns:
        ReductionResult

    Raises:
        ArgumentError: degree 1 or a non-integral model
        NumericError: a covariant could not be computed
        InvariantViolationError: the reduced model changed its invariants
    """
    config = config or RunConfig()
    if not model.is_integral():
        raise ArgumentError("reduction needs an integral model")
    before = require_nonsingular(model)
    g: Transformation
    if isinstance(model, BinaryQuarticModel):
        g, gram, reduced = _reduce_quartic(model, config)
    elif isinstance(model, CubicModel):
        g, gram, reduced = _reduce_cubic(model, config)
    elif isinstance(model, QuadricPairModel):
        g, gram, reduced = _reduce_pair(model, config)
    else:
        raise ArgumentError(f"no reduction for degree {model.degree} models")
    result = g.apply(model)  # type: ignore[arg-type]
    sign = normalise_sign(result)
    result = sign.apply(result)  # type: ignore[arg-type]
    g = compose(sign, g)
    if invariants(result) != before:
        raise InvariantViolationError("reduction changed the invariants")
    logger.info("reduced degree %d model", model.degree)
    return ReductionResult(result, g, gram, reduced)
