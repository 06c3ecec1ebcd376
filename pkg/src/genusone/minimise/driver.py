"""Local dispatch and global minimisation over Q."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from genusone.arith.integers import prime_divisors, vp
from genusone.arith.polynomials import diagonal
from genusone.config import RunConfig
from genusone.errors import ArgumentError, InvariantViolationError
from genusone.invariants.core import require_nonsingular
from genusone.invariants.weierstrass import LevelReport, levels
from genusone.minimise.cubics import minimise_tc
from genusone.minimise.gbq2 import minimise_gbq2
from genusone.minimise.quadrics import minimise_qi
from genusone.minimise.quartics import minimise_gbq_odd
from genusone.minimise.steps import CertificateKind, MinimisationResult
from genusone.models.genus_one import (
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
)
from genusone.models.transformations import (
    CubicTransformation,
    QuadricTransformation,
    Transformation,
    compose,
    identity,
    scalar,
)

logger = logging.getLogger(__name__)


def minimise_local(
    model: GenusOneModel, p: int, config: RunConfig | None = None
) -> MinimisationResult:
    """
    Run the local minimiser for the model's degree at p.

    Raises:
        ArgumentError: degree 1, or the model is not p-integral
    """
    if isinstance(model, BinaryQuarticModel):
        return minimise_gbq2(model) if p == 2 else minimise_gbq_odd(model, p)
    if isinstance(model, CubicModel):
        return minimise_tc(model, p, config)
    if isinstance(model, QuadricPairModel):
        return minimise_qi(model, p)
    raise ArgumentError(f"no local minimiser for degree {model.degree} models")


def _denominator_exponent(values: tuple[Fraction, ...], p: int) -> int:
    return max((int(-vp(c, p)) for c in values if c and vp(c, p) < 0), default=0)


def scale_to_integral(model: GenusOneModel, budget: int) -> Transformation:
    """
    The scaling making a model integral.

    Degrees 3 and 4 multiply through by the lcm of the denominators. Degree 2
    scales by p^k with P and Q weighted 1 and 2.
    """
    denominators = math.lcm(*(c.denominator for c in model.coefficients))
    if model.degree in (3, 4):
        return scalar(model.degree, denominators)
    if isinstance(model, BinaryQuarticModel):
        u = 1
        for p in prime_divisors(denominators, budget) if denominators > 1 else []:
            k = max(
                _denominator_exponent(model.p, p),
                -(-_denominator_exponent(model.q, p) // 2),
            )
            u *= p**k
        return scalar(2, u)
    raise ArgumentError(f"no global minimisation for degree {model.degree} models")


def normalise_sign(model: GenusOneModel) -> Transformation:
    """
    Unit scaling making the first nonzero coefficient positive.

    Degree 3 uses [-1, I]; degree 4 negates the pencil with M = -I when Q1
    starts negative. Other degrees are left alone.
    """
    if isinstance(model, CubicModel):
        lead = next((c for c in model.coeffs if c), Fraction(0))
        if lead < 0:
            return CubicTransformation(-1)
    elif isinstance(model, QuadricPairModel):
        lead = next((c for c in model.q1 if c), Fraction(0))
        if lead < 0:
            return QuadricTransformation(diagonal(-1, -1))
    return identity(model.degree)


@dataclass(frozen=True)
class GlobalMinimisationResult:
    """Outcome of minimising a model at every prime where it is not minimal."""

    model: GenusOneModel
    transformation: Transformation
    local: list[MinimisationResult] = field(default_factory=list)
    levels_before: list[LevelReport] = field(default_factory=list)
    levels_after: list[LevelReport] = field(default_factory=list)
    seed: int = 0

    @property
    def is_minimal(self) -> bool:
        return not self.levels_after


def minimise_global(
    model: GenusOneModel, config: RunConfig | None = None
) -> GlobalMinimisationResult:
    """
    Minimise a genus one model over Q.

    The model is scaled to be integral, then minimised at each odd prime
    of positive level and at 2 last. Local transformations only involve
    their own prime, so levels elsewhere are unchanged.

    Args:
        model: Nonsingular model of degree 2, 3 or 4 with rational coefficients
        config: Factorisation budget, scan limit and seed

    Returns:
        GlobalMinimisationResult

    Raises:
        ModelIsSingularError: Δ = 0
        IncompleteFactorisationError: a level could not be computed
        InvariantViolationError: every prime certified level zero but the
            model is still not minimal
    """
    config = config or RunConfig()
    require_nonsingular(model)
    g = scale_to_integral(model, config.factor_budget)
    current = g.apply(model)  # type: ignore[arg-type]
    before = levels(current, config.factor_budget)
    logger.info(
        "minimising degree %d model at %s",
        model.degree,
        ", ".join(str(r.p) for r in before) or "no primes",
    )
    local: list[MinimisationResult] = []
    for report in sorted(before, key=lambda r: (r.p == 2, r.p)):
        result = minimise_local(current, report.p, config)
        local.append(result)
        current = result.model
        g = compose(result.transformation, g)
    sign = normalise_sign(current)
    current = sign.apply(current)  # type: ignore[arg-type]
    g = compose(sign, g)
    after = levels(current, config.factor_budget)
    if after and all(r.certificate.kind is CertificateKind.LEVEL_ZERO for r in local):
        primes = ", ".join(str(r.p) for r in after)
        raise InvariantViolationError(f"levels remain positive at {primes}")
    return GlobalMinimisationResult(current, g, local, before, after, config.seed)
