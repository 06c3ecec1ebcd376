"""Minimal discriminants over Q and the level of a model at a prime."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from genusone.arith.integers import DEFAULT_FACTOR_BUDGET, iroot, prime_divisors, vp
from genusone.errors import (
    ArgumentError,
    InvariantViolationError,
    ModelIsSingularError,
)
from genusone.invariants.core import InvariantTriple, require_nonsingular
from genusone.models.genus_one import GenusOneModel, WeierstrassModel

logger = logging.getLogger(__name__)


def _residue(x: Fraction, m: int) -> int:
    """x mod m for a rational x whose denominator is prime to m."""
    return x.numerator * pow(x.denominator, -1, m) % m


def _kraus(c4: Fraction, c6: Fraction, p: int) -> bool:
    """Kraus' conditions at p for a p-integral pair (c4, c6)."""
    if p == 3:
        return vp(c6, 3) != 2
    if p == 2:
        if _residue(c6, 4) == 3:
            return True
        return vp(c4, 2) >= 4 and _residue(c6, 32) in (0, 8)
    return True


def _floor(v: int | float, k: int) -> int | float:
    return v if v == math.inf else int(v) // k


def local_scaling_exponent(c4: Fraction, c6: Fraction, p: int) -> int:
    """
    Largest k such that (c4 / p^4k, c6 / p^6k) is p-integral, has a
    p-integral discriminant and satisfies Kraus' conditions at p.

    Args:
        c4: Invariant c4, p-integral
        c6: Invariant c6, p-integral
        p: Prime

    Returns:
        The exponent k >= 0
    """
    v4, v6 = vp(c4, p), vp(c6, p)
    if v4 < 0 or v6 < 0:
        raise ArgumentError(f"invariants are not {p}-integral")
    k = int(min(_floor(v4, 4), _floor(v6, 6)))
    while k >= 0:
        scale = Fraction(p) ** k
        c4k, c6k = c4 / scale**4, c6 / scale**6
        if vp(c4k**3 - c6k**2, p) >= vp(1728, p) and _kraus(c4k, c6k, p):
            return k
        k -= 1
    raise InvariantViolationError(
        f"no integral Weierstrass model at {p} for c4 = {c4}, c6 = {c6}"
    )


def laska_kraus(
    c4: int, c6: int, budget: int = DEFAULT_FACTOR_BUDGET
) -> tuple[int, int, int, Fraction]:
    """
    Scale integral invariants down to those of a minimal Weierstrass model.

    Args:
        c4: Integer c4
        c6: Integer c6
        budget: Pollard rho iteration cap used to factor gcd(c4, c6)

    Returns:
        Tuple (u, c4 / u^4, c6 / u^6, Δ / u^12)

    Raises:
        ModelIsSingularError: Δ = 0
    """
    c4, c6 = int(c4), int(c6)
    inv = InvariantTriple.from_c4_c6(c4, c6)
    if inv.is_singular():
        raise ModelIsSingularError(inv.discriminant)

    u = 1
    g = math.gcd(c4, c6)
    for p in prime_divisors(g, budget) if g > 1 else []:
        k = local_scaling_exponent(Fraction(c4), Fraction(c6), p)
        u *= p**k
    return u, c4 // u**4, c6 // u**6, inv.discriminant / u**12


def minimal_weierstrass(c4: int, c6: int) -> WeierstrassModel:
    """
    The reduced integral Weierstrass equation with invariants (c4, c6).

    The pair must already be minimal; the result has a1, a3 in {0, 1} and
    a2 in {-1, 0, 1}.
    """
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4, r4 = divmod(b2 * b2 - c4, 24)
    b6, r6 = divmod(-(b2**3) + 36 * b2 * b4 - c6, 216)
    if r4 or r6:
        raise InvariantViolationError(
            f"({c4}, {c6}) is not the pair of an integral model"
        )
    a1 = b2 % 2
    a3 = b6 % 2
    model = WeierstrassModel(
        a1, Fraction(b2 - a1, 4), a3, Fraction(b4 - a1 * a3, 2), Fraction(b6 - a3, 4)
    )
    if not model.is_integral():
        raise InvariantViolationError(
            f"({c4}, {c6}) is not the pair of an integral model"
        )
    return model


@dataclass(frozen=True)
class LevelReport:
    """Valuations of Δ and its minimal value at one prime."""

    p: int
    v_delta_model: int
    v_delta_min: int
    level: int
    v_c4: int | float = math.inf
    v_c6: int | float = math.inf

    def __post_init__(self) -> None:
        if self.v_delta_model - self.v_delta_min != 12 * self.level:
            raise InvariantViolationError(
                f"v(Δ) - v(Δ_min) = {self.v_delta_model - self.v_delta_min} "
                f"is not 12 * {self.level}"
            )


def level(model: GenusOneModel, p: int) -> LevelReport:
    """
    The level of a p-integral model at p.

    Args:
        model: Nonsingular genus one model, p-integral
        p: Prime

    Returns:
        LevelReport with level = (v(Δ) - v(Δ_min)) / 12

    Raises:
        ArgumentError: the model is not p-integral
        ModelIsSingularError: Δ = 0
    """
    if not model.is_p_integral(p):
        raise ArgumentError(f"model is not {p}-integral")
    inv = require_nonsingular(model)
    v_delta = int(vp(inv.discriminant, p))
    k = local_scaling_exponent(inv.c4, inv.c6, p)
    v4, v6 = vp(inv.c4, p), vp(inv.c6, p)
    if p >= 5 and k != min(_floor(v4, 4), _floor(v6, 6)):
        raise InvariantViolationError(
            f"level at {p} disagrees with valuations of c4, c6"
        )
    if (v_delta - 12 * k) < 0:
        raise InvariantViolationError(
            f"minimal discriminant has negative valuation at {p}"
        )
    return LevelReport(p, v_delta, v_delta - 12 * k, k, v4, v6)


def levels(
    model: GenusOneModel, budget: int = DEFAULT_FACTOR_BUDGET
) -> list[LevelReport]:
    """
    Level reports at every prime where an integral model is not minimal.

    Args:
        model: Integral nonsingular genus one model
        budget: Factorisation budget

    Returns:
        Reports sorted by prime (empty when the model is minimal)
    """
    if not model.is_integral():
        raise ArgumentError("levels needs an integral model")
    inv = require_nonsingular(model)
    u, _, _, d_min = laska_kraus(int(inv.c4), int(inv.c6), budget)
    root = iroot(int(abs(inv.discriminant / d_min)), 12)
    if root != u:
        raise InvariantViolationError(f"|Δ / Δ_min| is not {u}^12")
    return [level(model, p) for p in prime_divisors(u, budget)] if u > 1 else []
