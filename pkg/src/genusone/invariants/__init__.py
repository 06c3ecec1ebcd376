"""Invariants, covariants and levels of genus one models."""

from genusone.invariants.core import (
    AInvariants,
    InvariantTriple,
    a_invariants,
    discriminant,
    invariants,
    jacobian_weierstrass,
    require_nonsingular,
)
from genusone.invariants.forms import (
    binary_quartic_IJ,
    doubling,
    hessian,
    pencil_determinant,
    pencil_pf_rd,
    pf_rd,
)
from genusone.invariants.weierstrass import (
    LevelReport,
    laska_kraus,
    level,
    levels,
    local_scaling_exponent,
    minimal_weierstrass,
)

__all__ = [
    "AInvariants",
    "InvariantTriple",
    "LevelReport",
    "a_invariants",
    "binary_quartic_IJ",
    "discriminant",
    "doubling",
    "hessian",
    "invariants",
    "jacobian_weierstrass",
    "laska_kraus",
    "level",
    "levels",
    "local_scaling_exponent",
    "minimal_weierstrass",
    "pencil_determinant",
    "pencil_pf_rd",
    "pf_rd",
    "require_nonsingular",
]
