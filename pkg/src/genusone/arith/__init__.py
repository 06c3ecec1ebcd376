"""Exact integer, finite field, polynomial and lattice arithmetic."""

from genusone.arith.finite_field import (
    binary_common_root,
    binary_form_roots,
    binary_quadratic_resultant,
    gf_intersect,
    gf_inverse,
    gf_kernel,
    gf_rank,
    gf_rref,
    gf_solve,
    sl_lift,
    sl_lift_at,
)
from genusone.arith.integers import (
    complete_to_unimodular,
    factor,
    iroot,
    prime_divisors,
    primitive,
    vp,
    vp_all,
)
from genusone.arith.lattice import is_lll_reduced, lll_gram
from genusone.arith.roots import poly_roots_complex, poly_roots_mp

__all__ = [
    "binary_common_root",
    "binary_form_roots",
    "binary_quadratic_resultant",
    "complete_to_unimodular",
    "factor",
    "gf_intersect",
    "gf_inverse",
    "gf_kernel",
    "gf_rank",
    "gf_rref",
    "gf_solve",
    "iroot",
    "is_lll_reduced",
    "lll_gram",
    "poly_roots_complex",
    "poly_roots_mp",
    "prime_divisors",
    "primitive",
    "sl_lift",
    "sl_lift_at",
    "vp",
    "vp_all",
]
