"""Reduction covariants and LLL reduction of genus one models."""

from genusone.reduce.covariants import (
    CovariantGram,
    TorsionMatrix,
    covariant2,
    covariant2_roots,
    covariant2_torsion,
    covariant3,
    covariant4,
    normalise_gram,
    torsion_matrices2,
    torsion_matrices3,
)
from genusone.reduce.driver import ReductionResult, normalise_cross_terms, reduce_model

__all__ = [
    "CovariantGram",
    "ReductionResult",
    "TorsionMatrix",
    "covariant2",
    "covariant2_roots",
    "covariant2_torsion",
    "covariant3",
    "covariant4",
    "normalise_cross_terms",
    "normalise_gram",
    "reduce_model",
    "torsion_matrices2",
    "torsion_matrices3",
]
