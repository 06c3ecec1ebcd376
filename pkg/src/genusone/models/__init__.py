"""Genus one models, their transformation groups and degree-changing maps."""

from genusone.models.embeddings import (
    move_point,
    prepare_for_projection,
    prepare_for_unprojection,
    project,
    unproject,
    weierstrass_embed,
    weierstrass_embed_P,
)
from genusone.models.genus_one import (
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
    WeierstrassModel,
    model_from_coefficients,
)
from genusone.models.transformations import (
    CubicTransformation,
    QuadricTransformation,
    QuarticTransformation,
    Transformation,
    WeierstrassTransformation,
    apply,
    compose,
    identity,
)

__all__ = [
    "BinaryQuarticModel",
    "CubicModel",
    "CubicTransformation",
    "GenusOneModel",
    "QuadricPairModel",
    "QuadricTransformation",
    "QuarticTransformation",
    "Transformation",
    "WeierstrassModel",
    "WeierstrassTransformation",
    "apply",
    "compose",
    "identity",
    "model_from_coefficients",
    "move_point",
    "prepare_for_projection",
    "prepare_for_unprojection",
    "project",
    "unproject",
    "weierstrass_embed",
    "weierstrass_embed_P",
]
