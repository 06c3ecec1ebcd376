"""Local and global minimisation of genus one models."""

from genusone.minimise.critical import flip_flop, is_critical
from genusone.minimise.cubics import minimise_tc, singular_points
from genusone.minimise.driver import (
    GlobalMinimisationResult,
    minimise_global,
    minimise_local,
    normalise_sign,
    scale_to_integral,
)
from genusone.minimise.gbq2 import minimise_gbq2
from genusone.minimise.quadrics import minimise_qi
from genusone.minimise.quartics import minimise_bq, minimise_gbq_odd
from genusone.minimise.steps import (
    CertificateKind,
    MinimalityCertificate,
    MinimisationResult,
    MinimisationStep,
    StepKind,
)

__all__ = [
    "CertificateKind",
    "GlobalMinimisationResult",
    "MinimalityCertificate",
    "MinimisationResult",
    "MinimisationStep",
    "StepKind",
    "flip_flop",
    "is_critical",
    "minimise_bq",
    "minimise_gbq2",
    "minimise_gbq_odd",
    "minimise_global",
    "minimise_local",
    "minimise_qi",
    "minimise_tc",
    "normalise_sign",
    "scale_to_integral",
    "singular_points",
]
