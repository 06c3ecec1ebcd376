"""Exception hierarchy for genusone."""

from __future__ import annotations

from fractions import Fraction


class GenusOneError(Exception):
    """Base class for all errors raised by genusone."""

    exit_code = 1


class ArgumentError(GenusOneError, ValueError):
    """Invalid argument, configuration value or input shape."""

    exit_code = 2


class ParseError(GenusOneError, ValueError):
    """Malformed model text or JSON."""

    exit_code = 2

    def __init__(self, message: str, position: int = 0) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ModelIsSingularError(GenusOneError):
    """The model has discriminant zero."""

    exit_code = 3

    def __init__(self, discriminant: Fraction | int = 0) -> None:
        super().__init__("singular model (Δ = 0)")
        self.discriminant = discriminant


class IncompleteFactorisationError(GenusOneError):
    """Factorisation budget exhausted before the bad-prime set was certified."""

    exit_code = 4

    def __init__(self, cofactor: int) -> None:
        super().__init__(
            f"incomplete factorisation: cannot certify bad-prime set, "
            f"unfactored cofactor {cofactor}"
        )
        self.cofactor = cofactor


class NumericError(GenusOneError):
    """Floating point computation failed to reach the required accuracy."""

    exit_code = 5


class InvariantViolationError(GenusOneError):
    """An internal arithmetic consistency check failed."""

    exit_code = 5
