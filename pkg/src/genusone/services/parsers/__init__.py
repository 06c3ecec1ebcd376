"""Parser utilities and interface for genus one model sources."""

import re
from fractions import Fraction
from pathlib import Path
from typing import Protocol

from genusone.errors import ParseError
from genusone.models.genus_one import GenusOneModel

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class IModelParser(Protocol):
    """Interface for model parsers."""

    def can_parse(self, content: str) -> bool:
        """Check if this parser recognises the content."""
        ...

    def parse(self, content: str) -> GenusOneModel:
        """Parse content into a model."""
        ...


def parse_rational(token: str, position: int = 0) -> Fraction:
    """
    Parse an exact coefficient written as an integer or p/q.

    Raises:
        ParseError: the token is not an exact rational
    """
    token = token.strip()
    if not _RATIONAL.match(token):
        raise ParseError(f"expected an integer or p/q, got {token!r}", position)
    try:
        return Fraction(token)
    except ZeroDivisionError as e:
        raise ParseError(f"zero denominator in {token!r}", position) from e


def format_rational(value: Fraction | int) -> str:
    """Exact decimal form: an integer or p/q."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def read_file_safe(path: Path) -> tuple[str | None, str | None]:
    """
    Safely read a file, returning content or error.

    Args:
        path: Path to file

    Returns:
        Tuple of (content, error) - one will be None
    """
    try:
        content = path.read_text(encoding="utf-8")
        return content, None
    except OSError as e:
        return None, f"Failed to read file: {e}"
    except UnicodeDecodeError as e:
        return None, f"Encoding error: {e}"


def strip_comments(content: str) -> str:
    """Drop # comments and blank lines."""
    lines = []
    for line in content.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return "\n".join(lines)
