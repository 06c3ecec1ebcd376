"""Parser for JSON model documents {"deg": n, "coeffs": [...]}."""

import json
from typing import Any

from genusone.errors import ParseError
from genusone.models.genus_one import GenusOneModel, model_from_coefficients
from genusone.services.parsers import format_rational, parse_rational


class JsonModelParser:
    """Parses a JSON object with the model degree and its coefficients."""

    def can_parse(self, content: str) -> bool:
        """Check if the content looks like a JSON object."""
        return content.lstrip().startswith("{")

    def parse(self, content: str) -> GenusOneModel:
        """
        Parse a JSON model.

        Coefficients may be JSON integers or strings holding an integer or
        p/q; floats are rejected.

        Raises:
            ParseError: invalid JSON or a malformed document
        """
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise ParseError(f"Invalid JSON: {e.msg}", e.pos) from e
        if not isinstance(data, dict):
            raise ParseError("model JSON must be an object", 0)
        degree = data.get("deg")
        coeffs = data.get("coeffs")
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise ParseError("'deg' must be an integer", 0)
        if not isinstance(coeffs, list):
            raise ParseError("'coeffs' must be a list", 0)
        values = []
        for k, value in enumerate(coeffs):
            if isinstance(value, bool) or not isinstance(value, int | str):
                raise ParseError(f"coefficient {k} must be an integer or string", k)
            values.append(parse_rational(str(value), k))
        try:
            return model_from_coefficients(degree, values)
        except ValueError as e:
            raise ParseError(str(e), 0) from e


def model_to_json(model: GenusOneModel) -> dict[str, Any]:
    """The JSON document of a model, coefficients as exact strings."""
    return {
        "deg": model.degree,
        "coeffs": [format_rational(c) for c in model.coefficients],
    }
