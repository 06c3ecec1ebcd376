"""Loading and rendering of genus one models for the command line."""

import logging
from pathlib import Path

from genusone.errors import ArgumentError, ParseError
from genusone.models.genus_one import GenusOneModel
from genusone.services.parsers import IModelParser, read_file_safe, strip_comments
from genusone.services.parsers.json_model import JsonModelParser
from genusone.services.parsers.text import TextModelParser

logger = logging.getLogger(__name__)

PARSERS: list[IModelParser] = [JsonModelParser(), TextModelParser()]


def parse_model(content: str) -> GenusOneModel:
    """
    Parse one model in text or JSON form.

    Raises:
        ParseError: no parser accepts the content, or the content is malformed
    """
    content = strip_comments(content)
    if not content:
        raise ParseError("no model found", 0)
    for parser in PARSERS:
        if parser.can_parse(content):
            if isinstance(parser, TextModelParser) and "\n" in content:
                second = content.index("\n") + 1
                raise ParseError("expected exactly one model", second)
            return parser.parse(content)
    raise ParseError(f"unrecognised model {content.split()[0]!r}", 0)


def load_model(source: str) -> GenusOneModel:
    """
    Load a model from a file path or an inline model string.

    Args:
        source: Path to a text or JSON file holding one model, or the model
            itself, e.g. "tc 1 1 1 0 0 0 0 0 0 0"

    Returns:
        The parsed model

    Raises:
        ArgumentError: the file exists but cannot be read
        ParseError: the model is malformed
    """
    path = Path(source)
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if not is_file:
        return parse_model(source)

    content, error = read_file_safe(path)
    if error or content is None:
        raise ArgumentError(error or f"cannot read {path}")
    logger.info("read model from %s", path)
    return parse_model(content)


__all__ = ["PARSERS", "load_model", "parse_model"]
