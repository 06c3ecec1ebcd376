"""Parser for the one-line text model format."""

import re

from genusone.errors import ArgumentError, ParseError
from genusone.models.genus_one import (
    BinaryQuarticModel,
    CubicModel,
    GenusOneModel,
    QuadricPairModel,
    WeierstrassModel,
)
from genusone.services.parsers import format_rational, parse_rational

# tag -> (degree, coefficient counts per group, group separator)
FORMATS: dict[str, tuple[int, tuple[int, ...], str]] = {
    "w": (1, (5,), ""),
    "gbq": (2, (3, 5), "/"),
    "tc": (3, (10,), ""),
    "qi": (4, (10, 10), "|"),
}
TAGS = {degree: tag for tag, (degree, _, _) in FORMATS.items()}

_TOKEN = re.compile(r"[/|]|[^\s/|]+")


class TextModelParser:
    """Parses `w`, `gbq`, `tc` and `qi` lines."""

    def can_parse(self, content: str) -> bool:
        """Check if the content starts with a known tag."""
        words = content.split(maxsplit=1)
        return bool(words) and words[0] in FORMATS

    def parse(self, content: str) -> GenusOneModel:
        """
        Parse one model line.

        Raises:
            ParseError: unknown tag, wrong coefficient count or a bad token;
                the position is the character offset of the problem
        """
        tokens = [(m.start(), m.group()) for m in _TOKEN.finditer(content)]
        if not tokens:
            raise ParseError("empty model", 0)
        start, tag = tokens[0]
        if tag not in FORMATS:
            raise ParseError(f"unknown model tag {tag!r}", start)
        _, counts, separator = FORMATS[tag]

        groups: list[list[tuple[int, str]]] = [[]]
        for position, token in tokens[1:]:
            if token in ("/", "|"):
                if token != separator or len(groups) == len(counts):
                    raise ParseError(f"unexpected {token!r}", position)
                groups.append([])
            else:
                groups[-1].append((position, token))
        if len(groups) != len(counts):
            raise ParseError(f"'{tag}' needs the separator {separator!r}", len(content))

        values = []
        for group, count in zip(groups, counts, strict=True):
            if len(group) != count:
                position = group[count][0] if len(group) > count else len(content)
                raise ParseError(
                    f"'{tag}' expects {count} coefficients per group, got {len(group)}",
                    position,
                )
            values.extend(parse_rational(token, pos) for pos, token in group)
        return _build(tag, values)


def _build(tag: str, values: list) -> GenusOneModel:
    if tag == "w":
        return WeierstrassModel.from_coefficients(values)
    if tag == "gbq":
        return BinaryQuarticModel.from_coefficients(values)
    if tag == "tc":
        return CubicModel.from_coefficients(values)
    return QuadricPairModel.from_coefficients(values)


def format_model_text(model: GenusOneModel) -> str:
    """The one-line text form of a model."""
    try:
        tag = TAGS[model.degree]
    except KeyError as e:
        raise ArgumentError(f"no text format for degree {model.degree}") from e
    _, counts, separator = FORMATS[tag]
    words = [tag]
    values = list(model.coefficients)
    for k, count in enumerate(counts):
        if k:
            words.append(separator)
        words.extend(format_rational(v) for v in values[:count])
        values = values[count:]
    return " ".join(words)
