"""Name tokenization shared by the lexical matcher and the lexicons."""

from __future__ import annotations

import re

_SEPARATORS = re.compile(r"[ _\-]+")
# lower->Upper boundary, or the last capital of an all-caps run followed
# by a lowercase letter (splits embedded acronyms: "XMLParser" -> XML|Parser)
_CAMEL = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")


def normalize_name(name: str) -> tuple[str, ...]:
    """Split a name on separators and camel-case boundaries, lowercased."""
    tokens: list[str] = []
    for chunk in _SEPARATORS.split(name):
        if not chunk:
            continue
        for token in _CAMEL.split(chunk):
            if token:
                tokens.append(token.lower())
    return tuple(tokens)


def concat(tokens: tuple[str, ...]) -> str:
    return "".join(tokens)


def initials(tokens: tuple[str, ...]) -> str:
    return "".join(t[0] for t in tokens if t)
