"""Syntactic comparison rules and anchoring of model names to the ontology.

Rules are boolean, evaluated in a fixed precedence so every pair gets at
most one syntactic kind: identity, then the dictionary rules (acronym,
abbreviation), then inclusion. Registered dictionary pairs outrank
inclusion because a short form is usually also a character-level prefix
of its long form, and the dictionary is the more specific signal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .naming import concat, normalize_name
from .resources import Lexicon, Ontology, concepts_equivalent, lexicon_lookup

IDENTITY = "identity"
INCLUSION = "inclusion"
ACRONYM = "acronym"
ABBREVIATION = "abbreviation"
NONE = "none"


class AmbiguousAnchorError(ValueError):
    """Several ontology entities tie as the anchor for one model name."""


@dataclass(frozen=True)
class SyntacticVerdict:
    kind: str
    direction: str = "both"  # which side holds the shorter/contained form

    def __bool__(self) -> bool:
        return self.kind != NONE


_NO_MATCH = SyntacticVerdict(NONE)


def _char_inclusion(a: str, b: str) -> str | None:
    """'left' if a is a strict substring of b, 'right' for the converse."""
    ca, cb = concat(normalize_name(a)), concat(normalize_name(b))
    if not ca or not cb or ca == cb:
        return None
    if ca in cb:
        return "left"
    if cb in ca:
        return "right"
    return None


def _token_pair_corresponds(ta: str, tb: str, lex: Lexicon, onto: Ontology | None,
                            class_corr: set[tuple[str, str]] | None) -> bool:
    """Bridge one residual token pair in the composite inclusion rule."""
    if ta == tb:
        return True
    if lexicon_lookup(lex, "synonym", ta, tb):
        return True
    if onto is not None:
        try:
            ca = anchor_to_ontology(ta, onto, "concept", lex)
            cb = anchor_to_ontology(tb, onto, "concept", lex)
        except AmbiguousAnchorError:
            ca = cb = None
        if ca and cb and concepts_equivalent(onto, ca, cb):
            return True
    if class_corr:
        for left_name, right_name in class_corr:
            if _token_names_class(ta, left_name) and _token_names_class(tb, right_name):
                return True
    return False


def _token_names_class(token: str, class_name: str) -> bool:
    normalized = concat(normalize_name(class_name))
    return token == normalized or (bool(token) and token in normalized)


def _residual_tokens(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Strip the shared token prefix and suffix from both sequences."""
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    j = 0
    while (j < len(a) - i and j < len(b) - i and a[len(a) - 1 - j] == b[len(b) - 1 - j]):
        j += 1
    return a[i:len(a) - j], b[i:len(b) - j]


def _composite_inclusion(a: str, b: str, lex: Lexicon, onto: Ontology | None,
                         class_corr: set[tuple[str, str]] | None) -> bool:
    ta, tb = normalize_name(a), normalize_name(b)
    ra, rb = _residual_tokens(ta, tb)
    if len(ra) != len(rb) or (len(ra) == len(ta) and len(rb) == len(tb)):
        # no shared prefix/suffix was removed, or residuals cannot align
        return False
    if not ra:
        return False  # fully identical; identity already handled
    return all(_token_pair_corresponds(x, y, lex, onto, class_corr)
               for x, y in zip(ra, rb))


def _aligned_residual_abbreviation(a: str, b: str, lex: Lexicon) -> bool:
    ta, tb = normalize_name(a), normalize_name(b)
    ra, rb = _residual_tokens(ta, tb)
    if len(ra) != len(rb) or not ra or (len(ra) == len(ta) and len(rb) == len(tb)):
        return False
    return all(x == y or lexicon_lookup(lex, "abbreviation", x, y)
               for x, y in zip(ra, rb)) and any(
        lexicon_lookup(lex, "abbreviation", x, y) for x, y in zip(ra, rb))


def compare_syntactic(a: str, b: str, lex: Lexicon,
                      class_corr: set[tuple[str, str]] | None = None,
                      onto: Ontology | None = None) -> SyntacticVerdict:
    """Evaluate the syntactic rules on a pair of element names."""
    ta, tb = normalize_name(a), normalize_name(b)
    if ta == tb and ta:
        return SyntacticVerdict(IDENTITY, "both")
    if lexicon_lookup(lex, "acronym", a, b):
        direction = "left" if len(concat(ta)) <= len(concat(tb)) else "right"
        return SyntacticVerdict(ACRONYM, direction)
    if lexicon_lookup(lex, "abbreviation", a, b):
        direction = "left" if len(concat(ta)) <= len(concat(tb)) else "right"
        return SyntacticVerdict(ABBREVIATION, direction)
    if _aligned_residual_abbreviation(a, b, lex):
        direction = "left" if len(concat(ta)) <= len(concat(tb)) else "right"
        return SyntacticVerdict(ABBREVIATION, direction)
    included = _char_inclusion(a, b)
    if included:
        return SyntacticVerdict(INCLUSION, included)
    if _composite_inclusion(a, b, lex, onto, class_corr):
        direction = "left" if len(concat(ta)) <= len(concat(tb)) else "right"
        return SyntacticVerdict(INCLUSION, direction)
    return _NO_MATCH


def anchor_to_ontology(name: str, onto: Ontology, kind: str,
                       lex: Lexicon | None = None) -> str | None:
    """Resolve a model name to the ontology entity it denotes, if any.

    A candidate matches when it is syntactically equivalent to the name
    (identity, character-level inclusion, abbreviation, or acronym). An
    identity match always wins; otherwise the candidate whose normalized
    length is closest to the name's wins, and an exact tie is ambiguous.
    """
    if kind == "concept":
        space = onto.concepts
    elif kind == "property":
        space = onto.property_names
    else:
        raise ValueError(f"unknown anchor kind {kind!r}")
    lex = lex or Lexicon.empty()
    norm = concat(normalize_name(name))
    candidates: list[tuple[int, int, str]] = []
    for entity in space:
        entity_norm = concat(normalize_name(entity))
        if entity_norm == norm:
            return entity
        if _char_inclusion(name, entity) is not None:
            rank = 1
        elif lexicon_lookup(lex, "abbreviation", name, entity):
            rank = 2
        elif lexicon_lookup(lex, "acronym", name, entity):
            rank = 2
        else:
            continue
        candidates.append((rank, abs(len(entity_norm) - len(norm)), entity))
    if not candidates:
        return None
    candidates.sort()
    if len(candidates) > 1 and candidates[0][:2] == candidates[1][:2]:
        tied = sorted(c[2] for c in candidates if c[:2] == candidates[0][:2])
        raise AmbiguousAnchorError(
            f"name {name!r} anchors ambiguously to {tied}")
    return candidates[0][2]
