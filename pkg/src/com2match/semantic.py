"""Semantic comparison rules over the ontology and the synonym dictionary.

Each pair of same-kind element names is first anchored to ontology
entities, then the kind-specific rules run in a fixed precedence:
hyponymy (classes), ontology equivalence, inverse (relations),
disjunction (attributes), synonymy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexical import AmbiguousAnchorError, anchor_to_ontology
from .naming import normalize_name
from .resources import (
    Lexicon,
    Ontology,
    are_disjoint,
    concepts_equivalent,
    is_subconcept,
    lexicon_lookup,
    properties_equivalent,
    properties_inverse,
)

SYNONYMY = "synonymy"
EQUIV_ONTO = "equivOnto"
INVERSE = "inverse"
DISJUNCTION = "disjunction"
HYPONYMY = "hyponymy"
NONE = "none"


@dataclass(frozen=True)
class SemanticVerdict:
    kind: str
    hyponym_direction: str = ""  # 'left' or 'right': which side is the subclass

    def __bool__(self) -> bool:
        return self.kind != NONE


_NO_MATCH = SemanticVerdict(NONE)


def _anchor(name: str, onto: Ontology | None, kind: str, lex: Lexicon) -> str | None:
    if onto is None:
        return None
    try:
        return anchor_to_ontology(name, onto, kind, lex)
    except AmbiguousAnchorError:
        return None


def _synonym_match(a: str, b: str, lex: Lexicon) -> bool:
    """Whole-name synonymy, or synonymy of all aligned residual tokens."""
    if lexicon_lookup(lex, "synonym", a, b):
        return True
    ta, tb = normalize_name(a), normalize_name(b)
    i = 0
    while i < len(ta) and i < len(tb) and ta[i] == tb[i]:
        i += 1
    j = 0
    while (j < len(ta) - i and j < len(tb) - i
           and ta[len(ta) - 1 - j] == tb[len(tb) - 1 - j]):
        j += 1
    ra, rb = ta[i:len(ta) - j], tb[i:len(tb) - j]
    if len(ra) != len(rb) or not ra or (len(ra) == len(ta) and len(rb) == len(tb)):
        return False
    hits = [lexicon_lookup(lex, "synonym", x, y) for x, y in zip(ra, rb)]
    equal = [x == y for x, y in zip(ra, rb)]
    return any(hits) and all(h or e for h, e in zip(hits, equal))


def compare_semantic(a: str, b: str, kind: str, onto: Ontology | None,
                     lex: Lexicon) -> SemanticVerdict:
    """Semantic rules for a pair of same-kind element names."""
    anchor_kind = "property" if kind == "relation" else "concept"
    ca = _anchor(a, onto, anchor_kind, lex)
    cb = _anchor(b, onto, anchor_kind, lex)
    if onto is not None and ca and cb:
        if kind == "class":
            if ca != cb and is_subconcept(onto, ca, cb):
                return SemanticVerdict(HYPONYMY, "left")
            if ca != cb and is_subconcept(onto, cb, ca):
                return SemanticVerdict(HYPONYMY, "right")
        if kind == "relation":
            if properties_equivalent(onto, ca, cb):
                return SemanticVerdict(EQUIV_ONTO)
            if properties_inverse(onto, ca, cb):
                return SemanticVerdict(INVERSE)
        elif concepts_equivalent(onto, ca, cb):
            return SemanticVerdict(EQUIV_ONTO)
    if kind == "attribute" and onto is not None:
        declared = onto.declared_names
        da = a if a in declared else ca
        db = b if b in declared else cb
        if da and db and da in declared and db in declared and are_disjoint(onto, da, db):
            return SemanticVerdict(DISJUNCTION)
    if _synonym_match(a, b, lex):
        return SemanticVerdict(SYNONYMY)
    return _NO_MATCH
