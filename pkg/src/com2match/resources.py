"""Domain ontology and lexicon stores.

The ontology is a lookup table over stated axioms: symmetric/transitive
closures are precomputed at load time, and no reasoning happens beyond
that. Lexicons hold the synonym, abbreviation, and acronym dictionaries;
all lookups are case-insensitive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .naming import initials, normalize_name


class OntologyError(ValueError):
    """Malformed ontology document or dangling axiom reference."""


class UnknownNameError(KeyError):
    """Query over a concept or property the ontology does not declare."""


def _closure_classes(pairs: set[frozenset[str]]) -> dict[str, frozenset[str]]:
    """Union-find over unordered pairs -> name to its equivalence class."""
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pair in pairs:
        members = sorted(pair)
        if len(members) == 2:
            parent[find(members[0])] = find(members[1])
    groups: dict[str, set[str]] = {}
    for x in parent:
        groups.setdefault(find(x), set()).add(x)
    return {x: frozenset(group) for group in groups.values() for x in group}


@dataclass(frozen=True)
class Ontology:
    concepts: frozenset[str]
    sub_concept_of: frozenset[tuple[str, str]]
    equivalent_concepts: frozenset[frozenset[str]]
    disjoint_pairs: frozenset[frozenset[str]]
    data_properties: frozenset[tuple[str, str]]
    object_properties: frozenset[tuple[str, str, str]]
    inverse_pairs: frozenset[frozenset[str]]
    equivalent_properties: frozenset[frozenset[str]]
    _sub_closure: frozenset[tuple[str, str]] = field(repr=False, default=frozenset())
    _concept_groups: dict = field(repr=False, default_factory=dict, compare=False)
    _property_groups: dict = field(repr=False, default_factory=dict, compare=False)

    @property
    def property_names(self) -> frozenset[str]:
        return frozenset(name for name, _, _ in self.object_properties)

    @property
    def declared_names(self) -> frozenset[str]:
        return (self.concepts | self.property_names
                | frozenset(name for name, _ in self.data_properties))

    def _check_concept(self, name: str) -> None:
        if name not in self.concepts:
            raise UnknownNameError(f"unknown concept {name!r}")


def is_subconcept(onto: Ontology, child: str, parent: str) -> bool:
    """Reflexive-transitive subconcept test."""
    onto._check_concept(child)
    onto._check_concept(parent)
    return child == parent or (child, parent) in onto._sub_closure


def concepts_equivalent(onto: Ontology, a: str, b: str) -> bool:
    onto._check_concept(a)
    onto._check_concept(b)
    return a == b or b in onto._concept_groups.get(a, ())


def are_disjoint(onto: Ontology, a: str, b: str) -> bool:
    declared = onto.declared_names
    for name in (a, b):
        if name not in declared:
            raise UnknownNameError(f"unknown name {name!r}")
    return a != b and frozenset((a, b)) in onto.disjoint_pairs


def properties_inverse(onto: Ontology, p: str, q: str) -> bool:
    names = onto.property_names
    for name in (p, q):
        if name not in names:
            raise UnknownNameError(f"unknown object property {name!r}")
    return frozenset((p, q)) in onto.inverse_pairs


def properties_equivalent(onto: Ontology, p: str, q: str) -> bool:
    names = onto.property_names
    for name in (p, q):
        if name not in names:
            raise UnknownNameError(f"unknown object property {name!r}")
    return p == q or q in onto._property_groups.get(p, ())


def load_ontology(text: str) -> Ontology:
    """Parse the JSON ontology format and precompute closure tables."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OntologyError(f"ontology parse error: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise OntologyError("ontology document must be a JSON object")
    allowed = {"concepts", "subConceptOf", "equivalentConcepts", "disjoint",
               "objectProperties", "dataProperties", "inverse",
               "equivalentProperties"}
    unknown = set(doc) - allowed
    if unknown:
        raise OntologyError(f"unknown keys {sorted(unknown)} in ontology")

    concepts = frozenset(doc.get("concepts", []))
    sub_pairs = [tuple(p) for p in doc.get("subConceptOf", [])]
    object_props = []
    for entry in doc.get("objectProperties", []):
        for key in ("name", "domain", "range"):
            if key not in entry:
                raise OntologyError(f"object property missing {key!r}: {entry}")
        object_props.append((entry["name"], entry["domain"], entry["range"]))
    data_props = []
    for entry in doc.get("dataProperties", []):
        for key in ("name", "domain"):
            if key not in entry:
                raise OntologyError(f"data property missing {key!r}: {entry}")
        data_props.append((entry["name"], entry["domain"]))
    prop_names = {name for name, _, _ in object_props}
    declared = concepts | prop_names | {name for name, _ in data_props}

    for child, parent in sub_pairs:
        for name in (child, parent):
            if name not in concepts:
                raise OntologyError(f"subConceptOf references undeclared concept {name!r}")
    for _, domain, range_ in object_props:
        for name in (domain, range_):
            if name not in concepts:
                raise OntologyError(f"object property references undeclared concept {name!r}")
    for _, domain in data_props:
        if domain not in concepts:
            raise OntologyError(f"data property references undeclared concept {domain!r}")
    equiv_concepts = set()
    for pair in doc.get("equivalentConcepts", []):
        for name in pair:
            if name not in concepts:
                raise OntologyError(f"equivalentConcepts references undeclared concept {name!r}")
        equiv_concepts.add(frozenset(pair))
    disjoint = set()
    for pair in doc.get("disjoint", []):
        for name in pair:
            if name not in declared:
                raise OntologyError(f"disjoint references undeclared name {name!r}")
        disjoint.add(frozenset(pair))
    inverse = set()
    for pair in doc.get("inverse", []):
        for name in pair:
            if name not in prop_names:
                raise OntologyError(f"inverse references undeclared property {name!r}")
        inverse.add(frozenset(pair))
    equiv_props = set()
    for pair in doc.get("equivalentProperties", []):
        for name in pair:
            if name not in prop_names:
                raise OntologyError(f"equivalentProperties references undeclared property {name!r}")
        equiv_props.add(frozenset(pair))

    # transitive closure of subConceptOf, with cycle detection
    closure: set[tuple[str, str]] = set(sub_pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    for a, b in closure:
        if a == b:
            raise OntologyError(f"subconcept cycle through {a!r}")

    return Ontology(
        concepts=concepts,
        sub_concept_of=frozenset(sub_pairs),
        equivalent_concepts=frozenset(equiv_concepts),
        disjoint_pairs=frozenset(disjoint),
        data_properties=frozenset(data_props),
        object_properties=frozenset(object_props),
        inverse_pairs=frozenset(inverse),
        equivalent_properties=frozenset(equiv_props),
        _sub_closure=frozenset(closure),
        _concept_groups=_closure_classes(equiv_concepts),
        _property_groups=_closure_classes(equiv_props),
    )


@dataclass(frozen=True)
class Lexicon:
    synonyms: frozenset[frozenset[str]] = frozenset()
    abbreviations: tuple[tuple[str, frozenset[str]], ...] = ()
    acronyms: tuple[tuple[str, frozenset[str]], ...] = ()

    def _abbrev_map(self) -> dict[str, frozenset[str]]:
        return dict(self.abbreviations)

    def _acronym_map(self) -> dict[str, frozenset[str]]:
        return dict(self.acronyms)

    @staticmethod
    def empty() -> "Lexicon":
        return Lexicon()


def parse_pairs_tsv(text: str) -> list[tuple[str, str]]:
    """One tab-separated pair per line; '#' starts a comment."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("\t") if p.strip()]
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two tab-separated fields")
        pairs.append((parts[0], parts[1]))
    return pairs


def load_lexicon(synonyms_tsv: str = "", abbreviations_tsv: str = "",
                 acronyms_tsv: str = "") -> Lexicon:
    synonyms = {frozenset((a.lower(), b.lower()))
                for a, b in parse_pairs_tsv(synonyms_tsv)}
    abbrev: dict[str, set[str]] = {}
    for short, long in parse_pairs_tsv(abbreviations_tsv):
        abbrev.setdefault(short.lower(), set()).add(long.lower())
    acro: dict[str, set[str]] = {}
    for short, expansion in parse_pairs_tsv(acronyms_tsv):
        acro.setdefault(short.lower(), set()).add(expansion.lower())
    return Lexicon(
        synonyms=frozenset(synonyms),
        abbreviations=tuple(sorted((k, frozenset(v)) for k, v in abbrev.items())),
        acronyms=tuple(sorted((k, frozenset(v)) for k, v in acro.items())),
    )


def _acronym_matches(lex: Lexicon, short: str, long: str) -> bool:
    expansions = lex._acronym_map().get(short.lower())
    if not expansions:
        return False
    long_initials = initials(normalize_name(long))
    return any(initials(normalize_name(e)) == long_initials for e in expansions)


def lexicon_lookup(lex: Lexicon, kind: str, a: str, b: str) -> bool:
    """Case-insensitive dictionary lookup; symmetric in its arguments."""
    la, lb = a.lower(), b.lower()
    if kind == "synonym":
        return la != lb and frozenset((la, lb)) in lex.synonyms
    if kind == "abbreviation":
        abbrev = lex._abbrev_map()
        return lb in abbrev.get(la, ()) or la in abbrev.get(lb, ())
    if kind == "acronym":
        return _acronym_matches(lex, a, b) or _acronym_matches(lex, b, a)
    raise ValueError(f"unknown lexicon kind {kind!r}")
