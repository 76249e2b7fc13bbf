"""Global- and local-structure equivalence over the phase-one matrix.

The structural phase only reads phase-one (syntactic + semantic) results;
there is no fixpoint iteration. All predicates here are symmetric under
swapping the two models.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model_ir import Model, RelationDef, flattened_members, parse_multiplicity
from .semantic import HYPONYMY, INVERSE


@dataclass(frozen=True)
class PairVerdict:
    syntactic: str  # lexical verdict kind, or 'none'
    semantic: str   # semantic verdict kind, or 'none'
    hyponym_direction: str = ""

    @property
    def matched(self) -> bool:
        return self.syntactic != "none" or self.semantic != "none"


@dataclass
class PhaseOneMatrix:
    """Same-kind pairs with a non-none syntactic or semantic verdict."""

    pairs: dict[str, dict[tuple[str, str], PairVerdict]] = field(default_factory=dict)

    def add(self, kind: str, left_id: str, right_id: str, verdict: PairVerdict) -> None:
        self.pairs.setdefault(kind, {})[(left_id, right_id)] = verdict

    def get(self, kind: str, left_id: str, right_id: str) -> PairVerdict | None:
        return self.pairs.get(kind, {}).get((left_id, right_id))

    def matched(self, kind: str, left_id: str, right_id: str) -> bool:
        return self.get(kind, left_id, right_id) is not None


@dataclass(frozen=True)
class StructuralVerdict:
    global_equiv: bool
    local_equiv: bool


def _class_pair_equiv(p1: PhaseOneMatrix, m1: Model, m2: Model,
                      left_id: str, right_id: str) -> bool:
    """Phase-one class equivalence, allowing superclass replacement."""
    lefts = (left_id,) + m1.superclass_ids(left_id)
    rights = (right_id,) + m2.superclass_ids(right_id)
    return any(p1.matched("class", l, r) for l in lefts for r in rights)


def _owner_of(model: Model, member_id: str, kind: str):
    for c in model.classes:
        members = c.attributes if kind == "attribute" else c.operations
        if any(m.id == member_id for m in members):
            return c
    raise KeyError(f"unknown {kind} id {member_id!r} in model {model.id!r}")


def _relation_by_id(model: Model, rel_id: str) -> RelationDef:
    for r in model.relations:
        if r.id == rel_id:
            return r
    raise KeyError(f"unknown relation id {rel_id!r} in model {model.id!r}")


def _endpoint_assignments(p1: PhaseOneMatrix, r1: RelationDef, r2: RelationDef):
    """Endpoint alignments to consider: forward, plus reversed when inverse."""
    yield (r1.source_class, r2.source_class), (r1.target_class, r2.target_class)
    verdict = p1.get("relation", r1.id, r2.id)
    if verdict is not None and verdict.semantic == INVERSE:
        yield (r1.source_class, r2.target_class), (r1.target_class, r2.source_class)


def global_equiv(left_id: str, right_id: str, kind: str,
                 m1: Model, m2: Model, p1: PhaseOneMatrix) -> bool:
    if kind in ("attribute", "operation"):
        owner1 = _owner_of(m1, left_id, kind)
        owner2 = _owner_of(m2, right_id, kind)
        return _class_pair_equiv(p1, m1, m2, owner1.id, owner2.id)

    if kind == "relation":
        r1 = _relation_by_id(m1, left_id)
        r2 = _relation_by_id(m2, right_id)
        for pair_a, pair_b in _endpoint_assignments(p1, r1, r2):
            for ca, cb in (pair_a, pair_b):
                if _class_pair_equiv(p1, m1, m2, ca, cb):
                    return True
        return False

    if kind == "class":
        rels1 = m1.relations_of(left_id, include_superclasses=True)
        rels2 = m2.relations_of(right_id, include_superclasses=True)
        if not rels1 and not rels2:
            return True  # both neighborhoods empty: trivially alike
        left_family = {left_id, *m1.superclass_ids(left_id)}
        right_family = {right_id, *m2.superclass_ids(right_id)}
        for r1 in rels1:
            ends1 = [(r1.source_class, r1.target_class), (r1.target_class, r1.source_class)]
            for r2 in rels2:
                ends2 = [(r2.source_class, r2.target_class), (r2.target_class, r2.source_class)]
                for own1, opp1 in ends1:
                    if own1 not in left_family:
                        continue
                    for own2, opp2 in ends2:
                        if own2 not in right_family:
                            continue
                        if _class_pair_equiv(p1, m1, m2, opp1, opp2):
                            return True
                # equivalent relations in which both classes occupy aligned ends
                verdict = p1.get("relation", r1.id, r2.id)
                if verdict is None:
                    continue
                reverse = verdict.semantic == INVERSE
                pos1 = _positions(r1, left_family)
                pos2 = _positions(r2, right_family)
                for a in pos1:
                    aligned = {"source": "target", "target": "source"}[a] if reverse else a
                    if aligned in pos2:
                        return True
        return False

    raise ValueError(f"global_equiv does not apply to kind {kind!r}")


def _positions(rel: RelationDef, family: set[str]) -> set[str]:
    out = set()
    if rel.source_class in family:
        out.add("source")
    if rel.target_class in family:
        out.add("target")
    return out


def _types_equiv(t1: str, t2: str, m1: Model, m2: Model, p1: PhaseOneMatrix) -> bool:
    if t1.lower() == t2.lower():
        return True
    c1 = m1.class_by_name(t1)
    c2 = m2.class_by_name(t2)
    return (c1 is not None and c2 is not None
            and _class_pair_equiv(p1, m1, m2, c1.id, c2.id))


def _max_bipartite_matching(edges: dict[str, set[str]]) -> int:
    """Kuhn's augmenting-path matching over a small left->right adjacency."""
    match_right: dict[str, str] = {}

    def try_assign(left: str, visited: set[str]) -> bool:
        for right in edges.get(left, ()):
            if right in visited:
                continue
            visited.add(right)
            if right not in match_right or try_assign(match_right[right], visited):
                match_right[right] = left
                return True
        return False

    count = 0
    for left in edges:
        if try_assign(left, set()):
            count += 1
    return count


def _class_local(left_id: str, right_id: str, m1: Model, m2: Model,
                 p1: PhaseOneMatrix, coverage: float) -> bool:
    attrs1, ops1 = flattened_members(m1, left_id)
    attrs2, ops2 = flattened_members(m2, right_id)
    matched = 0
    for kind, left_members, right_members in (
        ("attribute", attrs1, attrs2), ("operation", ops1, ops2),
    ):
        edges = {
            lm.id: {rm.id for rm in right_members if p1.matched(kind, lm.id, rm.id)}
            for lm in left_members
        }
        matched += _max_bipartite_matching(edges)
    total_left = len(attrs1) + len(ops1)
    total_right = len(attrs2) + len(ops2)
    if total_left == 0 and total_right == 0:
        return True
    left_cov = matched / total_left if total_left else 1.0
    right_cov = matched / total_right if total_right else 1.0
    return left_cov >= coverage and right_cov >= coverage


def local_equiv(left_id: str, right_id: str, kind: str,
                m1: Model, m2: Model, p1: PhaseOneMatrix,
                coverage: float = 1.0) -> bool:
    if kind == "class":
        return _class_local(left_id, right_id, m1, m2, p1, coverage)

    if kind == "attribute":
        a1 = next(a for c in m1.classes for a in c.attributes if a.id == left_id)
        a2 = next(a for c in m2.classes for a in c.attributes if a.id == right_id)
        return _types_equiv(a1.type_name, a2.type_name, m1, m2, p1)

    if kind == "operation":
        o1 = next(o for c in m1.classes for o in c.operations if o.id == left_id)
        o2 = next(o for c in m2.classes for o in c.operations if o.id == right_id)
        if len(o1.parameters) != len(o2.parameters):
            return False
        if not _types_equiv(o1.return_type, o2.return_type, m1, m2, p1):
            return False
        return all(_types_equiv(t1, t2, m1, m2, p1)
                   for (_, t1), (_, t2) in zip(o1.parameters, o2.parameters))

    if kind == "relation":
        r1 = _relation_by_id(m1, left_id)
        r2 = _relation_by_id(m2, right_id)
        for (src_pair, tgt_pair), mults in _assignment_mults(p1, r1, r2):
            if mults[0][0] == mults[0][1] and mults[1][0] == mults[1][1]:
                return True
        return False

    raise ValueError(f"local_equiv does not apply to kind {kind!r}")


def _assignment_mults(p1: PhaseOneMatrix, r1: RelationDef, r2: RelationDef):
    forward = (
        ((r1.source_class, r2.source_class), (r1.target_class, r2.target_class)),
        ((parse_multiplicity(r1.source_mult), parse_multiplicity(r2.source_mult)),
         (parse_multiplicity(r1.target_mult), parse_multiplicity(r2.target_mult))),
    )
    yield forward
    verdict = p1.get("relation", r1.id, r2.id)
    if verdict is not None and verdict.semantic == INVERSE:
        yield (
            ((r1.source_class, r2.target_class), (r1.target_class, r2.source_class)),
            ((parse_multiplicity(r1.source_mult), parse_multiplicity(r2.target_mult)),
             (parse_multiplicity(r1.target_mult), parse_multiplicity(r2.source_mult))),
        )
