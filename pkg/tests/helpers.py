"""Shared test machinery: a random model generator and a brute-force
reference evaluator for the comparison pipeline.

The reference evaluator deliberately avoids the engine's orchestration:
it walks every same-kind cross pair with plain loops, rebuilds the
phase-one matrix itself, and applies its own copy of the level table.
"""

from __future__ import annotations

import random

from com2match.correspondence import IMPROBABLE, MODERATELY_SURE, SURE
from com2match.engine import CompareConfig
from com2match.lexical import compare_syntactic
from com2match.model_ir import (
    AttributeDef,
    ClassDef,
    GeneralizationDef,
    Model,
    OperationDef,
    RelationDef,
)
from com2match.semantic import HYPONYMY, compare_semantic
from com2match.structural import PairVerdict, PhaseOneMatrix, global_equiv, local_equiv

NAME_POOL = [
    "Client", "Clients", "Person", "Account", "Balance", "Bank", "Budget",
    "Distributor", "Employee", "Situation", "Order", "Orders", "Item",
    "Book", "Work", "Family",
]
ATTR_POOL = [
    "id", "Tel", "Telephone", "PIN", "Single", "Married", "Amount",
    "Number", "Currency", "name", "code",
]
TYPE_POOL = ["Integer", "String", "Real", "Boolean"]
MULT_POOL = ["1", "0..*", "1..*", "*", "0..1", "2..5"]


def random_model(rng: random.Random, model_id: str, max_classes: int = 10) -> Model:
    n_classes = rng.randint(1, max_classes)
    names = rng.sample(NAME_POOL, min(n_classes, len(NAME_POOL)))
    classes = []
    for name in names:
        attrs = tuple(
            AttributeDef(f"{model_id}.attribute.{name}.{attr}", attr,
                         rng.choice(TYPE_POOL))
            for attr in rng.sample(ATTR_POOL, rng.randint(0, 3))
        )
        ops = ()
        if rng.random() < 0.3:
            op = rng.choice(["getValue", "setValue", "compute"])
            params = tuple((f"p{i}", rng.choice(TYPE_POOL))
                           for i in range(rng.randint(0, 2)))
            ops = (OperationDef(f"{model_id}.operation.{name}.{op}", op,
                                rng.choice(TYPE_POOL), params),)
        classes.append(ClassDef(f"{model_id}.class.{name}", name, attrs, ops))
    relations = []
    for i in range(rng.randint(0, max(1, n_classes - 1))):
        src, tgt = rng.choice(classes), rng.choice(classes)
        relations.append(RelationDef(
            f"{model_id}.relation.r{i}", rng.choice(["Have", "Possesse", "Use", "Own"]),
            src.id, tgt.id, rng.choice(MULT_POOL), rng.choice(MULT_POOL)))
    generalizations = []
    if len(classes) >= 2 and rng.random() < 0.5:
        # only child -> parent with increasing index: trivially acyclic
        for i in range(rng.randint(1, 2)):
            a, b = sorted(rng.sample(range(len(classes)), 2))
            gen = GeneralizationDef(
                f"{model_id}.generalization.g{i}", classes[a].id, classes[b].id)
            if all(g.sub_class != gen.sub_class or g.super_class != gen.super_class
                   for g in generalizations):
                generalizations.append(gen)
    return Model(model_id, model_id, tuple(classes), tuple(relations),
                 tuple(generalizations))


def _reference_level(kind, syn_sem, hyponym, g, l):
    """Independent copy of the level table, straight from the rule text."""
    if hyponym:
        return (4, SURE, False)
    if kind == "class":
        table = {
            (True, True, True): (3, SURE, False),
            (True, True, False): (2, MODERATELY_SURE, False),
            (True, False, True): (2, MODERATELY_SURE, False),
            (True, False, False): (1, IMPROBABLE, True),
            (False, True, True): (2, MODERATELY_SURE, False),
            (False, True, False): (1, IMPROBABLE, False),
            (False, False, True): (1, IMPROBABLE, False),
            (False, False, False): None,
        }
        return table[(syn_sem, g, l)]
    if not syn_sem:
        return None
    if not g:
        return (1, IMPROBABLE, True)
    return (2, SURE, False) if l else (1, MODERATELY_SURE, False)


def _elements(model, kind):
    if kind == "class":
        return [(c.id, c.name) for c in model.classes]
    if kind == "attribute":
        return [(a.id, a.name) for c in model.classes for a in c.attributes]
    if kind == "operation":
        return [(o.id, o.name) for c in model.classes for o in c.operations]
    return [(r.id, r.name) for r in model.relations]


def oracle_link_set(m1, m2, onto, lex, cfg: CompareConfig = CompareConfig()):
    """Expected link summary tuples, computed with plain nested loops."""
    p1 = PhaseOneMatrix()
    class_corr = set()
    for kind in ("class", "attribute", "operation", "relation"):
        corr = class_corr if kind != "class" else None
        for lid, lname in _elements(m1, kind):
            for rid, rname in _elements(m2, kind):
                syn = compare_syntactic(lname, rname, lex, corr, onto)
                sem = compare_semantic(lname, rname, kind, onto, lex)
                if syn.kind != "none" or sem.kind != "none":
                    p1.add(kind, lid, rid,
                           PairVerdict(syn.kind, sem.kind, sem.hyponym_direction))
                    if kind == "class":
                        class_corr.add((lname, rname))

    def displayed(syn_kind, sem_kind):
        # the link carries one detail: the specialized semantic rules win,
        # then the syntactic verdict, then the generic semantic ones
        if sem_kind in ("hyponymy", "inverse", "disjunction"):
            return "none", sem_kind
        if syn_kind != "none":
            return syn_kind, "none"
        return "none", sem_kind

    out = set()
    for kind in ("class", "attribute", "operation", "relation"):
        for lid, _ in _elements(m1, kind):
            for rid, _ in _elements(m2, kind):
                verdict = p1.get(kind, lid, rid)
                if verdict is None and kind != "class":
                    continue
                syn_kind, sem_kind = displayed(
                    verdict.syntactic if verdict else "none",
                    verdict.semantic if verdict else "none")
                if (verdict.semantic if verdict else "none") == HYPONYMY:
                    out.add((kind, lid, rid, "none", HYPONYMY,
                             None, None, 4, SURE, False))
                    continue
                g = global_equiv(lid, rid, kind, m1, m2, p1)
                l = local_equiv(lid, rid, kind, m1, m2, p1, cfg.local_coverage)
                syn_sem = verdict is not None
                level = _reference_level(kind, syn_sem, False, g, l)
                if level is None:
                    continue
                number, confidence, homonym = level
                if not syn_sem and g and l and not cfg.include_self_evident_pairs:
                    continue
                if homonym and not cfg.emit_homonyms:
                    continue
                out.add((kind, lid, rid, syn_kind, sem_kind, g, l,
                         number, confidence, homonym))
    for g1 in m1.generalizations:
        for g2 in m2.generalizations:
            if (p1.matched("class", g1.sub_class, g2.sub_class)
                    and p1.matched("class", g1.super_class, g2.super_class)):
                out.add(("generalization", g1.id, g2.id, "none", "none",
                         None, None, 1, SURE, False))
    return out


def engine_link_set(wm):
    """Summary tuples for compare_models output, comparable with the oracle."""
    from com2match.correspondence import LinkKind

    out = set()
    for link in wm.links:
        kind = link.left.ref.element_kind
        syn_child = link.find_child(LinkKind.SYNTACTIC)
        sem_child = link.find_child(LinkKind.SEMANTIC)
        syn_kind = sem_kind = "none"
        if syn_child is not None:
            syn_kind = syn_child.children[0].kind.value.lower()
            if syn_kind == "acronymy":
                syn_kind = "acronym"
        if sem_child is not None:
            sem_kind = {
                LinkKind.SYNONYMY: "synonymy", LinkKind.EQUIV_ONTO: "equivOnto",
                LinkKind.DISJUNCTION: "disjunction", LinkKind.INVERSE: "inverse",
                LinkKind.HYPONYMY: "hyponymy",
            }[sem_child.children[0].kind]
        if link.kind == LinkKind.HYPONYMY or kind == "generalization":
            g = l = None
        else:
            g = link.find_child(LinkKind.GLOBAL) is not None
            l = link.find_child(LinkKind.LOCAL) is not None
        out.add((kind, link.left.ref.element_id, link.right.ref.element_id,
                 syn_kind, sem_kind, g, l, link.level, link.confidence,
                 link.find_child(LinkKind.HOMONYM) is not None))
    return out
