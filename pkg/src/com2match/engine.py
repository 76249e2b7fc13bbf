"""Comparison pipeline: phase one (syntactic + semantic, classes first),
phase two (global then local structure), phase three (levels + link build).

Output is deterministic: links are canonically ordered and ids are assigned
after sorting, so two runs on identical inputs serialize byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .correspondence import (
    LevelVerdict,
    WLink,
    WModel,
    WModelRef,
    assign_level,
    build_link,
    sort_links,
)
from .lexical import compare_syntactic
from .model_ir import Model, flattened_members
from .resources import Lexicon, Ontology
from .semantic import HYPONYMY, compare_semantic
from .structural import PairVerdict, PhaseOneMatrix, global_equiv, local_equiv


@dataclass(frozen=True)
class CompareConfig:
    local_coverage: float = 1.0
    emit_homonyms: bool = True
    include_self_evident_pairs: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.local_coverage <= 1.0:
            raise ValueError("local_coverage must be in [0, 1]")


def _named_elements(model: Model, kind: str) -> list[tuple[str, str]]:
    """(id, name) pairs of every element of one kind, in model order."""
    if kind == "class":
        return [(c.id, c.name) for c in model.classes]
    if kind == "attribute":
        return [(a.id, a.name) for c in model.classes for a in c.attributes]
    if kind == "operation":
        return [(o.id, o.name) for c in model.classes for o in c.operations]
    if kind == "relation":
        return [(r.id, r.name) for r in model.relations]
    raise ValueError(kind)


def compare_models(m1: Model, m2: Model, onto: Ontology | None, lex: Lexicon,
                   cfg: CompareConfig = CompareConfig()) -> WModel:
    p1 = PhaseOneMatrix()
    class_corr: set[tuple[str, str]] = set()

    # Phase 1: syntactic + semantic, in kind order; class results feed the
    # composite rules for the later kinds.
    for kind in ("class", "attribute", "operation", "relation"):
        corr = class_corr if kind != "class" else None
        for left_id, left_name in _named_elements(m1, kind):
            for right_id, right_name in _named_elements(m2, kind):
                syn = compare_syntactic(left_name, right_name, lex, corr, onto)
                sem = compare_semantic(left_name, right_name, kind, onto, lex)
                if syn or sem:
                    p1.add(kind, left_id, right_id,
                           PairVerdict(syn.kind, sem.kind, sem.hyponym_direction))
                    if kind == "class":
                        class_corr.add((left_name, right_name))

    # Phase 2 + 3: structure, levels, links. Structural verdicts are needed
    # for every phase-one pair, and additionally for every class cross pair
    # (a class pair with no name evidence can still be reported).
    links: list[WLink] = []
    for kind in ("class", "attribute", "operation", "relation"):
        pairs = set(p1.pairs.get(kind, ()))
        if kind == "class":
            pairs.update((l, r) for l, _ in _named_elements(m1, kind)
                         for r, _ in _named_elements(m2, kind))
        for left_id, right_id in sorted(pairs):
            verdict = p1.get(kind, left_id, right_id)
            syn_kind = verdict.syntactic if verdict else "none"
            sem_kind = verdict.semantic if verdict else "none"
            hyponym = sem_kind == HYPONYMY
            if hyponym:
                level = assign_level(kind, True, True, False, False)
                g = l = None
            else:
                g = global_equiv(left_id, right_id, kind, m1, m2, p1)
                l = local_equiv(left_id, right_id, kind, m1, m2, p1,
                                cfg.local_coverage)
                syn_sem = verdict is not None and verdict.matched
                level = assign_level(kind, syn_sem, False, g, l)
                if level is None:
                    continue
                if (not syn_sem and g and l
                        and not cfg.include_self_evident_pairs):
                    continue  # structure-only full agreement: opt-in
                if level.homonym and not cfg.emit_homonyms:
                    continue
            assert level is not None
            links.append(build_link("", kind, left_id, right_id,
                                    syn_kind, sem_kind, g, l, level))

    # generalizations: both endpoint class pairs matched
    for g1 in m1.generalizations:
        for g2 in m2.generalizations:
            if (p1.matched("class", g1.sub_class, g2.sub_class)
                    and p1.matched("class", g1.super_class, g2.super_class)):
                links.append(build_link("", "generalization", g1.id, g2.id,
                                        "none", "none", None, None,
                                        LevelVerdict(1, "sure")))

    ordered = sort_links(tuple(links))
    with_ids = tuple(_with_id(link, f"wl{index:04d}")
                     for index, link in enumerate(ordered))
    return WModel(
        name=f"{m1.name} vs {m2.name}",
        description=f"correspondences between {m1.id} and {m2.id}",
        left_ref=WModelRef(m1.id, ""),
        right_ref=WModelRef(m2.id, ""),
        links=with_ids,
    )


def _with_id(link: WLink, link_id: str) -> WLink:
    from dataclasses import replace

    children = tuple(_with_id(c, f"{link_id}.{c.kind.value}") for c in link.children)
    return replace(link, id=link_id, children=children)


def unmatched_elements(wm: WModel, m1: Model, m2: Model) -> tuple[list[str], list[str]]:
    """Element ids per side that appear in no non-deleted link."""
    if wm.left_ref.model_id != m1.id or wm.right_ref.model_id != m2.id:
        raise ValueError("correspondence model refs do not match the given models")
    left_used = {l.left.ref.element_id for l in wm.links if l.decision != "deleted"}
    right_used = {l.right.ref.element_id for l in wm.links if l.decision != "deleted"}
    out: tuple[list[str], list[str]] = ([], [])
    for side, model, used in ((0, m1, left_used), (1, m2, right_used)):
        by_kind = model.element_ids_by_kind()
        for kind in ("class", "attribute", "operation", "relation", "generalization"):
            out[side].extend(sorted(e for e in by_kind[kind] if e not in used))
    return out
