"""Correspondence metamodel: typed links, equivalence levels, decisions.

The link graph follows a weaving-style metamodel: a root WModel referencing
the two input models, and one WLink per candidate mapping. Detail verdicts
(syntactic/semantic kind, structural flags, confidence) hang off each link
as child annotation links. WModel values are immutable; applying a decision
produces a new value plus an audit entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

from .model_ir import Model
from .semantic import DISJUNCTION, EQUIV_ONTO, HYPONYMY, INVERSE, SYNONYMY


class LinkKind(str, Enum):
    EQUIVALENCE = "Equivalence"
    IDENTITY = "Identity"
    ACRONYMY = "Acronymy"
    INCLUSION = "Inclusion"
    ABBREVIATION = "Abbreviation"
    SYNTACTIC = "Syntactic"
    SYNONYMY = "Synonymy"
    DISJUNCTION = "Disjunction"
    INVERSE = "Inverse"
    EQUIV_ONTO = "EquivOnto"
    SEMANTIC = "Semantic"
    GLOBAL = "Global"
    LOCAL = "Local"
    STRUCTURAL = "Structural"
    HYPONYMY = "Hyponymy"
    SURE = "Sure"
    MODERATELY_SURE = "ModeratelySure"
    IMPROBABLE = "Improbable"
    HOMONYM = "Homonym"


LEVEL_KINDS = (LinkKind.SURE, LinkKind.MODERATELY_SURE, LinkKind.IMPROBABLE)

_SYNTACTIC_DETAIL = {
    "identity": LinkKind.IDENTITY,
    "inclusion": LinkKind.INCLUSION,
    "acronym": LinkKind.ACRONYMY,
    "abbreviation": LinkKind.ABBREVIATION,
}
_SEMANTIC_DETAIL = {
    SYNONYMY: LinkKind.SYNONYMY,
    EQUIV_ONTO: LinkKind.EQUIV_ONTO,
    DISJUNCTION: LinkKind.DISJUNCTION,
    INVERSE: LinkKind.INVERSE,
    HYPONYMY: LinkKind.HYPONYMY,
}

KIND_ORDER = ("class", "attribute", "operation", "relation", "generalization")

SURE = "sure"
MODERATELY_SURE = "moderatelySure"
IMPROBABLE = "improbable"

_CONFIDENCE_KIND = {
    SURE: LinkKind.SURE,
    MODERATELY_SURE: LinkKind.MODERATELY_SURE,
    IMPROBABLE: LinkKind.IMPROBABLE,
}


class CorrespondenceError(ValueError):
    """Malformed correspondence document or dangling element reference."""


class DecisionError(ValueError):
    """Decision applied to an unknown or already-decided link."""


@dataclass(frozen=True)
class LevelVerdict:
    level: int
    confidence: str
    homonym: bool = False
    hyponym: bool = False

    def __post_init__(self) -> None:
        if self.hyponym and (self.level != 4 or self.confidence != SURE):
            raise ValueError("hyponym verdicts are level 4, sure")
        if self.homonym and self.confidence != IMPROBABLE:
            raise ValueError("homonym verdicts are improbable")


@dataclass(frozen=True)
class WElementRef:
    element_id: str
    element_kind: str


@dataclass(frozen=True)
class WLinkEnd:
    ref: WElementRef
    side: str  # 'left' | 'right'


@dataclass(frozen=True)
class WLink:
    id: str
    kind: LinkKind
    left: WLinkEnd
    right: WLinkEnd
    children: tuple["WLink", ...] = ()
    decision: str = "pending"

    def child_kinds(self) -> tuple[LinkKind, ...]:
        return tuple(c.kind for c in self.children)

    def find_child(self, kind: LinkKind) -> "WLink | None":
        for c in self.children:
            if c.kind == kind:
                return c
        return None

    @property
    def confidence(self) -> str:
        for name, kind in _CONFIDENCE_KIND.items():
            if self.find_child(kind) is not None:
                return name
        return ""

    @property
    def level(self) -> int:
        """Displayed level number, derived from kind + confidence."""
        if self.kind == LinkKind.HYPONYMY:
            return 4
        element_kind = self.left.ref.element_kind
        confidence = self.confidence
        if element_kind == "class":
            return {SURE: 3, MODERATELY_SURE: 2, IMPROBABLE: 1}[confidence]
        if element_kind == "generalization":
            return 1
        return {SURE: 2, MODERATELY_SURE: 1, IMPROBABLE: 1}[confidence]


@dataclass(frozen=True)
class WModelRef:
    model_id: str
    location: str


@dataclass(frozen=True)
class WModel:
    name: str
    description: str
    left_ref: WModelRef
    right_ref: WModelRef
    links: tuple[WLink, ...] = ()

    def link_by_id(self, link_id: str) -> WLink:
        for link in self.links:
            if link.id == link_id:
                return link
        raise DecisionError(f"unknown link id {link_id!r}")


def assign_level(kind: str, syn_sem: bool, hyponym: bool,
                 global_eq: bool, local_eq: bool) -> LevelVerdict | None:
    """Equivalence-level decision table; total over its input domain."""
    if hyponym:
        if kind != "class":
            raise ValueError("hyponymy applies only to class pairs")
        return LevelVerdict(4, SURE, hyponym=True)
    if kind == "generalization":
        return LevelVerdict(1, SURE)
    if kind == "class":
        if syn_sem:
            if global_eq and local_eq:
                return LevelVerdict(3, SURE)
            if global_eq or local_eq:
                return LevelVerdict(2, MODERATELY_SURE)
            return LevelVerdict(1, IMPROBABLE, homonym=True)
        if global_eq and local_eq:
            return LevelVerdict(2, MODERATELY_SURE)
        if global_eq or local_eq:
            return LevelVerdict(1, IMPROBABLE)
        return None
    if kind in ("attribute", "operation", "relation"):
        if not syn_sem:
            return None
        if not global_eq:
            return LevelVerdict(1, IMPROBABLE, homonym=True)
        if local_eq:
            return LevelVerdict(2, SURE)
        return LevelVerdict(1, MODERATELY_SURE)
    raise ValueError(f"unknown element kind {kind!r}")


def build_link(link_id: str, element_kind: str, left_id: str, right_id: str,
               syntactic_kind: str, semantic_kind: str,
               global_eq: bool | None, local_eq: bool | None,
               level: LevelVerdict) -> WLink:
    """Assemble a WLink with its annotation children from the verdicts."""
    if (syntactic_kind in ("", "none") and semantic_kind in ("", "none")
            and element_kind in ("attribute", "operation", "relation")):
        raise CorrespondenceError(
            f"{element_kind} link {left_id}/{right_id} without syn/sem evidence")
    left = WLinkEnd(WElementRef(left_id, element_kind), "left")
    right = WLinkEnd(WElementRef(right_id, element_kind), "right")

    def child(kind: LinkKind, grandchildren: tuple[WLink, ...] = ()) -> WLink:
        return WLink(id=f"{link_id}.{kind.value}", kind=kind, left=left,
                     right=right, children=grandchildren)

    top_kind = LinkKind.EQUIVALENCE
    children: list[WLink] = []
    if level.hyponym:
        top_kind = LinkKind.HYPONYMY
        children.append(child(LinkKind.SEMANTIC, (child(LinkKind.HYPONYMY),)))
    elif semantic_kind == INVERSE:
        top_kind = LinkKind.INVERSE
        children.append(child(LinkKind.SEMANTIC, (child(LinkKind.INVERSE),)))
    elif semantic_kind == DISJUNCTION:
        top_kind = LinkKind.DISJUNCTION
        children.append(child(LinkKind.SEMANTIC, (child(LinkKind.DISJUNCTION),)))
    elif syntactic_kind in _SYNTACTIC_DETAIL:
        children.append(child(LinkKind.SYNTACTIC,
                              (child(_SYNTACTIC_DETAIL[syntactic_kind]),)))
    elif semantic_kind in _SEMANTIC_DETAIL:
        children.append(child(LinkKind.SEMANTIC,
                              (child(_SEMANTIC_DETAIL[semantic_kind]),)))
    if global_eq:
        children.append(child(LinkKind.GLOBAL))
    if local_eq:
        children.append(child(LinkKind.LOCAL))
    if global_eq or local_eq:
        children.append(child(LinkKind.STRUCTURAL))
    children.append(child(_CONFIDENCE_KIND[level.confidence]))
    if level.homonym:
        children.append(child(LinkKind.HOMONYM))
    return WLink(id=link_id, kind=top_kind, left=left, right=right,
                 children=tuple(children))


def sort_links(links: tuple[WLink, ...]) -> tuple[WLink, ...]:
    return tuple(sorted(links, key=lambda l: (
        KIND_ORDER.index(l.left.ref.element_kind),
        l.left.ref.element_id, l.right.ref.element_id, l.kind.value)))


def _link_to_doc(link: WLink, with_ends: bool = True) -> dict[str, Any]:
    doc: dict[str, Any] = {"id": link.id, "kind": link.kind.value}
    if with_ends:
        doc["left"] = {"elementId": link.left.ref.element_id,
                       "elementKind": link.left.ref.element_kind}
        doc["right"] = {"elementId": link.right.ref.element_id,
                        "elementKind": link.right.ref.element_kind}
    if link.children:
        doc["children"] = [_link_to_doc(c, with_ends=False) for c in link.children]
    if with_ends:
        doc["decision"] = link.decision
    return doc


def serialize_correspondence(wm: WModel) -> str:
    """Canonical textual form: links sorted, children in build order."""
    doc = {
        "name": wm.name,
        "description": wm.description,
        "left": {"modelId": wm.left_ref.model_id, "location": wm.left_ref.location},
        "right": {"modelId": wm.right_ref.model_id, "location": wm.right_ref.location},
        "links": [_link_to_doc(l) for l in sort_links(wm.links)],
    }
    return json.dumps(doc, indent=2) + "\n"


def _link_from_doc(doc: dict[str, Any], left: WLinkEnd | None = None,
                   right: WLinkEnd | None = None) -> WLink:
    try:
        kind = LinkKind(doc["kind"])
    except (KeyError, ValueError) as exc:
        raise CorrespondenceError(f"bad link kind in {doc.get('id')!r}") from exc
    if left is None:
        try:
            left = WLinkEnd(WElementRef(doc["left"]["elementId"],
                                        doc["left"]["elementKind"]), "left")
            right = WLinkEnd(WElementRef(doc["right"]["elementId"],
                                         doc["right"]["elementKind"]), "right")
        except KeyError as exc:
            raise CorrespondenceError(f"link {doc.get('id')!r} missing ends") from exc
    assert right is not None
    decision = doc.get("decision", "pending")
    if decision not in ("pending", "validated", "deleted"):
        raise CorrespondenceError(f"bad decision {decision!r}")
    children = tuple(_link_from_doc(c, left, right)
                     for c in doc.get("children", []))
    return WLink(id=doc.get("id", ""), kind=kind, left=left, right=right,
                 children=children, decision=decision)


def parse_correspondence(text: str, left_model: Model | None = None,
                         right_model: Model | None = None) -> WModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorrespondenceError(
            f"correspondence parse error: {exc.msg} (line {exc.lineno})") from exc
    for key in ("name", "description", "left", "right", "links"):
        if key not in doc:
            raise CorrespondenceError(f"missing key {key!r}")
    wm = WModel(
        name=doc["name"], description=doc["description"],
        left_ref=WModelRef(doc["left"]["modelId"], doc["left"].get("location", "")),
        right_ref=WModelRef(doc["right"]["modelId"], doc["right"].get("location", "")),
        links=tuple(_link_from_doc(l) for l in doc["links"]),
    )
    for model, side in ((left_model, "left"), (right_model, "right")):
        if model is None:
            continue
        known = {eid for ids in model.element_ids_by_kind().values() for eid in ids}
        for link in wm.links:
            ref = (link.left if side == "left" else link.right).ref
            if ref.element_id not in known:
                raise CorrespondenceError(
                    f"link {link.id!r} references unknown {side} element "
                    f"{ref.element_id!r}")
    return wm


def apply_decision(wm: WModel, link_id: str, decision: str, actor: str,
                   timestamp: str) -> tuple[WModel, dict[str, str]]:
    """Record a validate/delete decision; returns new WModel + audit entry."""
    if decision not in ("validated", "deleted"):
        raise DecisionError(f"invalid decision {decision!r}")
    link = wm.link_by_id(link_id)
    if link.decision != "pending":
        raise DecisionError(
            f"link {link_id!r} already decided ({link.decision})")
    new_links = tuple(replace(l, decision=decision) if l.id == link_id else l
                      for l in wm.links)
    entry = {"linkId": link_id, "decision": decision, "actor": actor,
             "timestamp": timestamp}
    return replace(wm, links=new_links), entry


def link_row(link: WLink, left_names: dict[str, str],
             right_names: dict[str, str]) -> dict[str, Any]:
    """The seven display columns of the review tables, plus bookkeeping."""
    syn_child = link.find_child(LinkKind.SYNTACTIC)
    sem_child = link.find_child(LinkKind.SEMANTIC)
    if link.kind == LinkKind.HYPONYMY:
        syn_or_sem, explanation = "-", "-"
        global_col = local_col = "-"
        level_display = "4:Hyponymy"
    else:
        if syn_child is not None:
            syn_or_sem = "Syntactic"
            explanation = syn_child.children[0].kind.value
        elif sem_child is not None:
            syn_or_sem = "Semantic"
            detail = sem_child.children[0].kind
            explanation = ("Equivalence" if detail == LinkKind.EQUIV_ONTO
                           else detail.value)
        else:
            syn_or_sem, explanation = "No", "-"
        global_col = "Yes" if link.find_child(LinkKind.GLOBAL) else "No"
        local_col = "Yes" if link.find_child(LinkKind.LOCAL) else "No"
        level_display = str(link.level)
    return {
        "id": link.id,
        "elementKind": link.left.ref.element_kind,
        "leftName": left_names.get(link.left.ref.element_id,
                                   link.left.ref.element_id),
        "rightName": right_names.get(link.right.ref.element_id,
                                     link.right.ref.element_id),
        "synOrSem": syn_or_sem,
        "explanation": explanation,
        "global": global_col,
        "local": local_col,
        "level": level_display,
        "confidence": link.confidence,
        "homonym": link.find_child(LinkKind.HOMONYM) is not None,
        "hyponym": link.kind == LinkKind.HYPONYMY,
        "decision": link.decision,
    }


def element_names(model: Model) -> dict[str, str]:
    names: dict[str, str] = {}
    for c in model.classes:
        names[c.id] = c.name
        for a in c.attributes:
            names[a.id] = a.name
        for o in c.operations:
            names[o.id] = o.name
    for r in model.relations:
        names[r.id] = r.name
    for g in model.generalizations:
        sub = next((c.name for c in model.classes if c.id == g.sub_class), g.sub_class)
        sup = next((c.name for c in model.classes if c.id == g.super_class), g.super_class)
        names[g.id] = f"{sub} -|> {sup}"
    return names
