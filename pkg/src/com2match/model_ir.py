"""In-memory representation and parsing of simplified UML class-diagram models.

Models are read from a neutral JSON exchange format and are immutable after
parsing, so they can be shared freely across concurrent readers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
import re
from typing import Any, Iterable

MULTIPLICITY_RE = re.compile(r"^(?:\*|\d+|\d+\.\.(?:\d+|\*))$")

_KIND_ORDER = ("class", "attribute", "operation", "relation", "generalization")


class ModelFormatError(ValueError):
    """Raised when a model document is malformed or violates an invariant."""


@dataclass(frozen=True)
class AttributeDef:
    id: str
    name: str
    type_name: str


@dataclass(frozen=True)
class OperationDef:
    id: str
    name: str
    return_type: str
    parameters: tuple[tuple[str, str], ...] = ()

    @property
    def signature(self) -> tuple[str, ...]:
        return (self.name,) + tuple(t for _, t in self.parameters)


@dataclass(frozen=True)
class ClassDef:
    id: str
    name: str
    attributes: tuple[AttributeDef, ...] = ()
    operations: tuple[OperationDef, ...] = ()


@dataclass(frozen=True)
class RelationDef:
    id: str
    name: str
    source_class: str
    target_class: str
    source_mult: str
    target_mult: str


@dataclass(frozen=True)
class GeneralizationDef:
    id: str
    sub_class: str
    super_class: str


@dataclass(frozen=True)
class Violation:
    element_id: str
    invariant: str
    message: str


@dataclass(frozen=True)
class Model:
    id: str
    name: str
    classes: tuple[ClassDef, ...] = ()
    relations: tuple[RelationDef, ...] = ()
    generalizations: tuple[GeneralizationDef, ...] = ()

    def class_by_id(self, class_id: str) -> ClassDef:
        for c in self.classes:
            if c.id == class_id:
                return c
        raise KeyError(f"unknown class id {class_id!r} in model {self.id!r}")

    def class_by_name(self, name: str) -> ClassDef | None:
        for c in self.classes:
            if c.name == name:
                return c
        return None

    def superclass_ids(self, class_id: str) -> tuple[str, ...]:
        """Transitive superclasses of a class, nearest first (BFS order)."""
        seen: list[str] = []
        frontier = [class_id]
        while frontier:
            current = frontier.pop(0)
            for g in self.generalizations:
                if g.sub_class == current and g.super_class not in seen:
                    seen.append(g.super_class)
                    frontier.append(g.super_class)
        return tuple(seen)

    def relations_of(self, class_id: str, include_superclasses: bool = False) -> tuple[RelationDef, ...]:
        ids = {class_id}
        if include_superclasses:
            ids.update(self.superclass_ids(class_id))
        return tuple(r for r in self.relations
                     if r.source_class in ids or r.target_class in ids)

    def element_ids_by_kind(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {k: [] for k in _KIND_ORDER}
        for c in self.classes:
            out["class"].append(c.id)
            out["attribute"].extend(a.id for a in c.attributes)
            out["operation"].extend(o.id for o in c.operations)
        out["relation"].extend(r.id for r in self.relations)
        out["generalization"].extend(g.id for g in self.generalizations)
        return out


def parse_multiplicity(text: str) -> tuple[int, int | None]:
    """Parse a multiplicity into a (lower, upper) interval; upper None = unbounded."""
    if not MULTIPLICITY_RE.match(text):
        raise ModelFormatError(f"invalid multiplicity {text!r}")
    if text == "*":
        return (0, None)
    if ".." in text:
        lo, hi = text.split("..")
        return (int(lo), None if hi == "*" else int(hi))
    n = int(text)
    return (n, n)


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ModelFormatError(f"unknown keys {sorted(unknown)} in {where}")
    missing = required - set(obj)
    if missing:
        raise ModelFormatError(f"missing keys {sorted(missing)} in {where}")


def parse_model(text: str, enforce_invariants: bool = True) -> Model:
    """Parse the JSON model exchange format into a validated Model.

    With enforce_invariants=False the structural document checks still run,
    but invariant violations are left for validate_model to report.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"model parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    _require_keys(doc, {"id", "name", "classes", "relations", "generalizations"},
                  {"id", "name"}, "model")
    model_id = _text(doc, "id", "model")
    classes = []
    for c in doc.get("classes", []):
        _require_keys(c, {"id", "name", "attributes", "operations"}, {"name"},
                      "class entry")
        cname = _text(c, "name", "class")
        cid = c.get("id") or f"{model_id}.class.{cname}"
        attrs = []
        for a in c.get("attributes", []):
            _require_keys(a, {"id", "name", "type"}, {"name", "type"},
                          f"attribute of class {cname!r}")
            if not a["name"] or not a["type"]:
                raise ModelFormatError(
                    f"attribute of class {cname!r} has empty name or type")
            attrs.append(AttributeDef(
                id=a.get("id") or f"{model_id}.attribute.{cname}.{a['name']}",
                name=a["name"], type_name=a["type"]))
        ops = []
        for o in c.get("operations", []):
            _require_keys(o, {"id", "name", "returns", "params"},
                          {"name", "returns"}, f"operation of class {cname!r}")
            params = []
            for p in o.get("params", []):
                _require_keys(p, {"name", "type"}, {"name", "type"},
                              f"parameter of operation {o['name']!r}")
                params.append((p["name"], p["type"]))
            ops.append(OperationDef(
                id=o.get("id") or f"{model_id}.operation.{cname}.{o['name']}",
                name=o["name"], return_type=o["returns"],
                parameters=tuple(params)))
        classes.append(ClassDef(id=cid, name=cname,
                                attributes=tuple(attrs), operations=tuple(ops)))
    relations = []
    for r in doc.get("relations", []):
        _require_keys(r, {"id", "name", "source", "target", "sourceMult", "targetMult"},
                      {"name", "source", "target", "sourceMult", "targetMult"},
                      "relation entry")
        relations.append(RelationDef(
            id=r.get("id") or f"{model_id}.relation.{r['name']}",
            name=r["name"], source_class=r["source"], target_class=r["target"],
            source_mult=r["sourceMult"], target_mult=r["targetMult"]))
    generalizations = []
    for g in doc.get("generalizations", []):
        _require_keys(g, {"id", "sub", "super"}, {"sub", "super"},
                      "generalization entry")
        generalizations.append(GeneralizationDef(
            id=g.get("id") or f"{model_id}.generalization.{g['sub']}.{g['super']}",
            sub_class=g["sub"], super_class=g["super"]))
    model = Model(id=model_id, name=_text(doc, "name", "model"),
                  classes=tuple(classes), relations=tuple(relations),
                  generalizations=tuple(generalizations))
    if enforce_invariants:
        violations = validate_model(model)
        if violations:
            raise ModelFormatError("; ".join(v.message for v in violations))
    return model


def _text(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        raise ModelFormatError(f"{where} field {key!r} must be a nonempty string")
    return value


def serialize_model(model: Model) -> str:
    """Serialize a Model back to the exchange format (canonical layout)."""
    doc: dict[str, Any] = {
        "id": model.id,
        "name": model.name,
        "classes": [
            {
                "id": c.id,
                "name": c.name,
                "attributes": [
                    {"id": a.id, "name": a.name, "type": a.type_name}
                    for a in c.attributes
                ],
                "operations": [
                    {"id": o.id, "name": o.name, "returns": o.return_type,
                     "params": [{"name": n, "type": t} for n, t in o.parameters]}
                    for o in c.operations
                ],
            }
            for c in model.classes
        ],
        "relations": [
            {"id": r.id, "name": r.name, "source": r.source_class,
             "target": r.target_class, "sourceMult": r.source_mult,
             "targetMult": r.target_mult}
            for r in model.relations
        ],
        "generalizations": [
            {"id": g.id, "sub": g.sub_class, "super": g.super_class}
            for g in model.generalizations
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def validate_model(model: Model) -> list[Violation]:
    """Check every Model invariant; violations are data, not errors."""
    violations: list[Violation] = []
    names_seen: dict[str, str] = {}
    ids_seen: set[str] = set()
    class_ids = {c.id for c in model.classes}
    for c in model.classes:
        if c.name in names_seen:
            violations.append(Violation(
                c.id, "unique-class-name",
                f"duplicate class name {c.name!r} (also {names_seen[c.name]})"))
        else:
            names_seen[c.name] = c.id
        if c.id in ids_seen:
            violations.append(Violation(c.id, "unique-id",
                                        f"duplicate element id {c.id!r}"))
        ids_seen.add(c.id)
        attr_names: set[str] = set()
        for a in c.attributes:
            if a.name in attr_names:
                violations.append(Violation(
                    a.id, "unique-attribute-name",
                    f"duplicate attribute {a.name!r} in class {c.name!r}"))
            attr_names.add(a.name)
            if not a.name or not a.type_name:
                violations.append(Violation(
                    a.id, "attribute-nonempty",
                    f"attribute in class {c.name!r} has empty name or type"))
        signatures: set[tuple[str, ...]] = set()
        for o in c.operations:
            if o.signature in signatures:
                violations.append(Violation(
                    o.id, "unique-operation-signature",
                    f"duplicate operation signature {o.signature} in class {c.name!r}"))
            signatures.add(o.signature)
            param_names = [n for n, _ in o.parameters]
            if len(param_names) != len(set(param_names)):
                violations.append(Violation(
                    o.id, "unique-parameter-names",
                    f"duplicate parameter name in operation {o.name!r}"))
    for r in model.relations:
        for endpoint in (r.source_class, r.target_class):
            if endpoint not in class_ids:
                violations.append(Violation(
                    r.id, "relation-endpoint-exists",
                    f"relation {r.name!r} references unknown class {endpoint!r}"))
        for mult in (r.source_mult, r.target_mult):
            if not MULTIPLICITY_RE.match(mult):
                violations.append(Violation(
                    r.id, "multiplicity-grammar",
                    f"relation {r.name!r} has invalid multiplicity {mult!r}"))
    for g in model.generalizations:
        if g.sub_class == g.super_class:
            violations.append(Violation(
                g.id, "generalization-irreflexive",
                f"generalization {g.id!r} relates a class to itself"))
        for endpoint in (g.sub_class, g.super_class):
            if endpoint not in class_ids:
                violations.append(Violation(
                    g.id, "generalization-endpoint-exists",
                    f"generalization {g.id!r} references unknown class {endpoint!r}"))
    sorter: TopologicalSorter = TopologicalSorter()
    for cid in class_ids:
        sorter.add(cid)
    for g in model.generalizations:
        if g.sub_class in class_ids and g.super_class in class_ids:
            sorter.add(g.sub_class, g.super_class)
    try:
        sorter.prepare()
    except CycleError as exc:
        cycle = exc.args[1] if len(exc.args) > 1 else []
        violations.append(Violation(
            ",".join(cycle), "generalization-acyclic",
            f"generalization cycle: {' -> '.join(cycle)}"))
    return violations


def flattened_members(model: Model, class_id: str) -> tuple[tuple[AttributeDef, ...], tuple[OperationDef, ...]]:
    """Own members plus inherited ones; own members shadow inherited by name."""
    cls = model.class_by_id(class_id)
    attrs: list[AttributeDef] = list(cls.attributes)
    ops: list[OperationDef] = list(cls.operations)
    attr_names = {a.name for a in attrs}
    op_names = {o.name for o in ops}
    for super_id in model.superclass_ids(class_id):
        sup = model.class_by_id(super_id)
        for a in sup.attributes:
            if a.name not in attr_names:
                attrs.append(a)
                attr_names.add(a.name)
        for o in sup.operations:
            if o.name not in op_names:
                ops.append(o)
                op_names.add(o.name)
    return tuple(attrs), tuple(ops)
