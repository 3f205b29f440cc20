"""Content model: concept instances on two abstraction levels, typed
relations between them, and trace links back to the provisions they came from.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import re
from dataclasses import dataclass, field

from .annotation import (
    AbstractionLevel,
    Annotation,
    AnnotationError,
    AnnotationSet,
    ConceptKind,
    annotation_set_from_dict,
    annotation_set_to_dict,
    validate_annotations,
)
from .corpus import (
    LegalDocument,
    ProvisionRef,
    document_order,
    list_provisions,
    natural_key,
    resolve,
)
from .diagnostics import ERROR, WARNING, Diagnostic, has_errors


class ModelError(ValueError):
    pass


class RelationKind(enum.Enum):
    ADDRESSES = "addresses"
    QUALIFIES = "qualifies"
    DEPENDS_ON = "depends_on"
    REFINES = "refines"


def normalize_name(name: str) -> str:
    return re.sub(r"\s+", " ", name).strip().lower()


@dataclass(frozen=True)
class Instance:
    id: str
    name: str
    concept: ConceptKind
    level: AbstractionLevel
    supported_by: tuple[str, ...] = ()


@dataclass(frozen=True)
class Relation:
    kind: RelationKind
    source: str
    target: str
    supported_by: tuple[str, ...] = ()
    note: str | None = None


@dataclass(frozen=True)
class TraceLink:
    provision: ProvisionRef
    instance: str
    via: str


@dataclass(frozen=True)
class ContentModel:
    corpus_id: str
    instances: tuple[Instance, ...] = ()
    relations: tuple[Relation, ...] = ()
    annotation_sets: tuple[AnnotationSet, ...] = ()

    def instance(self, instance_id: str) -> Instance:
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        raise ModelError(f"unknown instance {instance_id!r}")

    def annotation_index(self) -> dict[str, Annotation]:
        index = {}
        for aset in self.annotation_sets:
            for a in aset.annotations:
                index.setdefault(a.id, a)
        return index


@dataclass(frozen=True)
class SpecDerivation:
    requirements: tuple[Instance, ...]
    components: tuple[Instance, ...]


@dataclass(frozen=True)
class ForwardTrace:
    requirements: tuple[Instance, ...] = ()
    components: tuple[Instance, ...] = ()
    # reached only through a Refines edge from one of ``requirements``
    indirect: tuple[Instance, ...] = ()


@dataclass(frozen=True)
class TraceMatrix:
    rows: tuple[ProvisionRef, ...]
    columns: tuple[Instance, ...]
    cells: tuple[tuple[bool, ...], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["provision"] + [c.name for c in self.columns])
        for ref, row in zip(self.rows, self.cells):
            writer.writerow([str(ref)] + ["1" if v else "0" for v in row])
        return buf.getvalue()


@dataclass(frozen=True)
class CoverageReport:
    covered: tuple[ProvisionRef, ...]
    uncovered: tuple[ProvisionRef, ...]

    @property
    def ratio(self) -> float:
        total = len(self.covered) + len(self.uncovered)
        return len(self.covered) / total if total else 0.0


# -- declarations and serialization -------------------------------------------


@dataclass
class Declarations:
    instances: list[Instance] = field(default_factory=list)
    relations: list[Relation] = field(default_factory=list)


def _id_list(value, where):
    if value is None:
        return ()
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ModelError(f"{where}: supported_by must be a list of annotation ids")
    return tuple(value)


def _instance_from_dict(obj, i) -> Instance:
    where = f"instance {i}"
    if not isinstance(obj, dict):
        raise ModelError(f"{where}: expected an object")
    for key in ("id", "name", "concept", "level"):
        if not isinstance(obj.get(key), str):
            raise ModelError(f"{where}: missing or non-text field {key!r}")
    try:
        concept = ConceptKind.parse(obj["concept"])
        level = AbstractionLevel.parse(obj["level"])
    except AnnotationError as exc:
        raise ModelError(f"{obj['id']}: {exc}") from None
    return Instance(
        obj["id"], obj["name"], concept, level, _id_list(obj.get("supported_by"), obj["id"])
    )


def _relation_from_dict(obj, i) -> Relation:
    where = f"relation {i}"
    if not isinstance(obj, dict):
        raise ModelError(f"{where}: expected an object")
    for key in ("kind", "from", "to"):
        if not isinstance(obj.get(key), str):
            raise ModelError(f"{where}: missing or non-text field {key!r}")
    try:
        kind = RelationKind(obj["kind"])
    except ValueError:
        raise ModelError(f"{where}: unknown relation kind {obj['kind']!r}") from None
    return Relation(
        kind, obj["from"], obj["to"], _id_list(obj.get("supported_by"), where), obj.get("note")
    )


def _load_json(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(
            f"{what}: syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def declarations_from_dict(data) -> Declarations:
    if not isinstance(data, dict):
        raise ModelError("declarations: expected an object")
    return Declarations(
        [_instance_from_dict(o, i) for i, o in enumerate(data.get("instances", []))],
        [_relation_from_dict(o, i) for i, o in enumerate(data.get("relations", []))],
    )


def parse_declarations(text: str) -> Declarations:
    return declarations_from_dict(_load_json(text, "declarations"))


def _instance_to_dict(inst: Instance) -> dict:
    return {
        "id": inst.id,
        "name": inst.name,
        "concept": inst.concept.value,
        "level": inst.level.value,
        "supported_by": list(inst.supported_by),
    }


def _relation_to_dict(rel: Relation) -> dict:
    out = {"kind": rel.kind.value, "from": rel.source, "to": rel.target}
    if rel.supported_by:
        out["supported_by"] = list(rel.supported_by)
    if rel.note is not None:
        out["note"] = rel.note
    return out


def model_to_dict(model: ContentModel) -> dict:
    return {
        "corpus": model.corpus_id,
        "instances": [_instance_to_dict(i) for i in model.instances],
        "relations": [_relation_to_dict(r) for r in model.relations],
        "annotation_sets": [annotation_set_to_dict(s) for s in model.annotation_sets],
    }


def serialize_model(model: ContentModel) -> str:
    return json.dumps(model_to_dict(model), indent=2, ensure_ascii=False) + "\n"


def parse_model(text: str) -> ContentModel:
    """Load a model file without checking its invariants (see check_model)."""
    data = _load_json(text, "model")
    if not isinstance(data, dict) or not isinstance(data.get("corpus"), str):
        raise ModelError("model: expected an object with a 'corpus' id")
    decls = declarations_from_dict(data)
    try:
        sets = tuple(annotation_set_from_dict(s) for s in data.get("annotation_sets", []))
    except AnnotationError as exc:
        raise ModelError(f"model: {exc}") from None
    return ContentModel(data["corpus"], tuple(decls.instances), tuple(decls.relations), sets)


# -- checking ----------------------------------------------------------------

_TYPING_RULES = {
    RelationKind.ADDRESSES: "addresses must run from a control to a target",
    RelationKind.QUALIFIES: "qualifies must run from a criterion to a control or target",
    RelationKind.DEPENDS_ON: "depends_on must join two controls",
    RelationKind.REFINES: "refines must run from a system-level to a requirements-level instance",
}


def relation_well_typed(rel: Relation, source: Instance, target: Instance) -> bool:
    if rel.kind is RelationKind.ADDRESSES:
        return source.concept is ConceptKind.CONTROL and target.concept is ConceptKind.TARGET
    if rel.kind is RelationKind.QUALIFIES:
        return source.concept is ConceptKind.CRITERION and target.concept.is_legal_object
    if rel.kind is RelationKind.DEPENDS_ON:
        return source.concept is ConceptKind.CONTROL and target.concept is ConceptKind.CONTROL
    return source.level is AbstractionLevel.SYSTEM and target.level is AbstractionLevel.REQUIREMENTS


def _structural_errors(model: ContentModel) -> list[Diagnostic]:
    out = []
    annotations = model.annotation_index()
    seen_ann = set()
    for aset in model.annotation_sets:
        for a in aset.annotations:
            if a.id in seen_ann:
                out.append(
                    Diagnostic(ERROR, a.id, "duplicate-annotation", f"annotation id {a.id!r} appears in more than one place")
                )
            seen_ann.add(a.id)

    by_id, names = {}, {}
    for inst in model.instances:
        if inst.id in by_id:
            out.append(Diagnostic(ERROR, inst.id, "duplicate-instance", f"duplicate instance id {inst.id!r}"))
        by_id.setdefault(inst.id, inst)
        key = normalize_name(inst.name)
        if not key:
            out.append(Diagnostic(ERROR, inst.id, "empty-name", "instance name is empty"))
        elif key in names:
            out.append(
                Diagnostic(
                    ERROR, inst.id, "duplicate-name", f"name {inst.name!r} already used by {names[key]}"
                )
            )
        else:
            names[key] = inst.id
        if not inst.supported_by:
            out.append(
                Diagnostic(ERROR, inst.id, "ungrounded", "instance is not supported by any annotation")
            )
        for ann_id in inst.supported_by:
            if ann_id not in annotations:
                out.append(Diagnostic(ERROR, inst.id, "unknown-annotation", f"unknown annotation {ann_id!r}"))

    pairs = set()
    for rel in model.relations:
        subject = f"{rel.kind.value}({rel.source}->{rel.target})"
        missing = [i for i in (rel.source, rel.target) if i not in by_id]
        for i in missing:
            out.append(Diagnostic(ERROR, subject, "dangling-relation", f"unknown instance {i!r}"))
        for ann_id in rel.supported_by:
            if ann_id not in annotations:
                out.append(Diagnostic(ERROR, subject, "unknown-annotation", f"unknown annotation {ann_id!r}"))
        if rel.source == rel.target:
            out.append(Diagnostic(ERROR, subject, "self-loop", "relation joins an instance to itself"))
        if (rel.kind, rel.source, rel.target) in pairs:
            out.append(Diagnostic(ERROR, subject, "duplicate-relation", "relation declared twice"))
        pairs.add((rel.kind, rel.source, rel.target))
        if not missing and not relation_well_typed(rel, by_id[rel.source], by_id[rel.target]):
            out.append(Diagnostic(ERROR, subject, "kind-typing", _TYPING_RULES[rel.kind]))
    return out


def check_model(model: ContentModel) -> list[Diagnostic]:
    """Errors for broken invariants, warnings for thin spots in the model."""
    out = _structural_errors(model)

    outgoing: dict[str, set[RelationKind]] = {}
    for rel in model.relations:
        outgoing.setdefault(rel.source, set()).add(rel.kind)
    for inst in model.instances:
        kinds = outgoing.get(inst.id, set())
        if inst.concept is ConceptKind.CRITERION and RelationKind.QUALIFIES not in kinds:
            out.append(
                Diagnostic(WARNING, inst.id, "unqualified-criterion", f"criterion {inst.name!r} qualifies nothing")
            )
        if (
            inst.level is AbstractionLevel.SYSTEM
            and inst.concept is ConceptKind.CONTROL
            and not kinds & {RelationKind.ADDRESSES, RelationKind.REFINES}
        ):
            out.append(
                Diagnostic(
                    WARNING,
                    inst.id,
                    "unanchored-control",
                    f"system control {inst.name!r} neither addresses a target nor refines a requirement",
                )
            )

    bound = {a for inst in model.instances for a in inst.supported_by}
    per_provision: dict[ProvisionRef, list[str]] = {}
    for aset in model.annotation_sets:
        for a in aset.annotations:
            per_provision.setdefault(a.provision, []).append(a.id)
    for ref in sorted(per_provision, key=natural_key):
        if not any(a in bound for a in per_provision[ref]):
            out.append(
                Diagnostic(
                    WARNING,
                    str(ref),
                    "unallocated-provision",
                    "annotations here support no model instance",
                )
            )
    return out


# -- building ----------------------------------------------------------------


def build_model(
    sets: list[AnnotationSet], decls: Declarations | str | dict, doc: LegalDocument
) -> ContentModel:
    """Bind annotations to declared instances and type-check the result.

    Annotations are bound to an instance when they are listed in its
    ``supported_by`` or when their instance hint matches its name. An
    annotation listed explicitly anywhere is never bound through its hint.
    """
    if isinstance(decls, str):
        decls = parse_declarations(decls)
    elif isinstance(decls, dict):
        decls = declarations_from_dict(decls)

    for aset in sets:
        problems = [d for d in validate_annotations(aset, doc) if d.severity == ERROR]
        if problems:
            raise ModelError("; ".join(str(d) for d in problems))

    explicit = {a for inst in decls.instances for a in inst.supported_by}
    by_name = {}
    for inst in decls.instances:
        by_name.setdefault(normalize_name(inst.name), inst.id)
    hinted: dict[str, list[str]] = {}
    for aset in sets:
        for a in aset.annotations:
            if a.instance_hint is None or a.id in explicit:
                continue
            target = by_name.get(normalize_name(a.instance_hint))
            if target is not None:
                hinted.setdefault(target, []).append(a.id)

    instances = []
    for inst in decls.instances:
        extra = [a for a in hinted.get(inst.id, []) if a not in inst.supported_by]
        instances.append(
            Instance(inst.id, inst.name, inst.concept, inst.level, inst.supported_by + tuple(extra))
        )
    model = ContentModel(doc.id, tuple(instances), tuple(decls.relations), tuple(sets))
    errors = _structural_errors(model)
    if errors:
        raise ModelError("; ".join(str(d) for d in errors))
    return model


# -- derivation and tracing --------------------------------------------------


def _require_clean(model: ContentModel):
    diagnostics = check_model(model)
    if has_errors(diagnostics):
        raise ModelError(
            "model has errors: " + "; ".join(str(d) for d in diagnostics if d.severity == ERROR)
        )


def derive_specs(model: ContentModel) -> SpecDerivation:
    _require_clean(model)
    return SpecDerivation(
        requirements=tuple(i for i in model.instances if i.level is AbstractionLevel.REQUIREMENTS),
        components=tuple(i for i in model.instances if i.level is AbstractionLevel.SYSTEM),
    )


def trace_links(model: ContentModel) -> list[TraceLink]:
    annotations = model.annotation_index()
    return [
        TraceLink(annotations[a].provision, inst.id, a)
        for inst in model.instances
        for a in inst.supported_by
        if a in annotations
    ]


def trace_forward(
    model: ContentModel, ref: ProvisionRef, doc: LegalDocument | None = None
) -> ForwardTrace:
    """Instances grounded in ``ref`` or any provision beneath it."""
    if doc is not None:
        resolve(doc, ref)
    hit = {link.instance for link in trace_links(model) if ref.contains(link.provision)}
    reqs = [i for i in model.instances if i.id in hit and i.level is AbstractionLevel.REQUIREMENTS]
    comps = [i for i in model.instances if i.id in hit and i.level is AbstractionLevel.SYSTEM]
    req_ids = {i.id for i in reqs}
    via_refines = {
        r.source
        for r in model.relations
        if r.kind is RelationKind.REFINES and r.target in req_ids
    }
    indirect = [i for i in model.instances if i.id in via_refines and i.id not in hit]
    return ForwardTrace(tuple(reqs), tuple(comps), tuple(indirect))


def trace_backward(
    model: ContentModel, instance_id: str, doc: LegalDocument | None = None
) -> list[ProvisionRef]:
    """Distinct provisions supporting an instance, in document order."""
    model.instance(instance_id)
    refs = {link.provision for link in trace_links(model) if link.instance == instance_id}
    if doc is not None:
        order = document_order(doc)
        return sorted(refs, key=lambda r: (order.get(r, len(order)), natural_key(r)))
    return sorted(refs, key=natural_key)


def trace_matrix(model: ContentModel, doc: LegalDocument) -> TraceMatrix:
    rows = tuple(list_provisions(doc))
    if model.instances:
        spec = derive_specs(model)
        columns = spec.requirements + spec.components
    else:
        columns = ()
    backward = {inst.id: set(trace_backward(model, inst.id)) for inst in columns}
    cells = tuple(tuple(ref in backward[inst.id] for inst in columns) for ref in rows)
    return TraceMatrix(rows, columns, cells)


def coverage(model: ContentModel, doc: LegalDocument) -> CoverageReport:
    bound = {link.provision for link in trace_links(model)}
    refs = list_provisions(doc)
    return CoverageReport(
        covered=tuple(r for r in refs if r in bound),
        uncovered=tuple(r for r in refs if r not in bound),
    )
