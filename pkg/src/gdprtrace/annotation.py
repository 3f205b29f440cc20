"""Concept taxonomy and standoff annotations over a legal corpus."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .corpus import CorpusError, LegalDocument, ProvisionRef, Span, slice_span
from .diagnostics import ERROR, Diagnostic, has_errors


class AnnotationError(ValueError):
    pass


class ConceptKind(enum.Enum):
    TARGET = "target"
    CONTROL = "control"
    CRITERION = "criterion"

    @property
    def is_legal_object(self) -> bool:
        return self is not ConceptKind.CRITERION

    @property
    def marker(self) -> str:
        return f"<<{self.value}>>"

    @classmethod
    def parse(cls, tag) -> "ConceptKind":
        try:
            return cls(tag)
        except ValueError:
            raise AnnotationError(f"unknown concept tag {tag!r}") from None


class AbstractionLevel(enum.Enum):
    REQUIREMENTS = "requirements"
    SYSTEM = "system"

    @classmethod
    def parse(cls, tag) -> "AbstractionLevel":
        try:
            return cls(tag)
        except ValueError:
            raise AnnotationError(f"unknown abstraction level {tag!r}") from None


@dataclass(frozen=True)
class Annotation:
    id: str
    span: Span
    quote: str
    concept: ConceptKind
    instance_hint: str | None = None
    note: str | None = None

    @property
    def provision(self) -> ProvisionRef:
        return self.span.provision


@dataclass(frozen=True)
class AnnotationSet:
    corpus_id: str
    author: str
    annotations: tuple[Annotation, ...] = ()

    def get(self, annotation_id: str) -> Annotation:
        for a in self.annotations:
            if a.id == annotation_id:
                return a
        raise KeyError(annotation_id)

    @property
    def ids(self) -> list[str]:
        return [a.id for a in self.annotations]


def _annotation_from_dict(obj, index: int) -> Annotation:
    where = f"annotation {index}"
    if not isinstance(obj, dict):
        raise AnnotationError(f"{where}: expected an object")
    for key in ("id", "provision", "start", "end", "quote", "concept"):
        if key not in obj:
            raise AnnotationError(f"{where}: missing field {key!r}")
    ann_id = obj["id"]
    if not isinstance(ann_id, str) or not ann_id:
        raise AnnotationError(f"{where}: id must be a non-empty string")
    start, end = obj["start"], obj["end"]
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (start, end)):
        raise AnnotationError(f"{ann_id}: start/end must be integers")
    if not isinstance(obj["quote"], str):
        raise AnnotationError(f"{ann_id}: quote must be a string")
    try:
        span = Span(ProvisionRef.parse(obj["provision"]), start, end)
    except (CorpusError, TypeError) as exc:
        raise AnnotationError(f"{ann_id}: {exc}") from None
    try:
        concept = ConceptKind.parse(obj["concept"])
    except AnnotationError as exc:
        raise AnnotationError(f"{ann_id}: {exc}") from None
    return Annotation(
        id=ann_id,
        span=span,
        quote=obj["quote"],
        concept=concept,
        instance_hint=obj.get("instance"),
        note=obj.get("note"),
    )


def annotation_set_from_dict(data) -> AnnotationSet:
    if not isinstance(data, dict):
        raise AnnotationError("annotation file: expected an object")
    corpus_id = data.get("corpus")
    if not isinstance(corpus_id, str) or not corpus_id:
        raise AnnotationError("annotation file: missing corpus id")
    annotations = data.get("annotations", [])
    if not isinstance(annotations, list):
        raise AnnotationError("annotation file: 'annotations' must be a list")
    return AnnotationSet(
        corpus_id=corpus_id,
        author=data.get("author", ""),
        annotations=tuple(_annotation_from_dict(a, i) for i, a in enumerate(annotations)),
    )


def parse_annotations(text: str) -> AnnotationSet:
    """Structural parse only; nothing is checked against a corpus."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AnnotationError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return annotation_set_from_dict(data)


def validate_annotations(aset: AnnotationSet, doc: LegalDocument) -> list[Diagnostic]:
    """Check every annotation invariant against ``doc``; never raises."""
    out = []
    if aset.corpus_id != doc.id:
        out.append(
            Diagnostic(
                ERROR,
                aset.author or "<set>",
                "corpus-mismatch",
                f"annotations target corpus {aset.corpus_id!r}, not {doc.id!r}",
            )
        )
    seen = set()
    for a in aset.annotations:
        if a.id in seen:
            out.append(Diagnostic(ERROR, a.id, "duplicate-id", f"duplicate annotation id {a.id!r}"))
        seen.add(a.id)
        if a.provision.document != aset.corpus_id:
            out.append(
                Diagnostic(ERROR, a.id, "corpus-mismatch", f"{a.provision} is outside {aset.corpus_id!r}")
            )
            continue
        try:
            found = slice_span(doc, a.span)
        except CorpusError as exc:
            code = "out-of-bounds" if "out of bounds" in str(exc) else "unknown-provision"
            if "no body text" in str(exc):
                code = "no-body-text"
            out.append(Diagnostic(ERROR, a.id, code, str(exc)))
            continue
        if found != a.quote:
            out.append(
                Diagnostic(
                    ERROR,
                    a.id,
                    "quote-mismatch",
                    f"quote mismatch: expected {a.quote!r}, found {found!r}",
                )
            )
    return out


def load_annotations(text: str, doc: LegalDocument) -> AnnotationSet:
    """Parse and validate; the first error aborts loading."""
    aset = parse_annotations(text)
    diagnostics = validate_annotations(aset, doc)
    if has_errors(diagnostics):
        raise AnnotationError("; ".join(str(d) for d in diagnostics if d.severity == ERROR))
    return aset


def annotation_to_dict(a: Annotation) -> dict:
    out = {
        "id": a.id,
        "provision": str(a.provision),
        "start": a.span.start,
        "end": a.span.end,
        "quote": a.quote,
        "concept": a.concept.value,
    }
    if a.instance_hint is not None:
        out["instance"] = a.instance_hint
    if a.note is not None:
        out["note"] = a.note
    return out


def annotation_set_to_dict(aset: AnnotationSet) -> dict:
    return {
        "corpus": aset.corpus_id,
        "author": aset.author,
        "annotations": [annotation_to_dict(a) for a in aset.annotations],
    }


def serialize_annotations(aset: AnnotationSet) -> str:
    return json.dumps(annotation_set_to_dict(aset), indent=2, ensure_ascii=False) + "\n"
