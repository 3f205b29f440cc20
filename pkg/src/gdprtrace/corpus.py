"""Hierarchical legal documents: articles, paragraphs and points.

Every node is addressable with a :class:`ProvisionRef` such as
``GDPR:Art13(1)(c)``. Character offsets are counted in Unicode scalar
values, which is what indexing a Python ``str`` already does.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Union

LABEL_RE = re.compile(r"[A-Za-z0-9]+")
REF_RE = re.compile(
    r"(?P<doc>[^:\s()]+):Art(?P<art>[A-Za-z0-9]+)"
    r"(?:\((?P<par>[A-Za-z0-9]+)\)(?:\((?P<pt>[A-Za-z0-9]+)\))?)?"
)


class CorpusError(ValueError):
    """Raised for malformed corpus files and unresolvable references."""


@dataclass(frozen=True)
class Point:
    letter: str
    text: str


@dataclass(frozen=True)
class Paragraph:
    number: str
    text: str = ""
    points: tuple[Point, ...] = ()


@dataclass(frozen=True)
class Article:
    number: str
    title: str = ""
    paragraphs: tuple[Paragraph, ...] = ()


@dataclass(frozen=True)
class LegalDocument:
    id: str
    title: str = ""
    articles: tuple[Article, ...] = ()


Node = Union[Article, Paragraph, Point]


@dataclass(frozen=True)
class ProvisionRef:
    document: str
    article: str
    paragraph: str | None = None
    point: str | None = None

    def __post_init__(self):
        if self.point is not None and self.paragraph is None:
            raise CorpusError(f"point {self.point!r} given without a paragraph")

    @classmethod
    def parse(cls, text: str) -> "ProvisionRef":
        m = REF_RE.fullmatch(text)
        if m is None:
            raise CorpusError(f"malformed provision reference {text!r}")
        return cls(m["doc"], m["art"], m["par"], m["pt"])

    def __str__(self) -> str:
        out = f"{self.document}:Art{self.article}"
        if self.paragraph is not None:
            out += f"({self.paragraph})"
        if self.point is not None:
            out += f"({self.point})"
        return out

    def contains(self, other: "ProvisionRef") -> bool:
        """True if ``other`` is this provision or one of its descendants."""
        if (self.document, self.article) != (other.document, other.article):
            return False
        if self.paragraph is None:
            return True
        if self.paragraph != other.paragraph:
            return False
        return self.point is None or self.point == other.point


@dataclass(frozen=True)
class Span:
    provision: ProvisionRef
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise CorpusError(
                f"invalid span [{self.start}, {self.end}) on {self.provision}"
            )

    def __len__(self) -> int:
        return self.end - self.start

    def overlap(self, other: "Span") -> int:
        if self.provision != other.provision:
            return 0
        return max(0, min(self.end, other.end) - max(self.start, other.start))


# -- parsing -----------------------------------------------------------------


def _require(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise CorpusError(f"{where}: expected an object")
    if key not in obj:
        raise CorpusError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise CorpusError(f"{where}: field {key!r} has the wrong type")
    return value


def _label(obj, key, where):
    value = _require(obj, key, str, where)
    if not LABEL_RE.fullmatch(value):
        raise CorpusError(f"{where}: label {value!r} must be alphanumeric")
    return value


def _check_unique(labels, what, where):
    seen = set()
    for label in labels:
        if label in seen:
            raise CorpusError(f"{where}: duplicate {what} label {label!r}")
        seen.add(label)


def _point(obj, where) -> Point:
    letter = _label(obj, "letter", where)
    text = _require(obj, "text", str, where)
    if not text:
        raise CorpusError(f"{where}: point ({letter}) has empty text")
    return Point(letter, text)


def _paragraph(obj, where) -> Paragraph:
    number = _label(obj, "number", where)
    here = f"{where}({number})"
    text = obj.get("text", "") if isinstance(obj, dict) else ""
    if not isinstance(text, str):
        raise CorpusError(f"{here}: field 'text' has the wrong type")
    points = tuple(
        _point(p, f"{here}[point {i}]")
        for i, p in enumerate(obj.get("points", []) or [])
    )
    _check_unique((p.letter for p in points), "point", here)
    if not text and not points:
        raise CorpusError(f"{here}: paragraph has neither text nor points")
    return Paragraph(number, text, points)


def _article(obj, where) -> Article:
    number = _label(obj, "number", where)
    here = f"{where}:Art{number}"
    title = obj.get("title", "")
    paragraphs = tuple(
        _paragraph(p, here) for p in _require(obj, "paragraphs", list, here)
    )
    _check_unique((p.number for p in paragraphs), "paragraph", here)
    return Article(number, title, paragraphs)


def document_from_dict(data) -> LegalDocument:
    doc_id = _require(data, "id", str, "corpus")
    if not doc_id:
        raise CorpusError("corpus: empty document id")
    if ":" in doc_id or not REF_RE.fullmatch(f"{doc_id}:Art1"):
        raise CorpusError(f"corpus: invalid document id {doc_id!r}")
    articles = tuple(
        _article(a, doc_id) for a in _require(data, "articles", list, "corpus")
    )
    _check_unique((a.number for a in articles), "article", doc_id)
    return LegalDocument(doc_id, data.get("title", ""), articles)


def parse_corpus(text: str) -> LegalDocument:
    """Parse a corpus file into a :class:`LegalDocument`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return document_from_dict(data)


def document_to_dict(doc: LegalDocument) -> dict:
    return {
        "id": doc.id,
        "title": doc.title,
        "articles": [
            {
                "number": a.number,
                "title": a.title,
                "paragraphs": [
                    {
                        "number": p.number,
                        "text": p.text,
                        "points": [
                            {"letter": pt.letter, "text": pt.text} for pt in p.points
                        ],
                    }
                    for p in a.paragraphs
                ],
            }
            for a in doc.articles
        ],
    }


def serialize_corpus(doc: LegalDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2, ensure_ascii=False) + "\n"


# -- navigation --------------------------------------------------------------


def resolve(doc: LegalDocument, ref: ProvisionRef) -> Node:
    """Return the article, paragraph or point named by ``ref``."""
    if ref.document != doc.id:
        raise CorpusError(
            f"reference {ref} names document {ref.document!r}, not {doc.id!r}"
        )
    article = next((a for a in doc.articles if a.number == ref.article), None)
    if article is None:
        raise CorpusError(f"unknown article in {ref}")
    if ref.paragraph is None:
        return article
    paragraph = next((p for p in article.paragraphs if p.number == ref.paragraph), None)
    if paragraph is None:
        raise CorpusError(f"unknown paragraph in {ref}")
    if ref.point is None:
        return paragraph
    point = next((p for p in paragraph.points if p.letter == ref.point), None)
    if point is None:
        raise CorpusError(f"unknown point in {ref}")
    return point


def body_text(node: Node) -> str:
    """Body text of a node; articles carry none."""
    return "" if isinstance(node, Article) else node.text


def slice_span(doc: LegalDocument, span: Span) -> str:
    text = body_text(resolve(doc, span.provision))
    if not text:
        raise CorpusError(f"{span.provision} has no body text")
    if span.end > len(text):
        raise CorpusError(
            f"span [{span.start}, {span.end}) out of bounds for {span.provision} "
            f"(length {len(text)})"
        )
    return text[span.start : span.end]


def list_provisions(doc: LegalDocument) -> list[ProvisionRef]:
    """Refs of every node carrying body text, depth-first in document order."""
    out = []
    for article in doc.articles:
        for paragraph in article.paragraphs:
            if paragraph.text:
                out.append(ProvisionRef(doc.id, article.number, paragraph.number))
            for point in paragraph.points:
                out.append(
                    ProvisionRef(doc.id, article.number, paragraph.number, point.letter)
                )
    return out


def document_order(doc: LegalDocument) -> dict[ProvisionRef, int]:
    """Position of every addressable node (articles included) in document order."""
    order = {}
    for article in doc.articles:
        order[ProvisionRef(doc.id, article.number)] = len(order)
        for paragraph in article.paragraphs:
            order[ProvisionRef(doc.id, article.number, paragraph.number)] = len(order)
            for point in paragraph.points:
                ref = ProvisionRef(doc.id, article.number, paragraph.number, point.letter)
                order[ref] = len(order)
    return order


def natural_key(ref: ProvisionRef):
    """Sort key approximating document order when no document is at hand."""

    def split(label):
        if label is None:
            return ()
        return tuple(
            (0, int(tok), "") if tok.isdigit() else (1, 0, tok)
            for tok in re.findall(r"\d+|\D+", label)
        )

    return (ref.document, split(ref.article), split(ref.paragraph), split(ref.point))
