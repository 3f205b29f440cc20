"""Annotate GDPR-style legal text, build requirement/system content models,
trace them back to provisions, and score annotation sets against a gold standard."""

from importlib import resources

from .annotation import AbstractionLevel, Annotation, AnnotationSet, ConceptKind, load_annotations
from .corpus import LegalDocument, ProvisionRef, Span, list_provisions, parse_corpus, resolve, slice_span
from .model import ContentModel, build_model, check_model, derive_specs, trace_backward, trace_forward

__version__ = "0.1.0"


def data_path(*parts):
    """Path to a bundled fixture, e.g. ``data_path("experiment", "gold.ann.json")``."""
    return resources.files(__name__).joinpath("data", *parts)
