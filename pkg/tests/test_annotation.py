import json

import pytest

from conftest import PARTICIPANTS, read
from gdprtrace.annotation import (
    AnnotationError,
    ConceptKind,
    load_annotations,
    parse_annotations,
    serialize_annotations,
    validate_annotations,
)


def gold_dict():
    return json.loads(read("experiment", "gold.ann.json"))


def test_gold_sets_clean(doc, gold_set, derivation_set):
    assert validate_annotations(gold_set, doc) == []
    assert validate_annotations(derivation_set, doc) == []
    assert len(gold_set.annotations) == 10


@pytest.mark.parametrize("who", PARTICIPANTS)
def test_participant_sets_clean(doc, who):
    aset = parse_annotations(read("experiment", "participants", f"{who}.ann.json"))
    assert validate_annotations(aset, doc) == []


@pytest.mark.parametrize(
    "quote",
    [
        "obtain from the controller confirmation",
        "access to the personal data",
        "the purposes of the processing for which the personal data are intended",
    ],
)
def test_verbatim_quotes(gold_set, quote):
    assert quote in {a.quote for a in gold_set.annotations}


def test_round_trip(doc, gold_set, derivation_set):
    for aset in (gold_set, derivation_set):
        assert load_annotations(serialize_annotations(aset), doc) == aset


def test_quote_mismatch_names_both(doc):
    data = gold_dict()
    data["annotations"][0]["quote"] = "something else"
    diags = validate_annotations(parse_annotations(json.dumps(data)), doc)
    assert [d.code for d in diags] == ["quote-mismatch"]
    assert "something else" in diags[0].message
    with pytest.raises(AnnotationError):
        load_annotations(json.dumps(data), doc)


@pytest.mark.parametrize(
    "mutate, code",
    [
        (lambda a: a.update(id="A15.1"), "duplicate-id"),
        (lambda a: a.update(end=10_000), "out-of-bounds"),
        (lambda a: a.update(provision="GDPR:Art99(1)"), "unknown-provision"),
        (lambda a: a.update(provision="GDPR:Art13"), "no-body-text"),
    ],
)
def test_invalid_annotations(doc, mutate, code):
    data = gold_dict()
    mutate(data["annotations"][0])
    codes = {d.code for d in validate_annotations(parse_annotations(json.dumps(data)), doc)}
    assert code in codes


def test_corpus_mismatch(doc):
    data = gold_dict()
    data["corpus"] = "CCPA"
    diags = validate_annotations(parse_annotations(json.dumps(data)), doc)
    assert {d.code for d in diags} == {"corpus-mismatch"}
    assert diags[0].subject == "gold" and "CCPA" in diags[0].message


@pytest.mark.parametrize(
    "patch",
    [
        {"concept": "actor"},
        {"start": "3"},
        {"provision": "Art13(1)"},
        {"start": 5, "end": 5},
    ],
)
def test_structural_rejects(patch):
    data = gold_dict()
    data["annotations"][0].update(patch)
    with pytest.raises(AnnotationError):
        parse_annotations(json.dumps(data))


def test_concept_kinds():
    assert ConceptKind.parse("criterion").marker == "<<criterion>>"
    assert not ConceptKind.CRITERION.is_legal_object
    assert ConceptKind.TARGET.is_legal_object and ConceptKind.CONTROL.is_legal_object
