"""Regenerate the JSON/CSV fixtures under src/gdprtrace/data.

Offsets are located by searching the corpus text for each quote, so no
offset is ever typed by hand. Run from the repository root:

    python tools/build_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from gdprtrace.annotation import AnnotationSet, serialize_annotations, annotation_set_from_dict  # noqa: E402
from gdprtrace.corpus import ProvisionRef, body_text, parse_corpus, resolve  # noqa: E402
from gdprtrace.model import build_model, serialize_model  # noqa: E402

DATA = ROOT / "src" / "gdprtrace" / "data"

# Abridged excerpts. Only the fragments the annotations quote matter; the
# surrounding wording is kept close to the regulation but is illustrative.
CORPUS = {
    "id": "GDPR",
    "title": "General Data Protection Regulation (abridged excerpts; wording outside annotated fragments is illustrative)",
    "articles": [
        {"number": "4", "title": "Definitions", "paragraphs": [
            {"number": "1", "text": "‘personal data’ means any information relating to an identified or identifiable natural person (‘data subject’); an identifiable natural person is one who can be identified, directly or indirectly, in particular by reference to an identifier such as a name, an identification number, location data, an online identifier or to one or more factors specific to the physical, physiological, genetic, mental, economic, cultural or social identity of that natural person;"},
            {"number": "2", "text": "‘processing’ means any operation or set of operations which is performed on personal data or on sets of personal data, whether or not by automated means, such as collection, recording, organisation, structuring, storage, adaptation or alteration, retrieval, consultation, use, disclosure by transmission, dissemination or otherwise making available, alignment or combination, restriction, erasure or destruction;"},
            {"number": "3", "text": "‘restriction of processing’ means the marking of stored personal data with the aim of limiting their processing in the future;"},
            {"number": "5", "text": "‘pseudonymisation’ means the processing of personal data in such a manner that the personal data can no longer be attributed to a specific data subject without the use of additional information, provided that such additional information is kept separately and is subject to technical and organisational measures to ensure that the personal data are not attributed to an identified or identifiable natural person;"},
            {"number": "11", "text": "‘consent’ of the data subject means any freely given, specific, informed and unambiguous indication of the data subject’s wishes by which he or she, by a statement or by a clear affirmative action, signifies agreement to the processing of personal data relating to him or her;"},
            {"number": "12", "text": "‘personal data breach’ means a breach of security leading to the accidental or unlawful destruction, loss, alteration, unauthorised disclosure of, or access to, personal data transmitted, stored or otherwise processed;"},
        ]},
        {"number": "5", "title": "Principles relating to processing of personal data", "paragraphs": [
            {"number": "1", "text": "Personal data shall be:", "points": [
                {"letter": "a", "text": "processed lawfully, fairly and in a transparent manner in relation to the data subject (‘lawfulness, fairness and transparency’);"},
                {"letter": "b", "text": "collected for specified, explicit and legitimate purposes and not further processed in a manner that is incompatible with those purposes (‘purpose limitation’);"},
                {"letter": "c", "text": "adequate, relevant and limited to what is necessary in relation to the purposes for which they are processed (‘data minimisation’);"},
                {"letter": "d", "text": "accurate and, where necessary, kept up to date; every reasonable step must be taken to ensure that personal data that are inaccurate, having regard to the purposes for which they are processed, are erased or rectified without delay (‘accuracy’);"},
                {"letter": "e", "text": "kept in a form which permits identification of data subjects for no longer than is necessary for the purposes for which the personal data are processed (‘storage limitation’);"},
                {"letter": "f", "text": "processed in a manner that ensures appropriate security of the personal data, including protection against unauthorised or unlawful processing and against accidental loss, destruction or damage, using appropriate technical or organisational measures (‘integrity and confidentiality’)."},
            ]},
            {"number": "2", "text": "The controller shall be responsible for, and be able to demonstrate compliance with, paragraph 1 (‘accountability’)."},
        ]},
        {"number": "6", "title": "Lawfulness of processing", "paragraphs": [
            {"number": "1", "text": "Processing shall be lawful only if and to the extent that at least one of the following applies:", "points": [
                {"letter": "a", "text": "the data subject has given consent to the processing of his or her personal data for one or more specific purposes;"},
                {"letter": "b", "text": "processing is necessary for the performance of a contract to which the data subject is party or in order to take steps at the request of the data subject prior to entering into a contract;"},
                {"letter": "c", "text": "processing is necessary for compliance with a legal obligation to which the controller is subject;"},
                {"letter": "d", "text": "processing is necessary in order to protect the vital interests of the data subject or of another natural person;"},
                {"letter": "e", "text": "processing is necessary for the performance of a task carried out in the public interest or in the exercise of official authority vested in the controller;"},
                {"letter": "f", "text": "processing is necessary for the purposes of the legitimate interests pursued by the controller or by a third party, except where such interests are overridden by the interests or fundamental rights and freedoms of the data subject which require protection of personal data, in particular where the data subject is a child."},
            ]},
        ]},
        {"number": "7", "title": "Conditions for consent", "paragraphs": [
            {"number": "1", "text": "Where processing is based on consent, the controller shall be able to demonstrate that the data subject has consented to processing of his or her personal data."},
            {"number": "2", "text": "If the data subject’s consent is given in the context of a written declaration which also concerns other matters, the request for consent shall be presented in a manner which is clearly distinguishable from the other matters, in an intelligible and easily accessible form, using clear and plain language."},
        ]},
        {"number": "12", "title": "Transparent information, communication and modalities", "paragraphs": [
            {"number": "3", "text": "The controller shall provide information on action taken on a request under Articles 15 to 22 to the data subject without undue delay and in any event within one month of receipt of the request."},
        ]},
        {"number": "13", "title": "Information to be provided where personal data are collected from the data subject", "paragraphs": [
            {"number": "1", "text": "Where personal data relating to a data subject are collected from the data subject, the controller shall, at the time when personal data are obtained, provide the data subject with all of the following information:", "points": [
                {"letter": "a", "text": "the identity and the contact details of the controller and, where applicable, of the controller’s representative;"},
                {"letter": "b", "text": "the contact details of the data protection officer, where applicable;"},
                {"letter": "c", "text": "the purposes of the processing for which the personal data are intended as well as the legal basis for the processing;"},
                {"letter": "d", "text": "where the processing is based on point (f) of Article 6(1), the legitimate interests pursued by the controller or by a third party;"},
                {"letter": "e", "text": "the recipients or categories of recipients of the personal data, if any;"},
                {"letter": "f", "text": "where applicable, the fact that the controller intends to transfer personal data to a third country or international organisation."},
            ]},
        ]},
        {"number": "15", "title": "Right of access by the data subject", "paragraphs": [
            {"number": "1", "text": "The data subject shall have the right to obtain from the controller confirmation as to whether or not personal data concerning him or her are being processed, and, where that is the case, access to the personal data and the following information:", "points": [
                {"letter": "a", "text": "the purposes of the processing;"},
                {"letter": "b", "text": "the categories of personal data concerned;"},
                {"letter": "c", "text": "the recipients or categories of recipient to whom the personal data have been or will be disclosed, in particular recipients in third countries or international organisations;"},
                {"letter": "d", "text": "where possible, the envisaged period for which the personal data will be stored, or, if not possible, the criteria used to determine that period;"},
            ]},
            {"number": "3", "text": "The controller shall provide a copy of the personal data undergoing processing."},
        ]},
        {"number": "16", "title": "Right to rectification", "paragraphs": [
            {"number": "1", "text": "The data subject shall have the right to obtain from the controller without undue delay the rectification of inaccurate personal data concerning him or her."},
        ]},
        {"number": "17", "title": "Right to erasure (‘right to be forgotten’)", "paragraphs": [
            {"number": "1", "text": "The data subject shall have the right to obtain from the controller the erasure of personal data concerning him or her without undue delay and the controller shall have the obligation to erase personal data without undue delay where one of the following grounds applies:", "points": [
                {"letter": "a", "text": "the personal data are no longer necessary in relation to the purposes for which they were collected or otherwise processed;"},
                {"letter": "b", "text": "the data subject withdraws consent on which the processing is based and where there is no other legal ground for the processing;"},
            ]},
        ]},
        {"number": "18", "title": "Right to restriction of processing", "paragraphs": [
            {"number": "1", "text": "The data subject shall have the right to obtain from the controller restriction of processing where one of the following applies:", "points": [
                {"letter": "a", "text": "the accuracy of the personal data is contested by the data subject, for a period enabling the controller to verify the accuracy of the personal data;"},
            ]},
        ]},
        {"number": "20", "title": "Right to data portability", "paragraphs": [
            {"number": "1", "text": "The data subject shall have the right to receive the personal data concerning him or her, which he or she has provided to a controller, in a structured, commonly used and machine-readable format and have the right to transmit those data to another controller without hindrance from the controller to which the personal data have been provided."},
        ]},
        {"number": "21", "title": "Right to object", "paragraphs": [
            {"number": "1", "text": "The data subject shall have the right to object, on grounds relating to his or her particular situation, at any time to processing of personal data concerning him or her which is based on point (e) or (f) of Article 6(1), including profiling based on those provisions."},
        ]},
        {"number": "25", "title": "Data protection by design and by default", "paragraphs": [
            {"number": "1", "text": "Taking into account the state of the art, the cost of implementation and the nature, scope, context and purposes of processing as well as the risks of varying likelihood and severity for rights and freedoms of natural persons posed by the processing, the controller shall, both at the time of the determination of the means for processing and at the time of the processing itself, implement appropriate technical and organisational measures, such as pseudonymisation, which are designed to implement data-protection principles, such as data minimisation, in an effective manner and to integrate the necessary safeguards into the processing in order to meet the requirements of this Regulation and protect the rights of data subjects."},
        ]},
        {"number": "30", "title": "Records of processing activities", "paragraphs": [
            {"number": "1", "text": "Each controller and, where applicable, the controller’s representative, shall maintain a record of processing activities under its responsibility."},
        ]},
        {"number": "32", "title": "Security of processing", "paragraphs": [
            {"number": "1", "text": "Taking into account the state of the art, the costs of implementation and the nature, scope, context and purposes of processing as well as the risk of varying likelihood and severity for the rights and freedoms of natural persons, the controller and the processor shall implement appropriate technical and organisational measures to ensure a level of security appropriate to the risk."},
        ]},
        {"number": "33", "title": "Notification of a personal data breach to the supervisory authority", "paragraphs": [
            {"number": "1", "text": "In the case of a personal data breach, the controller shall without undue delay and, where feasible, not later than 72 hours after having become aware of it, notify the personal data breach to the supervisory authority, unless the personal data breach is unlikely to result in a risk to the rights and freedoms of natural persons."},
        ]},
    ],
}

DOC = parse_corpus(json.dumps(CORPUS))


def locate(provision: str, quote: str, occurrence: int = 0) -> tuple[int, int]:
    text = body_text(resolve(DOC, ProvisionRef.parse(provision)))
    start = -1
    for _ in range(occurrence + 1):
        start = text.find(quote, start + 1)
        if start < 0:
            raise SystemExit(f"{quote!r} not found in {provision}")
    return start, start + len(quote)


def ann(ann_id, provision, quote, concept, instance=None, start=None, note=None):
    if start is None:
        start, end = locate(provision, quote)
    else:
        end = start + len(quote)
    out = {"id": ann_id, "provision": provision, "start": start, "end": end, "quote": quote, "concept": concept}
    if instance is not None:
        out["instance"] = instance
    if note is not None:
        out["note"] = note
    return out


def write_json(path: Path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


# -- derivation model: 15 requirements, 13 system components ----------------

DERIVATION_ANNOTATIONS = [
    ann("A4.1", "GDPR:Art4(1)", "an identifiable natural person is one who can be identified, directly or indirectly", "control"),
    ann("A4.3", "GDPR:Art4(3)", "restriction of processing", "control", instance="processing restriction/objection"),
    ann("A4.5", "GDPR:Art4(5)", "pseudonymisation", "control", instance="Pseudonomization "),
    ann("A4.11", "GDPR:Art4(11)", "freely given, specific, informed and unambiguous indication of the data subject’s wishes", "criterion"),
    ann("A5.1", "GDPR:Art5(1)(a)", "processed lawfully", "criterion"),
    ann("A5.2", "GDPR:Art5(1)(a)", "fairly", "criterion"),
    ann("A5.3", "GDPR:Art5(1)(a)", "in a transparent manner", "criterion"),
    ann("A5.4", "GDPR:Art5(1)(b)", "specified, explicit and legitimate purposes", "criterion"),
    ann("A5.5", "GDPR:Art5(1)(c)", "adequate, relevant and limited to what is necessary", "criterion"),
    ann("A5.6", "GDPR:Art5(1)(d)", "accurate and, where necessary, kept up to date", "criterion"),
    ann("A5.7", "GDPR:Art5(1)(d)", "erased or rectified without delay", "control"),
    ann("A5.8", "GDPR:Art5(1)(e)", "permits identification of data subjects for no longer than is necessary", "criterion"),
    ann("A5.9", "GDPR:Art5(1)(f)", "appropriate security of the personal data", "criterion"),
    ann("A6.1", "GDPR:Art6(1)", "Processing shall be lawful only if", "criterion"),
    ann("A6.2", "GDPR:Art6(1)(a)", "the data subject has given consent", "control"),
    ann("A6.3", "GDPR:Art6(1)(a)", "for one or more specific purposes", "criterion"),
    ann("A7.1", "GDPR:Art7(1)", "the controller shall be able to demonstrate that the data subject has consented", "criterion"),
    ann("A7.2", "GDPR:Art7(2)", "clearly distinguishable from the other matters", "criterion"),
    ann("A12.1", "GDPR:Art12(3)", "without undue delay and in any event within one month", "criterion"),
    ann("A13.1", "GDPR:Art13(1)", "provide the data subject with all of the following information", "control"),
    ann("A15.3", "GDPR:Art15(1)", "access to the personal data", "control"),
    ann("A15.6", "GDPR:Art15(3)", "provide a copy of the personal data", "control"),
    ann("A16.1", "GDPR:Art16(1)", "the rectification of inaccurate personal data", "control"),
    ann("A17.1", "GDPR:Art17(1)", "the erasure of personal data", "control"),
    ann("A17.2", "GDPR:Art17(1)", "the obligation to erase personal data without undue delay", "criterion"),
    ann("A18.1", "GDPR:Art18(1)", "restriction of processing", "control", instance="processing restriction/objection"),
    ann("A20.1", "GDPR:Art20(1)", "the right to transmit those data to another controller", "control"),
    ann("A21.1", "GDPR:Art21(1)", "the right to object", "control", instance="Processing  Restriction/Objection"),
    ann("A25.1", "GDPR:Art25(1)", "implement appropriate technical and organisational measures", "control"),
    ann("A25.2", "GDPR:Art25(1)", "pseudonymisation", "control", instance="pseudonomization"),
    ann("A25.3", "GDPR:Art25(1)", "data minimisation", "control"),
    ann("A30.1", "GDPR:Art30(1)", "maintain a record of processing activities", "control"),
    ann("A32.1", "GDPR:Art32(1)", "a level of security appropriate to the risk", "criterion"),
    ann("A33.1", "GDPR:Art33(1)", "notify the personal data breach to the supervisory authority", "control"),
]


def inst(iid, name, concept, level, supported_by=()):
    return {"id": iid, "name": name, "concept": concept, "level": level, "supported_by": list(supported_by)}


REQ, SYS = "requirements", "system"
DERIVATION_DECLS = {
    "instances": [
        inst("R1", "processing lawfullness", "criterion", REQ, ["A5.1", "A6.1"]),
        inst("R2", "data subject's consent", "control", REQ, ["A6.2"]),
        inst("R3", "processing fairness", "criterion", REQ, ["A5.2"]),
        inst("R4", "processing transparency", "criterion", REQ, ["A5.3"]),
        inst("R5", "specified and explicit purpose", "criterion", REQ, ["A5.4"]),
        inst("R6", "purpose-specific processing", "criterion", REQ, ["A6.3"]),
        inst("R7", "adequacy of processing purpose", "criterion", REQ, ["A5.5"]),
        inst("R8", "data accurate and up-to-date", "criterion", REQ, ["A5.6"]),
        inst("R9", "limited data subject identification", "criterion", REQ, ["A5.8"]),
        inst("R10", "concent clarity and demonstrability", "criterion", REQ, ["A7.1", "A7.2"]),
        inst("R11", "consent explicitness", "criterion", REQ, ["A4.11"]),
        inst("R12", "timely information provision", "criterion", REQ, ["A12.1"]),
        inst("R13", "timely data erasure", "criterion", REQ, ["A17.2"]),
        inst("R14", "appropriate measures", "control", REQ, ["A25.1"]),
        inst("R15", "security of data processing", "criterion", REQ, ["A5.9", "A32.1"]),
        inst("C1", "processing purpose management", "control", SYS, ["A5.4"]),
        inst("C2", "consent management service", "control", SYS, ["A6.2", "A7.1"]),
        inst("C3", "data subject identification", "control", SYS, ["A4.1"]),
        inst("C4", "data processing information provision", "control", SYS, ["A13.1"]),
        inst("C5", "processing restriction/objection", "control", SYS),
        inst("C6", "data erasure or rectification", "control", SYS, ["A5.7", "A17.1"]),
        inst("C7", "data correction", "control", SYS, ["A16.1"]),
        inst("C8", "data access and copy", "control", SYS, ["A15.3", "A15.6"]),
        inst("C9", "data portability", "control", SYS, ["A20.1"]),
        inst("C10", "processing and breach notification", "control", SYS, ["A33.1"]),
        inst("C11", "pseudonomization", "control", SYS),
        inst("C12", "data minimization", "control", SYS, ["A25.3"]),
        inst("C13", "recording of processing activities", "control", SYS, ["A30.1"]),
    ],
    "relations": [
        {"kind": "depends_on", "from": "C4", "to": "C2",
         "note": "information provision reads processing purposes held by the consent service"},
    ],
}

# -- experiment: ten gold annotations over Art. 13(1) and 15(1) ---------------

EXPERIMENT_GOLD = [
    ann("A13.1", "GDPR:Art13(1)", "provide the data subject with all of the following information", "control"),
    ann("A13.2", "GDPR:Art13(1)", "at the time when personal data are obtained", "criterion"),
    ann("A13.3", "GDPR:Art13(1)(a)", "the identity and the contact details of the controller", "target"),
    ann("A13.4", "GDPR:Art13(1)(b)", "the contact details of the data protection officer", "target"),
    ann("A13.5", "GDPR:Art13(1)(c)", "the purposes of the processing for which the personal data are intended", "criterion"),
    ann("A15.1", "GDPR:Art15(1)", "obtain from the controller confirmation", "control"),
    ann("A15.2", "GDPR:Art15(1)", "personal data concerning him or her", "target"),
    ann("A15.3", "GDPR:Art15(1)", "access to the personal data", "control"),
    ann("A15.4", "GDPR:Art15(1)", "the following information", "control"),
    ann("A15.5", "GDPR:Art15(1)(a)", "the purposes of the processing", "criterion"),
]

EXPERIMENT_DECLS = {
    "instances": [
        inst("R1", "processing purposes", "criterion", REQ, ["A13.5", "A15.5"]),
        inst("R2", "timely information provision", "criterion", REQ, ["A13.2"]),
        inst("C1", "information provision service", "control", SYS, ["A13.1"]),
        inst("C2", "data access service", "control", SYS, ["A15.1", "A15.3", "A15.4"]),
        inst("C3", "personal data storage", "target", SYS, ["A15.2"]),
        inst("C4", "controller contact registry", "target", SYS, ["A13.3"]),
        inst("C5", "data protection officer contact point", "target", SYS, ["A13.4"]),
        inst("C6", "processing purpose register", "target", SYS, ["A15.5"]),
    ],
    "relations": [{"kind": "addresses", "from": "C2", "to": "C3"}],
}

ALIASES = {"aliases": [
    ["information provision service", "privacy notice service"],
    ["data access service", "access request handler"],
    ["personal data storage", "user data store"],
]}

GOLD_IDS = [a["id"] for a in EXPERIMENT_GOLD]
PUBLISHED_SCORES = {
    "I1": ([1, 1, 0.7, 0.8, 0.7, 0.9, 1, 0.7, 0, 0.8], 3),
    "I2": ([1, 0, 0.9, 0.7, 0.7, 0.7, 0, 0.8, 0, 0], 2),
    "I3": ([1, 0, 0.7, 0, 0.7, 0.9, 0, 0.7, 0, 0.8], 7),
    "I4": ([0.8, 0, 0, 0.9, 0.7, 0.7, 1, 0.7, 0, 0], 2),
    "I5": ([1, 1, 0.9, 0.7, 0.7, 0.9, 0, 0.7, 0, 1], 4),
    "I9": ([0, 0, 0.9, 0.9, 0, 0.9, 0, 0, 0, 1], 2),
    "I10": ([1, 0, 0.7, 0.9, 0, 0.7, 1, 0.7, 0, 1], 1),
    "I11": ([1, 0.8, 0.9, 0.8, 0.7, 1, 1, 0.7, 0.7, 1], 7),
    "I12": ([0.8, 1, 0.7, 1, 0, 0.7, 0, 0, 0, 0], 1),
}
# participant -> (gold component ids matched, candidate names for them, extra names)
PUBLISHED_COMPONENTS = {
    "I5": ({"C1": "information provision service", "C3": "personal data storage", "C4": "controller contact registry"},
           ["consent service", "recipient registry", "retention scheduler", "privacy dashboard"]),
    "I9": ({"C1": "Information Provision Service", "C3": "user data store"},
           ["consent service", "data category catalogue"]),
    "I10": ({"C1": "privacy notice service", "C2": "data access service",
             "C5": "data protection officer contact point", "C6": "processing purpose register"},
            ["consent service", "recipient registry", "retention scheduler"]),
    "I11": ({"C1": "information provision service", "C2": "access request handler"},
            ["third-country transfer gateway", "legal basis register"]),
    "I12": ({"C1": "information provision service", "C5": "data protection officer  contact point"},
            ["privacy dashboard"]),
}

EXTRA_POOL = [
    ("GDPR:Art13(1)(a)", "the controller’s representative"),
    ("GDPR:Art13(1)(c)", "the legal basis for the processing"),
    ("GDPR:Art13(1)(d)", "the legitimate interests pursued by the controller"),
    ("GDPR:Art13(1)(e)", "the recipients or categories of recipients of the personal data"),
    ("GDPR:Art13(1)(f)", "transfer personal data to a third country"),
    ("GDPR:Art15(1)(b)", "the categories of personal data concerned"),
    ("GDPR:Art15(1)(c)", "the recipients or categories of recipient"),
    ("GDPR:Art15(1)(d)", "the envisaged period for which the personal data will be stored"),
    ("GDPR:Art15(1)(d)", "the criteria used to determine that period"),
]

OTHER_CONCEPT = {"target": "control", "control": "target", "criterion": "control"}


def participant_annotations(who: str, index: int) -> list[dict]:
    scores, extras = PUBLISHED_SCORES[who]
    out = []
    for gold, value in zip(EXPERIMENT_GOLD, scores):
        if value == 0:
            continue
        exact = value in (1, 0.9)
        right = value in (1, 0.8)
        start, end, quote = gold["start"], gold["end"], gold["quote"]
        if not exact:
            words = quote.split(" ")
            # alternate between dropping the first and the last word
            if (index + len(out)) % 2:
                cut = len(words[0]) + 1
                start, quote = start + cut, quote[cut:]
            else:
                cut = len(words[-1]) + 1
                end, quote = end - cut, quote[: len(quote) - cut]
        concept = gold["concept"] if right else OTHER_CONCEPT[gold["concept"]]
        out.append(ann(f"{who}.{len(out) + 1}", gold["provision"], quote, concept, start=start))
    for k in range(extras):
        provision, quote = EXTRA_POOL[(index + k) % len(EXTRA_POOL)]
        out.append(ann(f"{who}.{len(out) + 1}", provision, quote, "control"))
    return out


def main():
    write_json(DATA / "gdpr_corpus.json", CORPUS)

    derivation_set = {"corpus": "GDPR", "author": "gold", "annotations": DERIVATION_ANNOTATIONS}
    write_json(DATA / "derivation" / "gold.ann.json", derivation_set)
    write_json(DATA / "derivation" / "gold.decls.json", DERIVATION_DECLS)
    model = build_model([annotation_set_from_dict(derivation_set)], DERIVATION_DECLS, DOC)
    (DATA / "derivation" / "gold.model.json").write_text(serialize_model(model), encoding="utf-8")

    exp = DATA / "experiment"
    gold_set = {"corpus": "GDPR", "author": "gold", "annotations": EXPERIMENT_GOLD}
    write_json(exp / "gold.ann.json", gold_set)
    write_json(exp / "gold.decls.json", EXPERIMENT_DECLS)
    model = build_model([annotation_set_from_dict(gold_set)], EXPERIMENT_DECLS, DOC)
    (exp / "gold.model.json").write_text(serialize_model(model), encoding="utf-8")
    write_json(exp / "aliases.json", ALIASES)

    for index, who in enumerate(PUBLISHED_SCORES):
        aset = {"corpus": "GDPR", "author": who, "annotations": participant_annotations(who, index)}
        loaded = annotation_set_from_dict(aset)
        (exp / "participants" / f"{who}.ann.json").parent.mkdir(parents=True, exist_ok=True)
        (exp / "participants" / f"{who}.ann.json").write_text(serialize_annotations(loaded), encoding="utf-8")
        if who in PUBLISHED_COMPONENTS:
            matched, extra = PUBLISHED_COMPONENTS[who]
            ids = [a["id"] for a in aset["annotations"]]
            names = list(matched.values()) + extra
            decls = {"instances": [
                inst(f"{who}.C{k + 1}", name, "control", SYS, [ids[k % len(ids)]]) for k, name in enumerate(names)
            ], "relations": []}
            write_json(exp / "participants" / f"{who}.decls.json", decls)
            model = build_model([loaded], decls, DOC)
            (exp / "participants" / f"{who}.model.json").write_text(serialize_model(model), encoding="utf-8")

    header = "participant," + ",".join(GOLD_IDS) + ",A+\n"
    rows = "".join(
        f"{who}," + ",".join(f"{v:g}" for v in scores) + f",{extras}\n" for who, (scores, extras) in PUBLISHED_SCORES.items()
    )
    (exp / "published_scores.csv").write_text(header + rows, encoding="utf-8")


if __name__ == "__main__":
    main()
