import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gdprtrace import data_path  # noqa: E402
from gdprtrace.annotation import load_annotations  # noqa: E402
from gdprtrace.corpus import parse_corpus  # noqa: E402
from gdprtrace.model import parse_model  # noqa: E402

PARTICIPANTS = ["I1", "I2", "I3", "I4", "I5", "I9", "I10", "I11", "I12"]
MODELERS = ["I5", "I9", "I10", "I11", "I12"]


def read(*parts):
    return data_path(*parts).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def doc():
    return parse_corpus(read("gdpr_corpus.json"))


@pytest.fixture(scope="session")
def gold_set(doc):
    return load_annotations(read("experiment", "gold.ann.json"), doc)


@pytest.fixture(scope="session")
def derivation_set(doc):
    return load_annotations(read("derivation", "gold.ann.json"), doc)


@pytest.fixture(scope="session")
def derivation_model():
    return parse_model(read("derivation", "gold.model.json"))


@pytest.fixture(scope="session")
def experiment_model():
    return parse_model(read("experiment", "gold.model.json"))


@pytest.fixture(scope="session")
def participant_sets(doc):
    return {p: load_annotations(read("experiment", "participants", f"{p}.ann.json"), doc) for p in PARTICIPANTS}
