import io
import json
import subprocess
import sys

import pytest

from conftest import MODELERS, PARTICIPANTS
from gdprtrace import data_path
from gdprtrace.cli import run

CORPUS = str(data_path("gdpr_corpus.json"))
EXP = data_path("experiment")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def score_args():
    cands = [EXP / "participants" / f"{p}.ann.json" for p in PARTICIPANTS]
    models = [EXP / "participants" / f"{p}.model.json" for p in MODELERS]
    return ["score", CORPUS, EXP / "gold.ann.json", *cands,
            "--components", EXP / "gold.model.json", *models,
            "--aliases", EXP / "aliases.json", "--aggregate"]


def test_parse_lists_provisions():
    code, out, _ = call("parse", CORPUS)
    assert code == 0 and "GDPR:Art13(1)(c)" in out.splitlines()


def test_validate():
    code, out, err = call("validate", CORPUS, EXP / "gold.ann.json")
    assert (code, out, err) == (0, "", "")


def test_validate_reports_errors(tmp_path):
    data = json.loads((EXP / "gold.ann.json").read_text())
    data["annotations"][0]["quote"] = "nope"
    bad = tmp_path / "bad.ann.json"
    bad.write_text(json.dumps(data))
    code, _, err = call("validate", CORPUS, bad)
    assert code == 1 and "quote-mismatch" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["parse", "/nonexistent.json"],
        ["trace", str(EXP / "gold.model.json"), "--matrix"],
        ["trace", str(EXP / "gold.model.json"), "--from", "not a ref"],
        ["model", "build", CORPUS, "-o", "x.json"],
        ["survey", CORPUS],
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_help_exits_zero():
    assert call("--help")[0] == 0


def test_model_build_and_derive(tmp_path):
    deriv = data_path("derivation")
    out_model = tmp_path / "m.json"
    code, _, err = call("model", "build", CORPUS, deriv / "gold.ann.json", deriv / "gold.decls.json", "-o", out_model)
    assert code == 0
    assert not err.startswith("error")
    assert json.loads(out_model.read_text()) == json.loads((deriv / "gold.model.json").read_text())
    code, out, _ = call("derive", out_model)
    assert code == 0 and out.startswith("requirements: 15\ncomponents: 13\n")
    assert call("model", "check", out_model)[0] == 0


def test_model_build_type_error(tmp_path):
    decls = json.loads((EXP / "gold.decls.json").read_text())
    decls["relations"].append({"kind": "addresses", "from": "R1", "to": "C3"})
    path = tmp_path / "d.json"
    path.write_text(json.dumps(decls))
    code, _, err = call("model", "build", CORPUS, EXP / "gold.ann.json", path, "-o", tmp_path / "m.json")
    assert code == 1 and "kind-typing" in err
    assert not (tmp_path / "m.json").exists()


def test_trace_and_coverage():
    model = data_path("derivation", "gold.model.json")
    code, out, _ = call("trace", model, "--from", "GDPR:Art7", "--corpus", CORPUS)
    assert code == 0 and out.splitlines() == [line for line in out.splitlines() if line]
    assert {line.split("\t")[1] for line in out.splitlines()} == {"R10", "C2"}
    code, out, _ = call("trace", model, "--to", "R10", "--format", "json")
    assert code == 0 and all(r.startswith("GDPR:Art7") for r in json.loads(out))
    code, out, _ = call("trace", model, "--matrix", "--corpus", CORPUS)
    assert code == 0 and out.startswith("provision,")
    code, out, _ = call("coverage", EXP / "gold.model.json", CORPUS)
    assert code == 0 and out.startswith("covered: 6/")


def test_score_table():
    code, out, _ = call(*score_args())
    assert code == 0
    lines = out.splitlines()
    assert lines[0].endswith("A+,C1,C2,C3,C4,C5,C6,C+")
    assert lines[1].split(",")[-7:] == ["-"] * 7
    assert lines[-2].startswith("Median,1,0,0.7,0.8,0.7,0.9,0,0.7,0,0.8")


def test_score_json():
    code, out, _ = call(*score_args(), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["aggregate"]["A13.3"]["modes"] == [0.7, 0.9]


def test_survey_cli():
    code, out, err = call("survey", data_path("survey", "objectives.csv"), "--aggregate")
    assert code == 0 and "rating-ranking-inconsistent" in err
    assert out.splitlines()[1].startswith("Median,5,4(4),1,4.5(4.5),4")


def test_deterministic_output(tmp_path):
    first = call(*score_args(), "--plot", tmp_path / "a.png")
    second = call(*score_args(), "--plot", tmp_path / "b.png")
    assert first == second
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gdprtrace", "parse", CORPUS, "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["id"] == "GDPR"
