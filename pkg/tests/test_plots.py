import pytest

from conftest import PARTICIPANTS, read
from gdprtrace.model import trace_matrix
from gdprtrace.plots import plot_score_table, plot_survey, plot_trace_matrix
from gdprtrace.scoring import ScoreRow, score_sets
from gdprtrace.survey import aggregate_survey, load_survey

PNG = b"\x89PNG\r\n\x1a\n"


def test_score_plot(tmp_path, gold_set, participant_sets):
    rows = [ScoreRow(p, score_sets(participant_sets[p], gold_set)) for p in PARTICIPANTS]
    plot_score_table(rows, tmp_path / "s.png")
    assert (tmp_path / "s.png").read_bytes().startswith(PNG)
    with pytest.raises(ValueError):
        plot_score_table([], tmp_path / "e.png")


def test_survey_plot(tmp_path):
    ds = load_survey(read("survey", "objectives.csv"))
    plot_survey(ds, aggregate_survey(ds), tmp_path / "v.png")
    assert (tmp_path / "v.png").read_bytes().startswith(PNG)


def test_matrix_plot(tmp_path, derivation_model, doc):
    path = tmp_path / "m.png"
    plot_trace_matrix(trace_matrix(derivation_model, doc), path)
    first = path.read_bytes()
    plot_trace_matrix(trace_matrix(derivation_model, doc), path)
    assert first.startswith(PNG) and path.read_bytes() == first
