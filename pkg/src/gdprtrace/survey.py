"""Specification-objective ratings and rankings from the interview study.

Ratings run from 1 (low importance) to 5 (high importance) in half steps and
may carry a second value in parentheses, e.g. ``4(3)``. Rankings run from 1
(most important) to 5 and should use every rank once.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import re
from dataclasses import dataclass
from decimal import Decimal

from .diagnostics import WARNING, Diagnostic
from .stats import fmt, fmt_modes, median, modes

RATING_RE = re.compile(r"(\d+(?:\.\d+)?)(?:\((\d+(?:\.\d+)?)\))?")
MISSING = {"-", ""}


class SurveyError(ValueError):
    pass


class SurveyObjective(enum.Enum):
    SO1 = "SO1"
    SO2 = "SO2"
    SO3 = "SO3"
    SO4 = "SO4"
    SO5 = "SO5"


OBJECTIVES = tuple(SurveyObjective)


@dataclass(frozen=True)
class Rating:
    primary: Decimal
    secondary: Decimal | None = None

    def __str__(self) -> str:
        if self.secondary is None:
            return fmt(self.primary)
        return f"{fmt(self.primary)}({fmt(self.secondary)})"


@dataclass(frozen=True)
class SurveyRecord:
    participant: str
    ratings: dict[SurveyObjective, Rating]
    rankings: dict[SurveyObjective, int]
    # approach evaluation scores; None where the participant gave none
    evaluations: dict[SurveyObjective, Decimal | None] | None = None


@dataclass(frozen=True)
class SurveyDataset:
    records: tuple[SurveyRecord, ...]

    @property
    def has_evaluations(self) -> bool:
        return any(r.evaluations is not None for r in self.records)


@dataclass(frozen=True)
class ObjectiveSummary:
    rating_median: Decimal
    rating_modes: tuple[Decimal, ...]
    secondary_rating_median: Decimal
    secondary_rating_modes: tuple[Decimal, ...]
    ranking_median: Decimal
    ranking_modes: tuple[Decimal, ...]
    has_secondary: bool = False
    evaluation_median: Decimal | None = None
    evaluation_modes: tuple[Decimal, ...] = ()


SurveySummary = dict  # SurveyObjective -> ObjectiveSummary


def _scale_value(text: str, where: str) -> Decimal:
    try:
        value = Decimal(text)
    except ArithmeticError:
        raise SurveyError(f"{where}: malformed value {text!r}") from None
    if not value.is_finite() or (value * 2) % 1 != 0:
        raise SurveyError(f"{where}: {text!r} is not a whole or half point")
    if not 1 <= value <= 5:
        raise SurveyError(f"{where}: {text!r} is outside the 1-5 scale")
    return value


def parse_rating(text: str, where: str = "rating") -> Rating:
    m = RATING_RE.fullmatch(text.strip())
    if m is None:
        raise SurveyError(f"{where}: malformed rating {text!r}")
    primary = _scale_value(m[1], where)
    secondary = _scale_value(m[2], where) if m[2] is not None else None
    return Rating(primary, secondary)


def _parse_rank(text: str, where: str) -> int:
    text = text.strip()
    if not text.isdigit():
        raise SurveyError(f"{where}: malformed ranking {text!r}")
    value = int(text)
    if not 1 <= value <= 5:
        raise SurveyError(f"{where}: ranking {value} is outside 1-5")
    return value


def load_survey(text: str) -> SurveyDataset:
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    required = ["participant"] + [o.value for o in OBJECTIVES] + [f"rank_{o.value}" for o in OBJECTIVES]
    missing = [c for c in required if c not in header]
    if missing:
        raise SurveyError(f"survey header lacks columns: {', '.join(missing)}")
    eval_cols = [f"eval_{o.value}" for o in OBJECTIVES]
    with_eval = all(c in header for c in eval_cols)
    records = []
    for line, row in enumerate(reader, start=2):
        if None in row or any(v is None for v in row.values()):
            raise SurveyError(f"line {line}: wrong number of cells")
        who = row["participant"].strip()
        ratings = {o: parse_rating(row[o.value], f"line {line} {o.value}") for o in OBJECTIVES}
        rankings = {o: _parse_rank(row[f"rank_{o.value}"], f"line {line} rank_{o.value}") for o in OBJECTIVES}
        evaluations = None
        if with_eval:
            evaluations = {
                o: None
                if row[f"eval_{o.value}"].strip() in MISSING
                else _scale_value(row[f"eval_{o.value}"].strip(), f"line {line} eval_{o.value}")
                for o in OBJECTIVES
            }
            if all(v is None for v in evaluations.values()):
                evaluations = None
        records.append(SurveyRecord(who, ratings, rankings, evaluations))
    return SurveyDataset(tuple(records))


def validate_survey(ds: SurveyDataset) -> list[Diagnostic]:
    out = []
    for rec in ds.records:
        ranks = sorted(rec.rankings[o] for o in OBJECTIVES)
        if ranks != [1, 2, 3, 4, 5]:
            out.append(
                Diagnostic(
                    WARNING,
                    rec.participant,
                    "ranking-not-permutation",
                    f"rankings {ranks} do not use each rank 1-5 exactly once",
                )
            )
        for o in OBJECTIVES:
            if rec.rankings[o] == 1 and rec.ratings[o].primary == 1:
                out.append(
                    Diagnostic(
                        WARNING,
                        rec.participant,
                        "rating-ranking-inconsistent",
                        f"{o.value} ranked most important but rated lowest importance",
                    )
                )
    return out


def aggregate_survey(ds: SurveyDataset) -> SurveySummary:
    """Per-objective medians and modes.

    Secondary values fall back to the primary rating where a participant gave
    only one value.
    """
    if not ds.records:
        raise SurveyError("cannot aggregate an empty survey")
    summary = {}
    for o in OBJECTIVES:
        primary = [r.ratings[o].primary for r in ds.records]
        secondary = [
            r.ratings[o].secondary if r.ratings[o].secondary is not None else r.ratings[o].primary
            for r in ds.records
        ]
        ranks = [Decimal(r.rankings[o]) for r in ds.records]
        evals = [
            r.evaluations[o]
            for r in ds.records
            if r.evaluations is not None and r.evaluations[o] is not None
        ]
        summary[o] = ObjectiveSummary(
            rating_median=median(primary),
            rating_modes=tuple(modes(primary)),
            secondary_rating_median=median(secondary),
            secondary_rating_modes=tuple(modes(secondary)),
            ranking_median=median(ranks),
            ranking_modes=tuple(modes(ranks)),
            has_secondary=any(r.ratings[o].secondary is not None for r in ds.records),
            evaluation_median=median(evals) if evals else None,
            evaluation_modes=tuple(modes(evals)) if evals else (),
        )
    return summary


def _rating_cells(summary, field):
    cells = []
    for o in OBJECTIVES:
        s = summary[o]
        if field == "median":
            cell = fmt(s.rating_median)
            extra = fmt(s.secondary_rating_median)
        else:
            cell = fmt_modes(s.rating_modes)
            extra = fmt_modes(s.secondary_rating_modes)
        cells.append(f"{cell}({extra})" if s.has_secondary else cell)
    return cells


def summary_csv(summary: SurveySummary) -> str:
    """Median and Mode rows in the printed table's notation, e.g. ``4,5(5)``."""
    with_eval = any(summary[o].evaluation_median is not None for o in OBJECTIVES)
    header = ["row", *(o.value for o in OBJECTIVES), *(f"rank_{o.value}" for o in OBJECTIVES)]
    if with_eval:
        header += [f"eval_{o.value}" for o in OBJECTIVES]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for label, field in (("Median", "median"), ("Mode", "modes")):
        cells = [label, *_rating_cells(summary, field)]
        if field == "median":
            cells += [fmt(summary[o].ranking_median) for o in OBJECTIVES]
            if with_eval:
                cells += [fmt(summary[o].evaluation_median) for o in OBJECTIVES]
        else:
            cells += [fmt_modes(summary[o].ranking_modes) for o in OBJECTIVES]
            if with_eval:
                cells += [fmt_modes(summary[o].evaluation_modes) for o in OBJECTIVES]
        writer.writerow(cells)
    return buf.getvalue()


def summary_json(summary: SurveySummary) -> str:
    def nums(values):
        return [float(v) for v in values]

    out = {}
    for o in OBJECTIVES:
        s = summary[o]
        entry = {
            "rating_median": float(s.rating_median),
            "rating_modes": nums(s.rating_modes),
            "secondary_rating_median": float(s.secondary_rating_median),
            "secondary_rating_modes": nums(s.secondary_rating_modes),
            "ranking_median": float(s.ranking_median),
            "ranking_modes": nums(s.ranking_modes),
        }
        if s.evaluation_median is not None:
            entry["evaluation_median"] = float(s.evaluation_median)
            entry["evaluation_modes"] = nums(s.evaluation_modes)
        out[o.value] = entry
    return json.dumps(out, indent=2) + "\n"


def dataset_csv(ds: SurveyDataset) -> str:
    """Normalized re-rendering of a survey file."""
    header = ["participant", *(o.value for o in OBJECTIVES), *(f"rank_{o.value}" for o in OBJECTIVES)]
    if ds.has_evaluations:
        header += [f"eval_{o.value}" for o in OBJECTIVES]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in ds.records:
        cells = [r.participant, *(str(r.ratings[o]) for o in OBJECTIVES), *(str(r.rankings[o]) for o in OBJECTIVES)]
        if ds.has_evaluations:
            evals = r.evaluations or {}
            cells += ["-" if evals.get(o) is None else fmt(evals[o]) for o in OBJECTIVES]
        writer.writerow(cells)
    return buf.getvalue()
