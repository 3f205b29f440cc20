"""Score a candidate annotation set (and model) against a gold standard.

Per gold annotation the rubric is:

    ==========  ===============  ======
    span        concept          score
    ==========  ===============  ======
    exact       correct          1.0
    exact       wrong            0.9
    partial     correct          0.8
    partial     wrong            0.7
    unmatched                    0
    ==========  ===============  ======

Candidates left over after matching count as extras (A+).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import Decimal

from .annotation import AbstractionLevel, AnnotationSet
from .model import ContentModel, normalize_name
from .stats import fmt, fmt_modes, median, modes

EXACT_CORRECT = Decimal("1")
EXACT_WRONG = Decimal("0.9")
PARTIAL_CORRECT = Decimal("0.8")
PARTIAL_WRONG = Decimal("0.7")
MISSED = Decimal("0")
RUBRIC_VALUES = frozenset({EXACT_CORRECT, EXACT_WRONG, PARTIAL_CORRECT, PARTIAL_WRONG, MISSED})


class ScoringError(ValueError):
    pass


@dataclass(frozen=True)
class MatchPair:
    gold: str
    candidate: str
    span_exact: bool
    concept_match: bool
    overlap: int


@dataclass(frozen=True)
class ScoreReport:
    per_gold: dict[str, Decimal]
    extras: int

    @property
    def total(self) -> Decimal:
        return sum(self.per_gold.values(), Decimal(0))


@dataclass(frozen=True)
class ComponentComparison:
    per_gold_component: dict[str, bool]
    extras: int


@dataclass(frozen=True)
class Aggregate:
    median: Decimal
    modes: tuple[Decimal, ...]


def eligible_pairs(candidate: AnnotationSet, gold: AnnotationSet) -> list[MatchPair]:
    """Every same-provision, overlapping (gold, candidate) pair."""
    pairs = []
    for g in gold.annotations:
        for c in candidate.annotations:
            overlap = g.span.overlap(c.span)
            if overlap < 1:
                continue
            exact = (g.span.start, g.span.end) == (c.span.start, c.span.end)
            pairs.append(MatchPair(g.id, c.id, exact, g.concept is c.concept, overlap))
    return pairs


def match_annotations(candidate: AnnotationSet, gold: AnnotationSet) -> list[MatchPair]:
    """Greedy one-to-one matching by overlap size, ties broken by ids."""
    if candidate.corpus_id != gold.corpus_id:
        raise ScoringError(
            f"candidate annotates {candidate.corpus_id!r} but gold annotates {gold.corpus_id!r}"
        )
    pairs = sorted(eligible_pairs(candidate, gold), key=lambda p: (-p.overlap, p.gold, p.candidate))
    used_gold, used_cand, out = set(), set(), []
    for p in pairs:
        if p.gold in used_gold or p.candidate in used_cand:
            continue
        used_gold.add(p.gold)
        used_cand.add(p.candidate)
        out.append(p)
    return out


def pair_score(pair: MatchPair) -> Decimal:
    if pair.span_exact:
        return EXACT_CORRECT if pair.concept_match else EXACT_WRONG
    return PARTIAL_CORRECT if pair.concept_match else PARTIAL_WRONG


def score(matching: list[MatchPair], candidate: AnnotationSet, gold: AnnotationSet) -> ScoreReport:
    by_gold = {p.gold: p for p in matching}
    per_gold = {
        g.id: pair_score(by_gold[g.id]) if g.id in by_gold else MISSED for g in gold.annotations
    }
    matched = {p.candidate for p in matching}
    extras = sum(1 for c in candidate.annotations if c.id not in matched)
    return ScoreReport(per_gold, extras)


def score_sets(candidate: AnnotationSet, gold: AnnotationSet) -> ScoreReport:
    return score(match_annotations(candidate, gold), candidate, gold)


# -- components --------------------------------------------------------------


def alias_classes(aliases) -> dict[str, str]:
    """Map each normalized name to a representative of its equivalence class."""
    parent: dict[str, str] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for group in aliases:
        names = [normalize_name(n) for n in group]
        for other in names[1:]:
            a, b = find(names[0]), find(other)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {name: find(name) for name in list(parent)}


def parse_aliases(text: str) -> list[list[str]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScoringError(f"aliases: syntax error at line {exc.lineno} column {exc.colno}") from None
    groups = data.get("aliases") if isinstance(data, dict) else data
    if not isinstance(groups, list) or not all(
        isinstance(g, list) and all(isinstance(n, str) for n in g) for g in groups
    ):
        raise ScoringError("aliases: expected a list of name lists")
    return groups


def compare_components(
    candidate: ContentModel, gold: ContentModel, aliases=()
) -> ComponentComparison:
    classes = alias_classes(aliases)

    def key(inst):
        name = normalize_name(inst.name)
        return classes.get(name, name)

    system = AbstractionLevel.SYSTEM
    gold_comps = [i for i in gold.instances if i.level is system]
    cand_comps = [i for i in candidate.instances if i.level is system]
    gold_keys = {key(g) for g in gold_comps}
    cand_keys = {key(c) for c in cand_comps}
    per_gold = {g.name: key(g) in cand_keys for g in gold_comps}
    extras = sum(1 for c in cand_comps if key(c) not in gold_keys)
    return ComponentComparison(per_gold, extras)


# -- aggregation and export --------------------------------------------------


def aggregate_scores(reports: list[ScoreReport]) -> dict[str, Aggregate]:
    if not reports:
        return {}
    ids = list(reports[0].per_gold)
    for r in reports[1:]:
        if set(r.per_gold) != set(ids):
            raise ScoringError("score reports cover different gold annotations")
    return {
        gid: Aggregate(median(r.per_gold[gid] for r in reports), tuple(modes(r.per_gold[gid] for r in reports)))
        for gid in ids
    }


@dataclass(frozen=True)
class ScoreRow:
    participant: str
    report: ScoreReport
    components: ComponentComparison | None = None


def parse_score_table(text: str) -> list[ScoreRow]:
    """Read a score CSV (participant, gold ids..., A+) back into reports.

    Aggregate rows and component columns are ignored.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ScoringError("score table is empty") from None
    if len(header) < 2 or header[0] != "participant" or "A+" not in header:
        raise ScoringError("score table header must start with 'participant' and contain 'A+'")
    plus = header.index("A+")
    gold_ids = header[1:plus]
    rows = []
    for line, cells in enumerate(reader, start=2):
        if not cells or cells[0] in ("Median", "Mode"):
            continue
        try:
            values = [Decimal(v) for v in cells[1:plus]]
            extras = int(cells[plus])
        except (ArithmeticError, ValueError, IndexError):
            raise ScoringError(f"line {line}: malformed score row") from None
        if any(v not in RUBRIC_VALUES for v in values) or extras < 0:
            raise ScoringError(f"line {line}: value outside the rubric")
        rows.append(ScoreRow(cells[0], ScoreReport(dict(zip(gold_ids, values)), extras)))
    return rows


def score_table_csv(
    rows: list[ScoreRow], gold_components: list[tuple[str, str]] = (), aggregate: bool = False
) -> str:
    """Render rows in the layout participant, <gold ids>, A+[, C1.., C+].

    ``gold_components`` lists (column label, gold instance name) pairs.
    """
    gold_ids = list(rows[0].report.per_gold) if rows else []
    header = ["participant", *gold_ids, "A+"]
    if gold_components:
        header += [label for label, _ in gold_components] + ["C+"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        cells = [row.participant, *(fmt(row.report.per_gold[g]) for g in gold_ids), str(row.report.extras)]
        if gold_components:
            comp = row.components
            if comp is None:
                cells += ["-"] * (len(gold_components) + 1)
            else:
                cells += ["+" if comp.per_gold_component[name] else "-" for _, name in gold_components]
                cells.append(str(comp.extras))
        writer.writerow(cells)
    if aggregate and rows:
        agg = aggregate_scores([r.report for r in rows])
        pad = [""] * (1 + (len(gold_components) + 1 if gold_components else 0))
        writer.writerow(["Median", *(fmt(agg[g].median) for g in gold_ids), *pad])
        writer.writerow(["Mode", *(fmt_modes(agg[g].modes) for g in gold_ids), *pad])
    return buf.getvalue()


def score_table_json(rows: list[ScoreRow], aggregate: bool = False) -> str:
    out = {
        "participants": [
            {
                "participant": r.participant,
                "scores": {g: float(v) for g, v in r.report.per_gold.items()},
                "extras": r.report.extras,
                **(
                    {
                        "components": r.components.per_gold_component,
                        "component_extras": r.components.extras,
                    }
                    if r.components is not None
                    else {}
                ),
            }
            for r in rows
        ]
    }
    if aggregate and rows:
        agg = aggregate_scores([r.report for r in rows])
        out["aggregate"] = {
            g: {"median": float(a.median), "modes": [float(m) for m in a.modes]} for g, a in agg.items()
        }
    return json.dumps(out, indent=2, ensure_ascii=False) + "\n"
