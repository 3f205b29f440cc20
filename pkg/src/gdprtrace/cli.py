"""Command-line entry point.

Exit status: 0 success, 1 validation errors found, 2 usage, I/O or parse
failure. Warnings never change a zero exit. Reports go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .annotation import AnnotationError, AnnotationSet, parse_annotations, validate_annotations
from .corpus import CorpusError, ProvisionRef, list_provisions, parse_corpus, serialize_corpus
from .diagnostics import ERROR, has_errors
from .model import (
    AbstractionLevel,
    ModelError,
    build_model,
    check_model,
    coverage,
    derive_specs,
    parse_declarations,
    parse_model,
    serialize_model,
    trace_backward,
    trace_forward,
    trace_matrix,
)
from .scoring import ScoreRow, ScoringError, compare_components, parse_aliases, score_sets
from .scoring import score_table_csv, score_table_json
from .survey import SurveyError, aggregate_survey, dataset_csv, load_survey, summary_csv, summary_json
from .survey import validate_survey

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2
INPUT_ERRORS = (OSError, UnicodeDecodeError, CorpusError, AnnotationError, ModelError, ScoringError, SurveyError)


class Invalid(Exception):
    """Validation errors were found and already reported."""


def _read(path) -> str:
    return Path(path).read_text(encoding="utf-8")


def _report(diagnostics, err):
    for d in diagnostics:
        print(d, file=err)
    if has_errors(diagnostics):
        raise Invalid


def _load_sets(doc, paths, err) -> list[AnnotationSet]:
    sets, problems = [], []
    for path in paths:
        aset = parse_annotations(_read(path))
        if not aset.author:
            aset = AnnotationSet(aset.corpus_id, Path(path).name.split(".")[0], aset.annotations)
        problems += validate_annotations(aset, doc)
        sets.append(aset)
    _report(problems, err)
    return sets


def _emit(out, text):
    out.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_parse(args, out, err):
    doc = parse_corpus(_read(args.corpus))
    if args.format == "json":
        _emit(out, serialize_corpus(doc))
    else:
        for ref in list_provisions(doc):
            print(ref, file=out)


def cmd_validate(args, out, err):
    doc = parse_corpus(_read(args.corpus))
    _load_sets(doc, args.annotations, err)


def cmd_model_build(args, out, err):
    if len(args.files) < 3:
        raise argparse.ArgumentError(None, "model build needs <corpus> <annotations...> <decls>")
    corpus, *ann_paths, decls_path = args.files
    doc = parse_corpus(_read(corpus))
    sets = _load_sets(doc, ann_paths, err)
    decls = parse_declarations(_read(decls_path))
    try:
        model = build_model(sets, decls, doc)
    except ModelError as exc:
        print(f"error: {exc}", file=err)
        raise Invalid from None
    Path(args.output).write_text(serialize_model(model), encoding="utf-8")
    _report(check_model(model), err)


def cmd_model_check(args, out, err):
    _report(check_model(parse_model(_read(args.model))), err)


def cmd_derive(args, out, err):
    model = parse_model(_read(args.model))
    diagnostics = check_model(model)
    if has_errors(diagnostics):
        _report([d for d in diagnostics if d.severity == ERROR], err)
    spec = derive_specs(model)
    if args.format == "json":
        data = {
            "requirements": [{"id": i.id, "name": i.name, "concept": i.concept.value} for i in spec.requirements],
            "components": [{"id": i.id, "name": i.name, "concept": i.concept.value} for i in spec.components],
        }
        _emit(out, json.dumps(data, indent=2, ensure_ascii=False) + "\n")
        return
    lines = [f"requirements: {len(spec.requirements)}", f"components: {len(spec.components)}", ""]
    lines += ["requirements:"] + [f"  {i.id}\t{i.name}\t{i.concept.marker}" for i in spec.requirements]
    lines += ["components:"] + [f"  {i.id}\t{i.name}\t{i.concept.marker}" for i in spec.components]
    _emit(out, "\n".join(lines) + "\n")


def cmd_trace(args, out, err):
    model = parse_model(_read(args.model))
    doc = parse_corpus(_read(args.corpus)) if args.corpus else None
    if args.matrix:
        if doc is None:
            raise argparse.ArgumentError(None, "trace --matrix needs --corpus")
        matrix = trace_matrix(model, doc)
        if args.format == "json":
            data = {
                "columns": [c.id for c in matrix.columns],
                "rows": {str(r): [int(v) for v in row] for r, row in zip(matrix.rows, matrix.cells)},
            }
            _emit(out, json.dumps(data, indent=2) + "\n")
        else:
            _emit(out, matrix.to_csv())
        if args.plot:
            from .plots import plot_trace_matrix

            plot_trace_matrix(matrix, args.plot)
    elif args.from_ref:
        result = trace_forward(model, ProvisionRef.parse(args.from_ref), doc)
        groups = (
            ("requirement", result.requirements),
            ("component", result.components),
            ("indirect", result.indirect),
        )
        if args.format == "json":
            data = {label: [{"id": i.id, "name": i.name} for i in insts] for label, insts in groups}
            _emit(out, json.dumps(data, indent=2, ensure_ascii=False) + "\n")
        else:
            for label, insts in groups:
                for i in insts:
                    print(f"{label}\t{i.id}\t{i.name}", file=out)
    else:
        refs = trace_backward(model, args.to_instance, doc)
        if args.format == "json":
            _emit(out, json.dumps([str(r) for r in refs], indent=2) + "\n")
        else:
            for ref in refs:
                print(ref, file=out)


def cmd_coverage(args, out, err):
    report = coverage(parse_model(_read(args.model)), parse_corpus(_read(args.corpus)))
    if args.format == "json":
        data = {
            "covered": [str(r) for r in report.covered],
            "uncovered": [str(r) for r in report.uncovered],
            "ratio": report.ratio,
        }
        _emit(out, json.dumps(data, indent=2) + "\n")
        return
    total = len(report.covered) + len(report.uncovered)
    print(f"covered: {len(report.covered)}/{total} ({report.ratio:.4f})", file=out)
    for ref in report.uncovered:
        print(f"uncovered\t{ref}", file=out)


def cmd_score(args, out, err):
    doc = parse_corpus(_read(args.corpus))
    gold, *candidates = _load_sets(doc, [args.gold, *args.candidates], err)
    comparisons, gold_components = {}, []
    if args.components:
        if len(args.components) < 2:
            raise argparse.ArgumentError(None, "--components needs <gold-model> <cand-model...>")
        gold_model = parse_model(_read(args.components[0]))
        aliases = parse_aliases(_read(args.aliases)) if args.aliases else []
        gold_components = [
            (i.id, i.name) for i in gold_model.instances if i.level is AbstractionLevel.SYSTEM
        ]
        authors = {c.author for c in candidates}
        for path in args.components[1:]:
            cand_model = parse_model(_read(path))
            owners = {s.author for s in cand_model.annotation_sets} & authors
            if len(owners) != 1:
                raise ScoringError(f"{path}: cannot tell which candidate this model belongs to")
            comparisons[owners.pop()] = compare_components(cand_model, gold_model, aliases)
    rows = [ScoreRow(c.author, score_sets(c, gold), comparisons.get(c.author)) for c in candidates]
    if args.format == "json":
        _emit(out, score_table_json(rows, args.aggregate))
    else:
        _emit(out, score_table_csv(rows, gold_components, args.aggregate))
    if args.plot:
        from .plots import plot_score_table

        plot_score_table(rows, args.plot)


def cmd_survey(args, out, err):
    ds = load_survey(_read(args.file))
    for d in validate_survey(ds):
        print(d, file=err)
    if not args.aggregate:
        _emit(out, dataset_csv(ds))
        return
    summary = aggregate_survey(ds)
    _emit(out, summary_json(summary) if args.format == "json" else summary_csv(summary))
    if args.plot:
        from .plots import plot_survey

        plot_survey(ds, summary, args.plot)


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gdprtrace", description="Annotate, model, trace and score regulatory text."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("parse", help="parse a corpus and list its provisions")
    p.add_argument("corpus")
    fmt(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("validate", help="check annotation files against a corpus")
    p.add_argument("corpus")
    p.add_argument("annotations", nargs="+")
    p.set_defaults(func=cmd_validate)

    model = sub.add_parser("model", help="build or check a content model")
    msub = model.add_subparsers(dest="model_command", required=True)
    p = msub.add_parser("build", help="model build <corpus> <annotations...> <decls> -o <model>")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_model_build)
    p = msub.add_parser("check")
    p.add_argument("model")
    p.set_defaults(func=cmd_model_check)

    p = sub.add_parser("derive", help="list requirements and system components")
    p.add_argument("model")
    fmt(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("trace", help="forward/backward traces or the full matrix")
    p.add_argument("model")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--from", dest="from_ref", metavar="REF")
    group.add_argument("--to", dest="to_instance", metavar="INSTANCE")
    group.add_argument("--matrix", action="store_true")
    p.add_argument("--corpus", help="corpus file; required for --matrix")
    p.add_argument("--plot", metavar="PNG", help="also render the matrix as a figure")
    fmt(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("coverage")
    p.add_argument("model")
    p.add_argument("corpus")
    fmt(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("score", help="score candidate annotation sets against a gold set")
    p.add_argument("corpus")
    p.add_argument("gold")
    p.add_argument("candidates", nargs="+")
    p.add_argument("--components", nargs="+", metavar="MODEL", help="<gold-model> <cand-model...>")
    p.add_argument("--aliases")
    p.add_argument("--aggregate", action="store_true")
    p.add_argument("--plot", metavar="PNG")
    fmt(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("survey", help="validate and aggregate rating/ranking data")
    p.add_argument("file")
    p.add_argument("--aggregate", action="store_true")
    p.add_argument("--plot", metavar="PNG")
    fmt(p)
    p.set_defaults(func=cmd_survey)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        args.func(args, out, err)
    except Invalid:
        return EXIT_INVALID
    except argparse.ArgumentError as exc:
        print(f"usage error: {exc.message}", file=err)
        parser.print_usage(err)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())
