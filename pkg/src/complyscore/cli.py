"""Command-line entry point wrapping every engine capability.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
Every failure prints exactly one JSON line to stderr with a stable "code"
and a human-readable "message"; stdout carries only results.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .assessment import parse_assessment
from .checklist import load_default_checklist, parse_checklist, serialize_checklist, validate_checklist
from .cube import build_cube, serialize_turtle
from .errors import ComplianceError
from .scoring import ComplianceReport, percent_value, report_json_bytes, score_assessment
from .service import DEFAULT_BASE_IRI, serve
from .store import Store
from .trends import (
    TrendSeries,
    benchmark,
    benchmark_json_bytes,
    build_trend,
    format_delta,
    org_reports,
    trend_delta,
    trend_json_bytes,
)

__all__ = ["run", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the exit-code contract
    instead of exiting on its own."""

    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="complyscore", description="GDPR self-assessment scoring and reporting")
    commands = parser.add_subparsers(dest="command", required=True)

    checklist = commands.add_parser("checklist", help="checklist operations")
    checklist_commands = checklist.add_subparsers(dest="subcommand", required=True)
    validate = checklist_commands.add_parser("validate", help="validate a checklist document")
    validate.add_argument("file")
    register = checklist_commands.add_parser("register", help="register a checklist in a data directory")
    register.add_argument("--data-dir", required=True)
    register.add_argument("--file", required=True)
    default = checklist_commands.add_parser("default", help="print the shipped default checklist")
    default.add_argument("-o", "--output", default=None)

    assess = commands.add_parser("assess", help="assessment operations")
    assess_commands = assess.add_subparsers(dest="subcommand", required=True)
    submit = assess_commands.add_parser("submit", help="submit an assessment document")
    submit.add_argument("--data-dir", required=True)
    submit.add_argument("--file", required=True)

    report = commands.add_parser("report", help="compliance report for one organisation and period")
    report.add_argument("--data-dir", required=True)
    report.add_argument("--org", required=True)
    report.add_argument("--period", required=True)
    report.add_argument("--format", choices=("json", "text"), default="json")

    trend = commands.add_parser("trend", help="score series for one organisation")
    trend.add_argument("--data-dir", required=True)
    trend.add_argument("--org", required=True)
    trend.add_argument("--format", choices=("json", "text"), default="json")

    bench = commands.add_parser("benchmark", help="compare organisations by latest total")
    bench.add_argument("--data-dir", required=True)
    bench.add_argument("--orgs", required=True, help="comma-separated organisation ids")
    bench.add_argument("--format", choices=("json", "text"), default="json")

    export = commands.add_parser("export", help="export operations")
    export_commands = export.add_subparsers(dest="subcommand", required=True)
    cube = export_commands.add_parser("cube", help="write the score cube as Turtle")
    cube.add_argument("--data-dir", required=True)
    cube.add_argument("--org", required=True)
    cube.add_argument("--base-iri", required=True)
    cube.add_argument("-o", "--output", required=True)

    server = commands.add_parser("serve", help="run the HTTP API")
    server.add_argument("--data-dir", required=True)
    server.add_argument("--listen", default="127.0.0.1:8080")
    server.add_argument("--base-iri", default=DEFAULT_BASE_IRI)

    return parser


def _error_line(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"code": code, "message": message}, ensure_ascii=False) + "\n")


def _read_file(path: str) -> bytes:
    return Path(path).read_bytes()


def _render_report_text(report: ComplianceReport) -> str:
    lines = [
        f"Organisation: {report.org_id}",
        f"Period:       {report.period}",
        f"Checklist:    {report.checklist_id} {report.checklist_version}",
        "",
    ]
    if report.total is not None:
        lines.append(
            f"Total: {percent_value(report.total)}%  "
            f"({report.total.numerator} of {report.total.denominator} applicable)"
        )
    else:
        lines.append("Total: not assessed")
    lines.append("")

    width = max(len("Section"), *(len(s.title) for s in report.sections))
    lines.append(f"{'Section':<{width}}  {'Compliant':>12}")
    for score in report.sections:
        cell = f"{percent_value(score.ratio)}%" if score.ratio is not None else "not assessed"
        lines.append(f"{score.title:<{width}}  {cell:>12}")
    lines.append("")

    if not report.findings:
        lines.append("No findings.")
    else:
        lines.append(f"Findings ({len(report.findings)})")
        titles = {s.section_id: s.title for s in report.sections}
        section_width = max(len("Section"), *(len(titles[f.section_id]) for f in report.findings))
        text_width = max(len("Question"), *(len(f.question_text) for f in report.findings))
        lines.append(f"{'Section':<{section_width}}  {'Question':<{text_width}}  Status")
        for finding in report.findings:
            lines.append(
                f"{titles[finding.section_id]:<{section_width}}  "
                f"{finding.question_text:<{text_width}}  non-compliant"
            )
    return "\n".join(lines) + "\n"


def _render_trend_text(series: TrendSeries) -> str:
    lines = [f"Organisation: {series.org_id}", ""]
    if not series.points:
        lines.append("No submissions.")
        return "\n".join(lines) + "\n"
    deltas = dict(trend_delta(series))
    lines.append(f"{'Period':<8}  {'Total':>12}  Change")
    for point in series.points:
        total = f"{percent_value(point.total)}%" if point.total is not None else "not assessed"
        change = deltas.get(point.period)
        change_cell = format_delta(change) if change is not None else ""
        lines.append(f"{point.period:<8}  {total:>12}  {change_cell}".rstrip())
    return "\n".join(lines) + "\n"


def _render_benchmark_text(rows) -> str:
    width = max(len("Organisation"), *(len(r.org_id) for r in rows))
    lines = [f"{'Organisation':<{width}}  {'Latest':<8}  Total"]
    for row in rows:
        latest = row.latest_period or "-"
        total = f"{percent_value(row.total)}%" if row.total is not None else "not assessed"
        lines.append(f"{row.org_id:<{width}}  {latest:<8}  {total}")
    return "\n".join(lines) + "\n"


def _cmd_checklist(args) -> int:
    if args.subcommand == "validate":
        checklist = parse_checklist(_read_file(args.file))
        report = validate_checklist(checklist)
        if not report.ok:
            first = report.issues[0]
            _error_line(first.code, f"{first.path}: {first.message}")
            return 1
        sys.stdout.write(f"ok: {checklist.id}@{checklist.version} ({len(checklist.sections)} sections, "
                         f"{checklist.question_count} questions)\n")
        return 0
    if args.subcommand == "register":
        checklist = parse_checklist(_read_file(args.file))
        Store(args.data_dir).register_checklist(checklist)
        sys.stdout.write(f"registered {checklist.id}@{checklist.version}\n")
        return 0
    document = serialize_checklist(load_default_checklist())
    if args.output:
        Path(args.output).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)
    return 0


def _cmd_assess(args) -> int:
    assessment = parse_assessment(_read_file(args.file))
    revision = Store(args.data_dir).submit_assessment(assessment)
    sys.stdout.write(json.dumps({"revision": revision}) + "\n")
    return 0


def _cmd_report(args) -> int:
    store = Store(args.data_dir)
    assessment = store.load_latest(args.org, args.period)
    checklist = store.get_checklist(assessment.checklist_id, assessment.checklist_version)
    report = score_assessment(assessment, checklist)
    if args.format == "json":
        sys.stdout.write(report_json_bytes(report).decode("utf-8"))
    else:
        sys.stdout.write(_render_report_text(report))
    return 0


def _cmd_trend(args) -> int:
    store = Store(args.data_dir)
    series = build_trend(org_reports(store, args.org), org_id=args.org)
    if args.format == "json":
        sys.stdout.write(trend_json_bytes(series).decode("utf-8"))
    else:
        sys.stdout.write(_render_trend_text(series))
    return 0


def _cmd_benchmark(args) -> int:
    org_ids = [org for org in args.orgs.split(",") if org]
    rows = benchmark(org_ids, Store(args.data_dir))
    if args.format == "json":
        sys.stdout.write(benchmark_json_bytes(rows).decode("utf-8"))
    else:
        sys.stdout.write(_render_benchmark_text(rows))
    return 0


def _cmd_export(args) -> int:
    store = Store(args.data_dir)
    reports = org_reports(store, args.org)
    periods = store.list_periods(args.org)
    if not periods:
        raise ComplianceError("not-found", f"no submissions for {args.org!r}")
    latest = store.load_latest(args.org, periods[-1])
    checklist = store.get_checklist(latest.checklist_id, latest.checklist_version)
    graph = build_cube(args.org, reports, checklist, args.base_iri)
    Path(args.output).write_text(serialize_turtle(graph), encoding="utf-8")
    sys.stdout.write(f"wrote {len(graph.statements)} statements to {args.output}\n")
    return 0


def _cmd_serve(args) -> int:
    store = Store(args.data_dir)
    token = os.environ.get("COMPLIANCE_TOKEN") or None
    serve(store, args.listen, base_iri=args.base_iri, token=token)
    return 0


_HANDLERS = {
    "checklist": _cmd_checklist,
    "assess": _cmd_assess,
    "report": _cmd_report,
    "trend": _cmd_trend,
    "benchmark": _cmd_benchmark,
    "export": _cmd_export,
    "serve": _cmd_serve,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _error_line("usage", str(exc))
        return 2
    try:
        return _HANDLERS[args.command](args)
    except ComplianceError as exc:
        _error_line(exc.code, exc.message)
        return 1
    except OSError as exc:
        _error_line("io-error", str(exc))
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
