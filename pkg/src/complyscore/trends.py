"""Score series over time and cross-organisation comparison.

Trend points are copied verbatim from the period reports; nothing is
recomputed here. Benchmarks only compare organisations assessed against the
same checklist id, because percentages over different question sets are not
commensurable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationFailure
from .jsonio import canonical_json_bytes
from .scoring import ComplianceReport, Ratio, percent_value, score_assessment

__all__ = [
    "TrendPoint",
    "TrendSeries",
    "BenchmarkRow",
    "build_trend",
    "trend_delta",
    "format_delta",
    "benchmark",
    "org_reports",
    "trend_to_dict",
    "trend_json_bytes",
    "benchmark_to_dict",
    "benchmark_json_bytes",
]


@dataclass(frozen=True)
class TrendPoint:
    period: str
    total: Ratio | None
    sections: tuple[tuple[str, Ratio | None], ...]


@dataclass(frozen=True)
class TrendSeries:
    org_id: str | None
    checklist_id: str | None
    points: tuple[TrendPoint, ...]


@dataclass(frozen=True)
class BenchmarkRow:
    org_id: str
    latest_period: str | None
    total: Ratio | None


def build_trend(
    reports: list[ComplianceReport],
    org_id: str | None = None,
    checklist_id: str | None = None,
) -> TrendSeries:
    """Order one organisation's reports into a strictly ascending series.

    Input order does not matter. Identical duplicate periods are collapsed;
    two different reports for the same period are refused because there is
    no order-independent way to pick one.
    """
    for report in reports:
        if org_id is None:
            org_id = report.org_id
        elif report.org_id != org_id:
            raise ValidationFailure("mixed-org", f"reports mix org {org_id!r} and {report.org_id!r}")
        if checklist_id is None:
            checklist_id = report.checklist_id
        elif report.checklist_id != checklist_id:
            raise ValidationFailure(
                "mixed-checklist", f"reports mix checklist {checklist_id!r} and {report.checklist_id!r}"
            )

    by_period: dict[str, ComplianceReport] = {}
    for report in reports:
        existing = by_period.get(report.period)
        if existing is not None and existing != report:
            raise ValidationFailure("duplicate-period", f"two different reports for period {report.period}")
        by_period[report.period] = report

    points = []
    for period in sorted(by_period):
        report = by_period[period]
        sections = tuple((score.section_id, score.ratio) for score in report.sections)
        points.append(TrendPoint(period=period, total=report.total, sections=sections))
    return TrendSeries(org_id=org_id, checklist_id=checklist_id, points=tuple(points))


def trend_delta(series: TrendSeries) -> list[tuple[str, Fraction | None]]:
    """Per-period change of the total, in percent points, exact.

    One entry per consecutive pair, keyed by the later period. The change is
    None when either endpoint has no total.
    """
    deltas: list[tuple[str, Fraction | None]] = []
    for previous, current in zip(series.points, series.points[1:]):
        if previous.total is None or current.total is None:
            deltas.append((current.period, None))
        else:
            change = (current.total.as_fraction() - previous.total.as_fraction()) * 100
            deltas.append((current.period, change))
    return deltas


def _round_half_away(value: Fraction) -> int:
    sign = -1 if value < 0 else 1
    magnitude = abs(value)
    return sign * int((magnitude + Fraction(1, 2)).__floor__())


def format_delta(change: Fraction) -> str:
    """Signed percent-point change with one fractional digit, e.g. "+7.4"."""
    tenths = _round_half_away(change * 10)
    sign = "-" if tenths < 0 else "+"
    magnitude = abs(tenths)
    return f"{sign}{magnitude // 10}.{magnitude % 10}"


def org_reports(store, org_id: str) -> list[ComplianceReport]:
    """Score the latest submission of every period stored for ``org_id``."""
    reports = []
    for period in store.list_periods(org_id):
        assessment = store.load_latest(org_id, period)
        checklist = store.get_checklist(assessment.checklist_id, assessment.checklist_version)
        reports.append(score_assessment(assessment, checklist))
    return reports


def benchmark(org_ids: list[str], store) -> list[BenchmarkRow]:
    """Latest total per organisation, best first.

    Ordering is total descending, absent totals last, ties broken by org_id
    ascending. Organisations without submissions still get a row.
    """
    if not org_ids:
        raise ValidationFailure("missing-orgs", "benchmark needs at least one organisation id")

    rows = []
    checklist_ids: set[str] = set()
    for org_id in sorted(set(org_ids)):
        periods = store.list_periods(org_id)
        if not periods:
            rows.append(BenchmarkRow(org_id=org_id, latest_period=None, total=None))
            continue
        latest = periods[-1]
        assessment = store.load_latest(org_id, latest)
        checklist = store.get_checklist(assessment.checklist_id, assessment.checklist_version)
        checklist_ids.add(checklist.id)
        report = score_assessment(assessment, checklist)
        rows.append(BenchmarkRow(org_id=org_id, latest_period=latest, total=report.total))

    if len(checklist_ids) > 1:
        raise ValidationFailure(
            "mixed-checklist",
            f"organisations were assessed against different checklists: {', '.join(sorted(checklist_ids))}",
        )

    def sort_key(row: BenchmarkRow):
        if row.total is None:
            return (1, Fraction(0), row.org_id)
        return (0, -row.total.as_fraction(), row.org_id)

    return sorted(rows, key=sort_key)


def _ratio_to_dict(ratio: Ratio | None) -> dict | None:
    if ratio is None:
        return None
    return {"compliant": ratio.numerator, "applicable": ratio.denominator, "percent": percent_value(ratio)}


def trend_to_dict(series: TrendSeries) -> dict:
    points = []
    for point in series.points:
        points.append(
            {
                "period": point.period,
                "total": _ratio_to_dict(point.total),
                "sections": [
                    {"id": section_id, "score": _ratio_to_dict(ratio)} for section_id, ratio in point.sections
                ],
            }
        )
    return {"org_id": series.org_id, "checklist_id": series.checklist_id, "points": points}


def trend_json_bytes(series: TrendSeries) -> bytes:
    return canonical_json_bytes(trend_to_dict(series))


def benchmark_to_dict(rows: list[BenchmarkRow]) -> dict:
    return {
        "rows": [
            {"org_id": row.org_id, "latest_period": row.latest_period, "total": _ratio_to_dict(row.total)}
            for row in rows
        ]
    }


def benchmark_json_bytes(rows: list[BenchmarkRow]) -> bytes:
    return canonical_json_bytes(benchmark_to_dict(rows))
