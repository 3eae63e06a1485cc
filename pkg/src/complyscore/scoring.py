"""Pure scoring: total score, per-section scores and non-compliance findings.

All arithmetic is exact. Counts stay integers, ratios are integer pairs and
rounding happens once, at display time, half away from zero. not_applicable
answers are excluded from both numerator and denominator, so they can never
distort a score; a section with nothing applicable is "not assessed" and is
excluded from the total as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .assessment import Assessment, AnswerStatus, validate_assessment
from .checklist import Checklist
from .errors import ValidationFailure
from .jsonio import canonical_json_bytes

__all__ = [
    "Ratio",
    "SectionScore",
    "Finding",
    "ComplianceReport",
    "score_assessment",
    "extract_findings",
    "render_percent",
    "percent_value",
    "report_to_dict",
    "report_json_bytes",
]


@dataclass(frozen=True)
class Ratio:
    """A compliant-over-applicable count pair, kept unreduced.

    3/6 stays 3/6 so the underlying counts remain visible; use
    ``as_fraction`` for exact comparisons and arithmetic.
    """

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if not 0 <= self.numerator <= self.denominator:
            raise ValueError("numerator must be within [0, denominator]")

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True)
class SectionScore:
    section_id: str
    title: str
    applicable: int
    compliant: int
    ratio: Ratio | None


@dataclass(frozen=True)
class Finding:
    section_id: str
    question_id: str
    question_text: str
    status: AnswerStatus
    note: str | None = None


@dataclass(frozen=True)
class ComplianceReport:
    org_id: str
    period: str
    checklist_id: str
    checklist_version: str
    total: Ratio | None
    sections: tuple[SectionScore, ...]
    findings: tuple[Finding, ...]


def percent_value(ratio: Ratio) -> int:
    """Integer percent of ``ratio``, rounded half away from zero.

    floor(100n/d + 1/2) computed in integers; ratios are non-negative so
    half away from zero coincides with rounding ties up.
    """
    return (200 * ratio.numerator + ratio.denominator) // (2 * ratio.denominator)


def render_percent(ratio: Ratio) -> str:
    return f"{percent_value(ratio)}%"


def _require_valid(assessment: Assessment, checklist: Checklist) -> None:
    report = validate_assessment(assessment, checklist)
    if not report.ok:
        raise ValidationFailure("invalid-assessment", "assessment does not validate against its checklist", report.issues)


def score_assessment(assessment: Assessment, checklist: Checklist) -> ComplianceReport:
    """Compute the three-layer result for one validated assessment."""
    _require_valid(assessment, checklist)
    by_question = {answer.question_id: answer for answer in assessment.answers}

    sections: list[SectionScore] = []
    findings: list[Finding] = []
    total_compliant = 0
    total_applicable = 0
    for section in checklist.sections:
        applicable = 0
        compliant = 0
        for question in section.questions:
            answer = by_question[question.id]
            if answer.status is AnswerStatus.NOT_APPLICABLE:
                continue
            applicable += 1
            if answer.status is AnswerStatus.COMPLIANT:
                compliant += 1
            else:
                findings.append(
                    Finding(
                        section_id=section.id,
                        question_id=question.id,
                        question_text=question.text,
                        status=answer.status,
                        note=answer.note,
                    )
                )
        ratio = Ratio(compliant, applicable) if applicable else None
        sections.append(
            SectionScore(
                section_id=section.id,
                title=section.title,
                applicable=applicable,
                compliant=compliant,
                ratio=ratio,
            )
        )
        total_compliant += compliant
        total_applicable += applicable

    total = Ratio(total_compliant, total_applicable) if total_applicable else None
    return ComplianceReport(
        org_id=assessment.org_id,
        period=assessment.period,
        checklist_id=assessment.checklist_id,
        checklist_version=assessment.checklist_version,
        total=total,
        sections=tuple(sections),
        findings=tuple(findings),
    )


def extract_findings(assessment: Assessment, checklist: Checklist) -> list[Finding]:
    """The non-compliant answers, carrying question text, in checklist order."""
    _require_valid(assessment, checklist)
    by_question = {answer.question_id: answer for answer in assessment.answers}
    findings = []
    for section in checklist.sections:
        for question in section.questions:
            answer = by_question[question.id]
            if answer.status is AnswerStatus.NON_COMPLIANT:
                findings.append(
                    Finding(
                        section_id=section.id,
                        question_id=question.id,
                        question_text=question.text,
                        status=answer.status,
                        note=answer.note,
                    )
                )
    return findings


def _ratio_to_dict(ratio: Ratio | None) -> dict | None:
    if ratio is None:
        return None
    return {
        "compliant": ratio.numerator,
        "applicable": ratio.denominator,
        "percent": percent_value(ratio),
    }


def report_to_dict(report: ComplianceReport) -> dict:
    sections = []
    for score in report.sections:
        sections.append(
            {
                "id": score.section_id,
                "title": score.title,
                "compliant": score.compliant,
                "applicable": score.applicable,
                "percent": percent_value(score.ratio) if score.ratio is not None else None,
            }
        )
    findings = []
    for finding in report.findings:
        findings.append(
            {
                "section_id": finding.section_id,
                "question_id": finding.question_id,
                "text": finding.question_text,
                "note": finding.note,
            }
        )
    return {
        "org_id": report.org_id,
        "period": report.period,
        "checklist": {"id": report.checklist_id, "version": report.checklist_version},
        "total": _ratio_to_dict(report.total),
        "sections": sections,
        "findings": findings,
    }


def report_json_bytes(report: ComplianceReport) -> bytes:
    """Canonical machine-readable report; the bytes served over the API."""
    return canonical_json_bytes(report_to_dict(report))
