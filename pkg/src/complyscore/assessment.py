"""Assessments: one organisation's answers for one calendar month.

An assessment must cover the referenced checklist completely; every question
gets exactly one answer. Partial submissions are rejected rather than scored,
so percentages always mean the same thing. "Don't know yet" is expressed as
non_compliant, the conservative default.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum

from .checklist import Checklist, ValidationReport, is_absolute_iri
from .errors import ParseFailure, ValidationFailure, ValidationIssue
from .jsonio import (
    canonical_json,
    check_keys,
    decode_utf8_json,
    optional_string,
    require_list,
    require_object,
    require_string,
)

__all__ = [
    "AnswerStatus",
    "Answer",
    "Assessment",
    "parse_assessment",
    "serialize_assessment",
    "assessment_to_dict",
    "validate_assessment",
    "is_valid_period",
    "is_valid_timestamp",
]

_PERIOD = re.compile(r"^\d{4}-(0[1-9]|1[0-2])$")
_TIMESTAMP = re.compile(r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?(Z|\+00:00)$")


class AnswerStatus(str, Enum):
    """Closed set of answer grades. Nothing else parses."""

    COMPLIANT = "compliant"
    NON_COMPLIANT = "non_compliant"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class Answer:
    question_id: str
    status: AnswerStatus
    note: str | None = None
    evidence_uri: str | None = None


@dataclass(frozen=True)
class Assessment:
    org_id: str
    checklist_id: str
    checklist_version: str
    period: str
    submitted_at: str
    answers: tuple[Answer, ...]


def is_valid_period(period: str) -> bool:
    """True for an ISO year-month string with a real month."""
    return bool(_PERIOD.match(period))


def is_valid_timestamp(value: str) -> bool:
    """True for an RFC 3339 timestamp pinned to UTC."""
    if not _TIMESTAMP.match(value):
        return False
    try:
        parsed = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        return False
    return parsed.utcoffset() == timezone.utc.utcoffset(None)


def parse_assessment(document: bytes | str) -> Assessment:
    """Parse an assessment document.

    Raises ParseFailure ("syntax-error", "schema-error") for unusable
    documents, ValidationFailure "bad-status" for grades outside the closed
    set, "bad-period" for a period that is not a real year-month and
    "bad-timestamp"/"bad-iri" for the remaining malformed fields.
    """
    data = require_object(decode_utf8_json(document), "$")
    check_keys(
        data,
        "$",
        ("org_id", "checklist_id", "checklist_version", "period", "submitted_at", "answers"),
    )

    answers = []
    for i, raw_answer in enumerate(require_list(data, "answers", "$")):
        apath = f"answers[{i}]"
        aobj = require_object(raw_answer, apath)
        check_keys(aobj, apath, ("question_id", "status"), ("note", "evidence_uri"))
        raw_status = require_string(aobj, "status", apath)
        try:
            status = AnswerStatus(raw_status)
        except ValueError:
            raise ValidationFailure(
                "bad-status",
                f"{apath}.status: {raw_status!r} is not one of compliant, non_compliant, not_applicable",
            ) from None
        evidence_uri = optional_string(aobj, "evidence_uri", apath)
        if evidence_uri is not None and not is_absolute_iri(evidence_uri):
            raise ValidationFailure("bad-iri", f"{apath}.evidence_uri: {evidence_uri!r} is not an absolute IRI")
        answers.append(
            Answer(
                question_id=require_string(aobj, "question_id", apath),
                status=status,
                note=optional_string(aobj, "note", apath),
                evidence_uri=evidence_uri,
            )
        )

    period = require_string(data, "period", "$")
    if not is_valid_period(period):
        raise ValidationFailure("bad-period", f"$.period: {period!r} is not a valid year-month")
    submitted_at = require_string(data, "submitted_at", "$")
    if not is_valid_timestamp(submitted_at):
        raise ValidationFailure("bad-timestamp", f"$.submitted_at: {submitted_at!r} is not an RFC 3339 UTC timestamp")

    return Assessment(
        org_id=require_string(data, "org_id", "$"),
        checklist_id=require_string(data, "checklist_id", "$"),
        checklist_version=require_string(data, "checklist_version", "$"),
        period=period,
        submitted_at=submitted_at,
        answers=tuple(answers),
    )


def assessment_to_dict(assessment: Assessment) -> dict:
    answers = []
    for answer in assessment.answers:
        aobj: dict = {"question_id": answer.question_id, "status": answer.status.value}
        if answer.note is not None:
            aobj["note"] = answer.note
        if answer.evidence_uri is not None:
            aobj["evidence_uri"] = answer.evidence_uri
        answers.append(aobj)
    return {
        "org_id": assessment.org_id,
        "checklist_id": assessment.checklist_id,
        "checklist_version": assessment.checklist_version,
        "period": assessment.period,
        "submitted_at": assessment.submitted_at,
        "answers": answers,
    }


def serialize_assessment(assessment: Assessment) -> str:
    return canonical_json(assessment_to_dict(assessment))


def validate_assessment(assessment: Assessment, checklist: Checklist) -> ValidationReport:
    """Check an assessment against the checklist it claims to answer.

    The checklist must be the one the assessment references; anything else is
    a caller error and raises checklist-mismatch. Rule violations (missing or
    duplicate answers, unknown questions, a bad period) come back as issues.
    """
    if assessment.checklist_id != checklist.id or assessment.checklist_version != checklist.version:
        raise ValidationFailure(
            "checklist-mismatch",
            f"assessment references {assessment.checklist_id}@{assessment.checklist_version}, "
            f"got checklist {checklist.id}@{checklist.version}",
        )

    issues: list[ValidationIssue] = []
    if not is_valid_period(assessment.period):
        issues.append(ValidationIssue("bad-period", "period", f"{assessment.period!r} is not a valid year-month"))

    known_ids = set(checklist.question_ids())
    seen: set[str] = set()
    for i, answer in enumerate(assessment.answers):
        apath = f"answers[{i}]"
        if answer.question_id not in known_ids:
            issues.append(
                ValidationIssue(
                    "unknown-question", apath, f"question {answer.question_id!r} is not in the checklist"
                )
            )
        elif answer.question_id in seen:
            issues.append(
                ValidationIssue("duplicate-answer", apath, f"question {answer.question_id!r} answered twice")
            )
        seen.add(answer.question_id)

    for question_id in checklist.question_ids():
        if question_id not in seen:
            issues.append(
                ValidationIssue("missing-answer", f"answers.{question_id}", f"no answer for question {question_id!r}")
            )

    return ValidationReport.from_issues(issues)
