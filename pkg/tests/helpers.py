"""Shared fixture builders for the test suite."""

from __future__ import annotations

from fractions import Fraction

from complyscore.assessment import Answer, AnswerStatus, Assessment, assessment_to_dict
from complyscore.checklist import Checklist, Question, Section
from complyscore.jsonio import canonical_json_bytes

# Ratio class each section of the reference fixture must land on, in
# checklist order, and the percent strings they must render as.
TABLE2_TARGETS = [
    Fraction(2, 3),
    Fraction(2, 5),
    Fraction(1),
    Fraction(1),
    Fraction(5, 6),
    Fraction(1),
    Fraction(1, 2),
    Fraction(1),
]
TABLE2_PERCENTS = ["67%", "40%", "100%", "100%", "83%", "100%", "50%", "100%"]

# The three data-breach questions with known published texts.
TABLE3_TEXTS = [
    "Are plans and procedures regularly reviewed?",
    "Are all data breaches fully documented?",
    "Are there cooperation procedures in place between data controllers, suppliers and other partners to deal with data breaches?",
]


def build_assessment(
    checklist: Checklist,
    statuses: dict[str, AnswerStatus] | None = None,
    *,
    org_id: str = "orgA",
    period: str = "2019-01",
    submitted_at: str = "2019-01-31T12:00:00Z",
    default: AnswerStatus = AnswerStatus.COMPLIANT,
) -> Assessment:
    """Complete assessment over ``checklist``; ``statuses`` overrides per id."""
    statuses = statuses or {}
    answers = tuple(
        Answer(question_id=question_id, status=AnswerStatus(statuses.get(question_id, default)))
        for question_id in checklist.question_ids()
    )
    return Assessment(
        org_id=org_id,
        checklist_id=checklist.id,
        checklist_version=checklist.version,
        period=period,
        submitted_at=submitted_at,
        answers=answers,
    )


def assessment_body(assessment: Assessment) -> bytes:
    return canonical_json_bytes(assessment_to_dict(assessment))


def compliant_counts_for_targets(checklist: Checklist, targets: list[Fraction]) -> dict[str, int]:
    """Brute force: for each section, enumerate every possible compliant
    count and keep the one whose exact fraction equals the target."""
    counts: dict[str, int] = {}
    for section, target in zip(checklist.sections, targets):
        size = len(section.questions)
        matches = [k for k in range(size + 1) if Fraction(k, size) == target]
        assert matches, f"section {section.id} ({size} questions) cannot score exactly {target}"
        counts[section.id] = matches[0]
    return counts


def table2_assessment(checklist: Checklist, **kwargs) -> Assessment:
    """Assessment whose section scores land exactly on the reference
    percent rows; the first k questions of each section are compliant and
    the rest non-compliant."""
    counts = compliant_counts_for_targets(checklist, TABLE2_TARGETS)
    statuses: dict[str, AnswerStatus] = {}
    for section in checklist.sections:
        keep = counts[section.id]
        for i, question in enumerate(section.questions):
            statuses[question.id] = AnswerStatus.COMPLIANT if i < keep else AnswerStatus.NON_COMPLIANT
    return build_assessment(checklist, statuses, **kwargs)


def small_checklist(n_sections: int = 2, n_questions: int = 2, **overrides) -> Checklist:
    """Tiny hand-rolled checklist for unit tests."""
    sections = tuple(
        Section(
            id=f"sec-{s}",
            title=f"Section {s}",
            questions=tuple(
                Question(id=f"q-{s}-{q}", text=f"Question {s}.{q}?") for q in range(n_questions)
            ),
        )
        for s in range(n_sections)
    )
    fields = {
        "id": "mini",
        "version": "1.0",
        "jurisdiction": "EU",
        "title": "Mini checklist",
        "sections": sections,
    }
    fields.update(overrides)
    return Checklist(**fields)
