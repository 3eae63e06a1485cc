"""Checklist documents: the versioned questionnaires that drive scoring.

A checklist is an ordered list of regulatory sections, each holding ordered
questions. Checklists are immutable once registered; any change requires a
new version string so that old submissions stay scoreable against the exact
document they answered.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources

from .errors import NotFoundError, ValidationFailure, ValidationIssue
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
    "Question",
    "Section",
    "Checklist",
    "ValidationReport",
    "parse_checklist",
    "serialize_checklist",
    "checklist_to_dict",
    "validate_checklist",
    "question_lookup",
    "load_default_checklist",
    "is_absolute_iri",
    "SHORT_ID",
]

# Stable machine-safe codes: lowercase letters, digits, hyphens.
SHORT_ID = re.compile(r"^[a-z0-9-]{1,64}$")

# Absolute IRI: a scheme, a colon, and a non-empty remainder with no
# whitespace or characters that Turtle/IRI grammars forbid unescaped.
_IRI = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:[^\s<>\"{}|\\^`]+$")


def is_absolute_iri(value: str) -> bool:
    return bool(_IRI.match(value))


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    guidance: str | None = None


@dataclass(frozen=True)
class Section:
    id: str
    title: str
    questions: tuple[Question, ...]
    dpv_concept: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation pass. ``ok`` is true iff no error-severity issue."""

    ok: bool
    issues: tuple[ValidationIssue, ...]

    @classmethod
    def from_issues(cls, issues: list[ValidationIssue]) -> "ValidationReport":
        ok = not any(issue.severity == "error" for issue in issues)
        return cls(ok=ok, issues=tuple(issues))


@dataclass(frozen=True)
class Checklist:
    id: str
    version: str
    jurisdiction: str
    title: str
    sections: tuple[Section, ...]

    @cached_property
    def _question_index(self) -> dict[str, tuple[Section, Question]]:
        index: dict[str, tuple[Section, Question]] = {}
        for section in self.sections:
            for question in section.questions:
                index.setdefault(question.id, (section, question))
        return index

    @property
    def question_count(self) -> int:
        return sum(len(section.questions) for section in self.sections)

    def question_ids(self) -> list[str]:
        return [q.id for s in self.sections for q in s.questions]


def parse_checklist(document: bytes | str) -> Checklist:
    """Parse a checklist document, enforcing schema and structural rules.

    Raises ParseFailure with code "syntax-error" for malformed text,
    "schema-error" for missing or unknown keys, and ValidationFailure with
    the first violated rule's code when the document decodes but breaks an
    invariant (duplicate ids, empty sections, bad IRIs).
    """
    data = require_object(decode_utf8_json(document), "$")
    check_keys(data, "$", ("id", "version", "jurisdiction", "title", "sections"))

    sections = []
    raw_sections = require_list(data, "sections", "$")
    for i, raw_section in enumerate(raw_sections):
        spath = f"sections[{i}]"
        sobj = require_object(raw_section, spath)
        check_keys(sobj, spath, ("id", "title", "questions"), ("dpv_concept",))
        questions = []
        for j, raw_question in enumerate(require_list(sobj, "questions", spath)):
            qpath = f"{spath}.questions[{j}]"
            qobj = require_object(raw_question, qpath)
            check_keys(qobj, qpath, ("id", "text"), ("guidance",))
            questions.append(
                Question(
                    id=require_string(qobj, "id", qpath),
                    text=require_string(qobj, "text", qpath),
                    guidance=optional_string(qobj, "guidance", qpath),
                )
            )
        sections.append(
            Section(
                id=require_string(sobj, "id", spath),
                title=require_string(sobj, "title", spath),
                questions=tuple(questions),
                dpv_concept=optional_string(sobj, "dpv_concept", spath),
            )
        )

    checklist = Checklist(
        id=require_string(data, "id", "$"),
        version=require_string(data, "version", "$"),
        jurisdiction=require_string(data, "jurisdiction", "$"),
        title=require_string(data, "title", "$"),
        sections=tuple(sections),
    )
    report = validate_checklist(checklist)
    if not report.ok:
        first = next(issue for issue in report.issues if issue.severity == "error")
        raise ValidationFailure(first.code, f"{first.path}: {first.message}", report.issues)
    return checklist


def checklist_to_dict(checklist: Checklist) -> dict:
    """Plain-dict form with keys in canonical order; optional keys omitted."""
    sections = []
    for section in checklist.sections:
        sobj: dict = {"id": section.id, "title": section.title}
        if section.dpv_concept is not None:
            sobj["dpv_concept"] = section.dpv_concept
        sobj["questions"] = []
        for question in section.questions:
            qobj: dict = {"id": question.id, "text": question.text}
            if question.guidance is not None:
                qobj["guidance"] = question.guidance
            sobj["questions"].append(qobj)
        sections.append(sobj)
    return {
        "id": checklist.id,
        "version": checklist.version,
        "jurisdiction": checklist.jurisdiction,
        "title": checklist.title,
        "sections": sections,
    }


def serialize_checklist(checklist: Checklist) -> str:
    return canonical_json(checklist_to_dict(checklist))


def validate_checklist(checklist: Checklist) -> ValidationReport:
    """Check every structural rule; violations are data, not exceptions."""
    issues: list[ValidationIssue] = []

    if not checklist.sections:
        issues.append(ValidationIssue("no-sections", "sections", "checklist has no sections"))

    seen_sections: set[str] = set()
    seen_questions: dict[str, str] = {}
    for i, section in enumerate(checklist.sections):
        spath = f"sections[{i}]"
        if not SHORT_ID.match(section.id):
            issues.append(
                ValidationIssue("bad-id", f"{spath}.id", f"section id {section.id!r} is not a short code")
            )
        if section.id in seen_sections:
            issues.append(
                ValidationIssue("duplicate-section-id", f"{spath}.id", f"section id {section.id!r} appears twice")
            )
        seen_sections.add(section.id)
        if section.dpv_concept is not None and not is_absolute_iri(section.dpv_concept):
            issues.append(
                ValidationIssue("bad-iri", f"{spath}.dpv_concept", f"{section.dpv_concept!r} is not an absolute IRI")
            )
        if not section.questions:
            issues.append(ValidationIssue("empty-section", spath, f"section {section.id!r} has no questions"))
        for j, question in enumerate(section.questions):
            qpath = f"{spath}.questions[{j}]"
            if not SHORT_ID.match(question.id):
                issues.append(
                    ValidationIssue("bad-id", f"{qpath}.id", f"question id {question.id!r} is not a short code")
                )
            if question.id in seen_questions:
                issues.append(
                    ValidationIssue(
                        "duplicate-question-id",
                        f"{qpath}.id",
                        f"question id {question.id!r} already used at {seen_questions[question.id]}",
                    )
                )
            else:
                seen_questions[question.id] = f"{qpath}.id"
            if not question.text.strip():
                issues.append(ValidationIssue("empty-text", f"{qpath}.text", "question text is empty"))

    return ValidationReport.from_issues(issues)


def question_lookup(checklist: Checklist, question_id: str) -> tuple[Section, Question]:
    """Return the owning section and the question for ``question_id``."""
    try:
        return checklist._question_index[question_id]
    except KeyError:
        raise NotFoundError("unknown-question", f"no question with id {question_id!r}") from None


def load_default_checklist() -> Checklist:
    """The checklist shipped with the package: 8 sections, 54 questions."""
    document = resources.files("complyscore").joinpath("data/default_checklist.json").read_bytes()
    return parse_checklist(document)
