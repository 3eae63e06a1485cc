"""Durable append-only storage for checklists and assessment submissions.

Layout under one data directory:

    {data_dir}/journal.ndjson              one event per line, never rewritten
    {data_dir}/checklists/{id}@{version}.json   canonical checklist documents

The journal is the source of truth; a store is rebuilt by replaying it line
by line, and a line that does not parse (an interrupted final append) is
skipped. Every resubmission for the same organisation and period gets the
next revision number; earlier revisions stay in the journal for audit.

Writes are serialised through one lock. Readers get immutable values, so any
number of them can run concurrently with at most one writer.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .assessment import Assessment, assessment_to_dict, parse_assessment, serialize_assessment, validate_assessment
from .checklist import Checklist, parse_checklist, serialize_checklist, validate_checklist
from .errors import ComplianceError, ConflictError, NotFoundError, ValidationFailure

__all__ = ["SubmissionRecord", "Store"]


@dataclass(frozen=True)
class SubmissionRecord:
    sequence_no: int
    revision: int
    assessment: Assessment
    received_at: str


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class Store:
    """Journal-backed store; one instance per data directory."""

    def __init__(self, data_dir: str | Path):
        self._dir = Path(data_dir)
        self._journal = self._dir / "journal.ndjson"
        self._checklist_dir = self._dir / "checklists"
        self._lock = threading.RLock()
        self._checklists: dict[tuple[str, str], Checklist] = {}
        self._latest: dict[tuple[str, str], tuple[int, Assessment]] = {}
        self._records: list[SubmissionRecord] = []
        self._seq = 0
        self._dir.mkdir(parents=True, exist_ok=True)
        self._checklist_dir.mkdir(parents=True, exist_ok=True)
        self._replay()

    # -- journal plumbing ---------------------------------------------------

    def _replay(self) -> None:
        if not self._journal.exists():
            return
        with self._journal.open("r", encoding="utf-8") as handle:
            for line in handle:
                try:
                    event = json.loads(line)
                except json.JSONDecodeError:
                    # Interrupted append; the record never completed.
                    continue
                if not isinstance(event, dict):
                    continue
                self._seq = max(self._seq, int(event.get("seq", 0)))
                kind = event.get("kind")
                if kind == "checklist":
                    self._replay_checklist(event)
                elif kind == "submission":
                    self._replay_submission(event)

    def _replay_checklist(self, event: dict) -> None:
        key = (event["id"], event["version"])
        path = self._checklist_path(*key)
        if not path.exists():
            raise ComplianceError(
                "corrupt-store", f"journal registers {key[0]}@{key[1]} but {path.name} is missing"
            )
        self._checklists[key] = parse_checklist(path.read_bytes())

    def _replay_submission(self, event: dict) -> None:
        assessment = parse_assessment(json.dumps(event["assessment"]))
        record = SubmissionRecord(
            sequence_no=int(event["seq"]),
            revision=int(event["revision"]),
            assessment=assessment,
            received_at=event["received_at"],
        )
        self._records.append(record)
        key = (assessment.org_id, assessment.period)
        current = self._latest.get(key)
        if current is None or record.revision >= current[0]:
            self._latest[key] = (record.revision, assessment)

    def _append(self, event: dict) -> None:
        line = json.dumps(event, ensure_ascii=False)
        with self._journal.open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")
            handle.flush()

    def _checklist_path(self, checklist_id: str, version: str) -> Path:
        return self._checklist_dir / f"{checklist_id}@{version}.json"

    # -- checklists ---------------------------------------------------------

    def register_checklist(self, checklist: Checklist) -> None:
        """Store a checklist under its (id, version).

        Registering the identical document again is a no-op; registering a
        different document under the same key is refused, because registered
        checklists are immutable.
        """
        report = validate_checklist(checklist)
        if not report.ok:
            raise ValidationFailure("invalid-checklist", "checklist does not validate", report.issues)
        key = (checklist.id, checklist.version)
        document = serialize_checklist(checklist).encode("utf-8")
        with self._lock:
            path = self._checklist_path(*key)
            if path.exists():
                if path.read_bytes() != document:
                    raise ConflictError(
                        "version-conflict",
                        f"checklist {key[0]}@{key[1]} is already registered with different content",
                    )
                if key in self._checklists:
                    return
            else:
                path.write_bytes(document)
            self._seq += 1
            self._append(
                {
                    "kind": "checklist",
                    "seq": self._seq,
                    "id": checklist.id,
                    "version": checklist.version,
                    "registered_at": _utc_now(),
                }
            )
            self._checklists[key] = checklist

    def get_checklist(self, checklist_id: str, version: str) -> Checklist:
        with self._lock:
            checklist = self._checklists.get((checklist_id, version))
        if checklist is None:
            raise NotFoundError("unknown-checklist", f"checklist {checklist_id}@{version} is not registered")
        return checklist

    def list_checklists(self) -> list[Checklist]:
        with self._lock:
            return [self._checklists[key] for key in sorted(self._checklists)]

    # -- submissions ----------------------------------------------------------

    def submit_assessment(self, assessment: Assessment) -> int:
        """Append a submission and return its revision (1 for the first)."""
        with self._lock:
            checklist = self._checklists.get((assessment.checklist_id, assessment.checklist_version))
            if checklist is None:
                raise NotFoundError(
                    "unknown-checklist",
                    f"checklist {assessment.checklist_id}@{assessment.checklist_version} is not registered",
                )
            report = validate_assessment(assessment, checklist)
            if not report.ok:
                raise ValidationFailure(
                    "invalid-assessment", "assessment does not validate against its checklist", report.issues
                )
            key = (assessment.org_id, assessment.period)
            current = self._latest.get(key)
            revision = 1 if current is None else current[0] + 1
            self._seq += 1
            received_at = _utc_now()
            self._append(
                {
                    "kind": "submission",
                    "seq": self._seq,
                    "revision": revision,
                    "received_at": received_at,
                    "assessment": assessment_to_dict(assessment),
                }
            )
            self._records.append(
                SubmissionRecord(
                    sequence_no=self._seq, revision=revision, assessment=assessment, received_at=received_at
                )
            )
            self._latest[key] = (revision, assessment)
            return revision

    def load_latest(self, org_id: str, period: str) -> Assessment:
        with self._lock:
            entry = self._latest.get((org_id, period))
        if entry is None:
            raise NotFoundError("not-found", f"no submission for {org_id!r} in {period}")
        return entry[1]

    def latest_revision(self, org_id: str, period: str) -> int:
        with self._lock:
            entry = self._latest.get((org_id, period))
        if entry is None:
            raise NotFoundError("not-found", f"no submission for {org_id!r} in {period}")
        return entry[0]

    def list_periods(self, org_id: str) -> list[str]:
        with self._lock:
            return sorted({period for org, period in self._latest if org == org_id})

    def records(self) -> list[SubmissionRecord]:
        """Full submission history, oldest first (audit view)."""
        with self._lock:
            return list(self._records)
