import json
from concurrent.futures import ThreadPoolExecutor

import pytest

from complyscore.checklist import parse_checklist, serialize_checklist
from complyscore.errors import ConflictError, NotFoundError, ValidationFailure
from complyscore.store import Store

from helpers import build_assessment, small_checklist

PERIODS = ["2019-01", "2019-02", "2019-03", "2019-04", "2019-05", "2019-06"]


@pytest.fixture()
def store(tmp_path, default_checklist):
    s = Store(tmp_path)
    s.register_checklist(default_checklist)
    return s


class TestRegisterChecklist:
    def test_register_twice_is_idempotent(self, tmp_path, default_checklist):
        store = Store(tmp_path)
        store.register_checklist(default_checklist)
        store.register_checklist(default_checklist)
        assert len(store.list_checklists()) == 1

    def test_altered_document_same_version_conflicts(self, store, default_checklist):
        altered = parse_checklist(
            serialize_checklist(default_checklist).replace(
                "GDPR Self-Assessment Checklist", "Tampered title"
            )
        )
        with pytest.raises(ConflictError) as excinfo:
            store.register_checklist(altered)
        assert excinfo.value.code == "version-conflict"

    def test_new_version_coexists(self, store, default_checklist):
        bumped = parse_checklist(
            serialize_checklist(default_checklist).replace('"version": "1.0.0"', '"version": "1.1.0"')
        )
        store.register_checklist(bumped)
        assert store.get_checklist(default_checklist.id, "1.0.0") == default_checklist
        assert store.get_checklist(default_checklist.id, "1.1.0") == bumped

    def test_invalid_checklist_rejected(self, tmp_path):
        store = Store(tmp_path)
        with pytest.raises(ValidationFailure) as excinfo:
            store.register_checklist(small_checklist(sections=()))
        assert excinfo.value.code == "invalid-checklist"

    def test_checklist_file_written_canonically(self, tmp_path, default_checklist):
        store = Store(tmp_path)
        store.register_checklist(default_checklist)
        path = tmp_path / "checklists" / f"{default_checklist.id}@{default_checklist.version}.json"
        assert path.read_text(encoding="utf-8") == serialize_checklist(default_checklist)


class TestSubmit:
    def test_first_submission_gets_revision_1(self, store, default_checklist):
        assert store.submit_assessment(build_assessment(default_checklist)) == 1

    def test_resubmission_increments_and_wins(self, store, default_checklist):
        first = build_assessment(default_checklist)
        second = build_assessment(default_checklist, {"pd-1": "non_compliant"})
        assert store.submit_assessment(first) == 1
        assert store.submit_assessment(second) == 2
        assert store.load_latest("orgA", "2019-01") == second

    def test_unregistered_checklist_rejected(self, tmp_path, default_checklist):
        store = Store(tmp_path)
        with pytest.raises(NotFoundError) as excinfo:
            store.submit_assessment(build_assessment(default_checklist))
        assert excinfo.value.code == "unknown-checklist"

    def test_invalid_assessment_rejected(self, store, default_checklist):
        assessment = build_assessment(default_checklist)
        incomplete = assessment.__class__(
            org_id=assessment.org_id,
            checklist_id=assessment.checklist_id,
            checklist_version=assessment.checklist_version,
            period=assessment.period,
            submitted_at=assessment.submitted_at,
            answers=assessment.answers[1:],
        )
        with pytest.raises(ValidationFailure) as excinfo:
            store.submit_assessment(incomplete)
        assert excinfo.value.code == "invalid-assessment"
        assert any(issue.code == "missing-answer" for issue in excinfo.value.issues)

    def test_read_your_writes(self, store, default_checklist):
        assessment = build_assessment(default_checklist, period="2019-03")
        store.submit_assessment(assessment)
        assert store.load_latest("orgA", "2019-03") == assessment

    def test_not_found(self, store):
        with pytest.raises(NotFoundError) as excinfo:
            store.load_latest("ghost", "2019-01")
        assert excinfo.value.code == "not-found"


class TestPeriods:
    def test_six_monthly_submissions(self, store, default_checklist):
        for period in reversed(PERIODS):
            store.submit_assessment(build_assessment(default_checklist, period=period))
        assert store.list_periods("orgA") == PERIODS

    def test_no_data(self, store):
        assert store.list_periods("ghost") == []

    def test_periods_distinct_across_revisions(self, store, default_checklist):
        store.submit_assessment(build_assessment(default_checklist))
        store.submit_assessment(build_assessment(default_checklist))
        assert store.list_periods("orgA") == ["2019-01"]


class TestReplay:
    def test_replay_reproduces_snapshot(self, tmp_path, default_checklist):
        store = Store(tmp_path)
        store.register_checklist(default_checklist)
        for period in PERIODS:
            store.submit_assessment(build_assessment(default_checklist, period=period))
        store.submit_assessment(build_assessment(default_checklist, {"pd-1": "non_compliant"}))

        replayed = Store(tmp_path)
        assert replayed.list_periods("orgA") == store.list_periods("orgA")
        assert replayed.list_checklists() == store.list_checklists()
        for period in PERIODS:
            assert replayed.load_latest("orgA", period) == store.load_latest("orgA", period)
        assert replayed.latest_revision("orgA", "2019-01") == 2

    def test_truncated_final_line_is_skipped(self, tmp_path, default_checklist):
        store = Store(tmp_path)
        store.register_checklist(default_checklist)
        store.submit_assessment(build_assessment(default_checklist))
        journal = tmp_path / "journal.ndjson"
        with journal.open("a", encoding="utf-8") as handle:
            handle.write('{"kind":"submission","seq":99,"revision":2,"rec')  # torn write

        replayed = Store(tmp_path)
        assert replayed.latest_revision("orgA", "2019-01") == 1

    def test_journal_is_append_only(self, tmp_path, default_checklist):
        store = Store(tmp_path)
        store.register_checklist(default_checklist)
        journal = tmp_path / "journal.ndjson"
        before = journal.read_text(encoding="utf-8")
        store.submit_assessment(build_assessment(default_checklist))
        store.submit_assessment(build_assessment(default_checklist))
        after = journal.read_text(encoding="utf-8")
        assert after.startswith(before)
        assert len(after.splitlines()) == len(before.splitlines()) + 2

    def test_journal_lines_are_json(self, tmp_path, default_checklist):
        store = Store(tmp_path)
        store.register_checklist(default_checklist)
        store.submit_assessment(build_assessment(default_checklist))
        for line in (tmp_path / "journal.ndjson").read_text(encoding="utf-8").splitlines():
            event = json.loads(line)
            assert event["kind"] in ("checklist", "submission")
            assert isinstance(event["seq"], int)


class TestConcurrency:
    def test_parallel_submissions_get_distinct_contiguous_revisions(self, store, default_checklist):
        assessment = build_assessment(default_checklist)
        with ThreadPoolExecutor(max_workers=8) as pool:
            revisions = list(pool.map(lambda _: store.submit_assessment(assessment), range(8)))
        assert sorted(revisions) == list(range(1, 9))
        assert store.latest_revision("orgA", "2019-01") == 8
