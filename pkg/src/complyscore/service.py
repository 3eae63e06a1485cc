"""Versioned HTTP API over a store.

The app is a plain WSGI callable so responses are exactly the canonical
bytes produced by the owning modules; nothing re-serialises them. All routes
live under /v1. Errors are a single JSON object with a stable code, matching
the validation codes used everywhere else.

A static bearer token can be required by passing ``token`` (the ``serve``
CLI reads it from the COMPLIANCE_TOKEN environment variable).
"""

from __future__ import annotations

from socketserver import ThreadingMixIn
from urllib.parse import parse_qs, unquote
from wsgiref.simple_server import WSGIServer, make_server

from .assessment import is_valid_period, parse_assessment, serialize_assessment
from .checklist import parse_checklist, serialize_checklist
from .cube import build_cube, serialize_turtle
from .errors import ComplianceError, ConflictError, NotFoundError, ValidationFailure
from .jsonio import canonical_json_bytes
from .scoring import report_json_bytes, score_assessment
from .store import Store
from .trends import benchmark, benchmark_json_bytes, build_trend, org_reports, trend_json_bytes

__all__ = ["ComplianceService", "DEFAULT_BASE_IRI", "serve"]

DEFAULT_BASE_IRI = "https://data.example.org/compliance"

_STATUS_LINES = {
    200: "200 OK",
    201: "201 Created",
    204: "204 No Content",
    400: "400 Bad Request",
    401: "401 Unauthorized",
    404: "404 Not Found",
    405: "405 Method Not Allowed",
    409: "409 Conflict",
    500: "500 Internal Server Error",
}

# The dashboard is served from its own origin and talks to this API with a
# configured base URL, so browsers need CORS consent on every response.
_CORS_HEADERS = [
    ("Access-Control-Allow-Origin", "*"),
    ("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS"),
    ("Access-Control-Allow-Headers", "Authorization, Content-Type"),
]


class _HttpError(Exception):
    def __init__(self, status: int, code: str, message: str, issues=()):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.issues = tuple(issues)


def _error_body(status: int, code: str, message: str, issues=()) -> bytes:
    body: dict = {"status": status, "code": code, "message": message}
    if issues:
        body["details"] = [issue.to_dict() for issue in issues]
    return canonical_json_bytes(body)


class ComplianceService:
    """WSGI application exposing checklists, submissions, reports, trends,
    benchmarks and the cube export."""

    def __init__(self, store: Store, base_iri: str = DEFAULT_BASE_IRI, token: str | None = None):
        self._store = store
        self._base_iri = base_iri
        self._token = token

    def __call__(self, environ, start_response):
        method = environ["REQUEST_METHOD"]
        path = environ.get("PATH_INFO", "/")
        query = parse_qs(environ.get("QUERY_STRING", ""))
        if method == "OPTIONS":
            # CORS preflight; never authenticated, never routed
            start_response(_STATUS_LINES[204], list(_CORS_HEADERS))
            return [b""]
        try:
            self._check_auth(environ)
            status, content_type, body = self._dispatch(method, path, query, environ)
        except _HttpError as exc:
            status, content_type, body = exc.status, "application/json", _error_body(
                exc.status, exc.code, exc.message, exc.issues
            )
        except NotFoundError as exc:
            status, content_type, body = 404, "application/json", _error_body(404, exc.code, exc.message, exc.issues)
        except ConflictError as exc:
            status, content_type, body = 409, "application/json", _error_body(409, exc.code, exc.message, exc.issues)
        except ComplianceError as exc:
            status, content_type, body = 400, "application/json", _error_body(400, exc.code, exc.message, exc.issues)

        headers = [("Content-Type", content_type), ("Content-Length", str(len(body)))] + _CORS_HEADERS
        start_response(_STATUS_LINES[status], headers)
        return [body]

    # -- request plumbing ---------------------------------------------------

    def _check_auth(self, environ) -> None:
        if self._token is None:
            return
        supplied = environ.get("HTTP_AUTHORIZATION", "")
        if supplied != f"Bearer {self._token}":
            raise _HttpError(401, "unauthorized", "missing or invalid bearer token")

    def _read_body(self, environ) -> bytes:
        try:
            length = int(environ.get("CONTENT_LENGTH") or 0)
        except ValueError:
            length = 0
        if length <= 0:
            return b""
        return environ["wsgi.input"].read(length)

    def _dispatch(self, method: str, path: str, query: dict, environ):
        segments = [unquote(s) for s in path.strip("/").split("/")] if path.strip("/") else []

        if len(segments) >= 1 and segments[0] != "v1":
            raise _HttpError(404, "not-found", f"unknown resource {path}")

        match segments:
            case ["v1", "checklists"]:
                self._require(method, "GET")
                return self._list_checklists()
            case ["v1", "checklists", checklist_id, version]:
                self._require(method, "GET", "PUT")
                if method == "GET":
                    return self._get_checklist(checklist_id, version)
                return self._put_checklist(checklist_id, version, self._read_body(environ))
            case ["v1", "orgs", org_id, "assessments"]:
                self._require(method, "POST")
                return self._post_assessment(org_id, self._read_body(environ))
            case ["v1", "orgs", org_id, "assessments", period]:
                self._require(method, "GET")
                return self._get_assessment(org_id, period)
            case ["v1", "orgs", org_id, "report", period]:
                self._require(method, "GET")
                return self._get_report(org_id, period)
            case ["v1", "orgs", org_id, "trend"]:
                self._require(method, "GET")
                return self._get_trend(org_id)
            case ["v1", "benchmark"]:
                self._require(method, "GET")
                return self._get_benchmark(query)
            case ["v1", "orgs", org_id, "cube.ttl"]:
                self._require(method, "GET")
                return self._get_cube(org_id, query)
        raise _HttpError(404, "not-found", f"unknown resource {path}")

    def _require(self, method: str, *allowed: str) -> None:
        if method not in allowed:
            raise _HttpError(405, "method-not-allowed", f"method {method} is not allowed here")

    # -- handlers -------------------------------------------------------------

    def _list_checklists(self):
        entries = [
            {"id": c.id, "version": c.version, "title": c.title} for c in self._store.list_checklists()
        ]
        return 200, "application/json", canonical_json_bytes({"checklists": entries})

    def _get_checklist(self, checklist_id: str, version: str):
        checklist = self._store.get_checklist(checklist_id, version)
        return 200, "application/json", serialize_checklist(checklist).encode("utf-8")

    def _put_checklist(self, checklist_id: str, version: str, body: bytes):
        checklist = parse_checklist(body)
        if checklist.id != checklist_id or checklist.version != version:
            raise _HttpError(
                400,
                "checklist-mismatch",
                f"document is {checklist.id}@{checklist.version} but the path says {checklist_id}@{version}",
            )
        created = (checklist.id, checklist.version) not in {
            (c.id, c.version) for c in self._store.list_checklists()
        }
        self._store.register_checklist(checklist)
        status = 201 if created else 200
        return status, "application/json", canonical_json_bytes({"id": checklist.id, "version": checklist.version})

    def _post_assessment(self, org_id: str, body: bytes):
        assessment = parse_assessment(body)
        if assessment.org_id != org_id:
            raise _HttpError(
                400, "org-mismatch", f"document is for {assessment.org_id!r} but the path says {org_id!r}"
            )
        revision = self._store.submit_assessment(assessment)
        return 201, "application/json", canonical_json_bytes({"revision": revision})

    def _get_assessment(self, org_id: str, period: str):
        self._check_period(period)
        assessment = self._store.load_latest(org_id, period)
        return 200, "application/json", serialize_assessment(assessment).encode("utf-8")

    def _get_report(self, org_id: str, period: str):
        self._check_period(period)
        assessment = self._store.load_latest(org_id, period)
        checklist = self._store.get_checklist(assessment.checklist_id, assessment.checklist_version)
        report = score_assessment(assessment, checklist)
        return 200, "application/json", report_json_bytes(report)

    def _get_trend(self, org_id: str):
        reports = org_reports(self._store, org_id)
        series = build_trend(reports, org_id=org_id)
        return 200, "application/json", trend_json_bytes(series)

    def _get_benchmark(self, query: dict):
        raw = query.get("orgs", [])
        org_ids = [org for chunk in raw for org in chunk.split(",") if org]
        if not org_ids:
            raise _HttpError(400, "missing-orgs", "query parameter 'orgs' must list at least one organisation")
        rows = benchmark(org_ids, self._store)
        return 200, "application/json", benchmark_json_bytes(rows)

    def _get_cube(self, org_id: str, query: dict):
        periods = self._store.list_periods(org_id)
        if not periods:
            raise NotFoundError("not-found", f"no submissions for {org_id!r}")
        reports = org_reports(self._store, org_id)
        latest = self._store.load_latest(org_id, periods[-1])
        checklist = self._store.get_checklist(latest.checklist_id, latest.checklist_version)
        base_iri = query.get("base", [self._base_iri])[0]
        graph = build_cube(org_id, reports, checklist, base_iri)
        return 200, "text/turtle", serialize_turtle(graph).encode("utf-8")

    def _check_period(self, period: str) -> None:
        if not is_valid_period(period):
            raise _HttpError(400, "bad-period", f"{period!r} is not a valid year-month")


class _ThreadingWSGIServer(ThreadingMixIn, WSGIServer):
    daemon_threads = True


def serve(store: Store, listen: str, base_iri: str = DEFAULT_BASE_IRI, token: str | None = None) -> None:
    """Run the service until interrupted. ``listen`` is "host:port"."""
    host, _, port_text = listen.rpartition(":")
    app = ComplianceService(store, base_iri=base_iri, token=token)
    with make_server(host or "127.0.0.1", int(port_text), app, server_class=_ThreadingWSGIServer) as httpd:
        httpd.serve_forever()
