"""GDPR self-assessment scoring engine.

Turns versioned regulator checklists and monthly answer sets into
three-layer compliance reports, score trends, cross-organisation benchmarks
and an RDF data cube export, behind a CLI and a versioned HTTP API.
"""

from .assessment import (
    Answer,
    AnswerStatus,
    Assessment,
    parse_assessment,
    serialize_assessment,
    validate_assessment,
)
from .checklist import (
    Checklist,
    Question,
    Section,
    ValidationReport,
    load_default_checklist,
    parse_checklist,
    question_lookup,
    serialize_checklist,
    validate_checklist,
)
from .cube import CubeCheckReport, CubeGraph, build_cube, check_cube, serialize_turtle
from .errors import (
    ComplianceError,
    ConflictError,
    NotFoundError,
    ParseFailure,
    ValidationFailure,
    ValidationIssue,
)
from .scoring import (
    ComplianceReport,
    Finding,
    Ratio,
    SectionScore,
    extract_findings,
    render_percent,
    report_json_bytes,
    score_assessment,
)
from .service import ComplianceService, serve
from .store import Store, SubmissionRecord
from .trends import (
    BenchmarkRow,
    TrendPoint,
    TrendSeries,
    benchmark,
    build_trend,
    format_delta,
    org_reports,
    trend_delta,
)

__version__ = "0.1.0"
