"""Score series as an RDF statistical data cube.

The graph has two dimensions (reference period as a year-month, regulatory
section as a code list that also carries the reserved code "overall") and a
single measure, the compliance ratio as a decimal in [0, 1]. Compliant and
applicable counts ride along as integer attributes so consumers can rebuild
exact fractions. Everything is minted as a plain IRI under the caller's base
namespace; the graph is ground (no blank nodes) so serialisation and
re-parsing preserve the statement set literally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import quote

from .checklist import Checklist, is_absolute_iri
from .errors import ValidationFailure
from .scoring import ComplianceReport, Ratio

__all__ = [
    "Iri",
    "Blank",
    "Literal",
    "CubeGraph",
    "CubeViolation",
    "CubeCheckReport",
    "build_cube",
    "serialize_turtle",
    "check_cube",
    "RDF",
    "RDFS",
    "QB",
    "SKOS",
    "XSD",
    "DCT",
    "OVERALL_CODE",
]

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
QB = "http://purl.org/linked-data/cube#"
SKOS = "http://www.w3.org/2004/02/skos/core#"
XSD = "http://www.w3.org/2001/XMLSchema#"
DCT = "http://purl.org/dc/terms/"

OVERALL_CODE = "overall"


@dataclass(frozen=True, order=True)
class Iri:
    value: str


@dataclass(frozen=True, order=True)
class Blank:
    label: str


@dataclass(frozen=True, order=True)
class Literal:
    lexical: str
    datatype: str = XSD + "string"


Term = Iri | Blank | Literal
Triple = tuple


def _term_key(term: Term):
    """Total order across term kinds: IRIs, then blanks, then literals."""
    if isinstance(term, Iri):
        return (0, term.value, "")
    if isinstance(term, Blank):
        return (1, term.label, "")
    return (2, term.lexical, term.datatype)


@dataclass(frozen=True)
class CubeGraph:
    statements: frozenset
    base_iri: str

    def objects(self, subject: Term, predicate: Iri) -> list[Term]:
        return sorted((o for s, p, o in self.statements if s == subject and p == predicate), key=_term_key)

    def subjects_of_type(self, class_iri: Iri) -> list[Term]:
        rdf_type = Iri(RDF + "type")
        return sorted((s for s, p, o in self.statements if p == rdf_type and o == class_iri), key=_term_key)


@dataclass(frozen=True)
class CubeViolation:
    code: str
    node: str
    message: str


@dataclass(frozen=True)
class CubeCheckReport:
    ok: bool
    violations: tuple[CubeViolation, ...]


def _decimal_lexical(ratio: Ratio) -> str:
    """xsd:decimal form with at most 6 fractional digits, half away from zero."""
    scaled = (2 * ratio.numerator * 10**6 + ratio.denominator) // (2 * ratio.denominator)
    digits = f"{scaled:07d}"
    whole, frac = digits[:-6], digits[-6:].rstrip("0")
    return f"{whole}.{frac or '0'}"


def _segment(value: str) -> str:
    return quote(value, safe="")


class _Minter:
    """Deterministic IRI scheme under one base namespace."""

    def __init__(self, base_iri: str):
        self.base = base_iri.rstrip("/")

    def dataset(self, org_id: str) -> Iri:
        return Iri(f"{self.base}/dataset/{_segment(org_id)}")

    def observation(self, org_id: str, period: str, section_code: str) -> Iri:
        return Iri(f"{self.base}/obs/{_segment(org_id)}/{period}/{section_code}")

    def section_code(self, section_code: str) -> Iri:
        return Iri(f"{self.base}/code/section/{section_code}")

    def scheme(self) -> Iri:
        return Iri(f"{self.base}/code/section")

    def definition(self, name: str) -> Iri:
        return Iri(f"{self.base}/def/{name}")


def build_cube(
    org_id: str,
    reports: list[ComplianceReport],
    checklist: Checklist,
    base_iri: str,
) -> CubeGraph:
    """Build the cube for one organisation's reports.

    One observation per (period, section) with a present ratio, plus one
    "overall" observation per period with a present total. The structure
    definition, code list and dataset node are always present, so an empty
    report list still yields a well-formed (if observation-free) cube.
    """
    if not is_absolute_iri(base_iri):
        raise ValidationFailure("bad-iri", f"base IRI {base_iri!r} is not an absolute IRI")
    seen_periods: dict[str, ComplianceReport] = {}
    for report in reports:
        if report.org_id != org_id:
            raise ValidationFailure("mixed-org", f"report for {report.org_id!r} in a cube for {org_id!r}")
        if report.checklist_id != checklist.id:
            raise ValidationFailure(
                "mixed-checklist", f"report against {report.checklist_id!r} in a cube over {checklist.id!r}"
            )
        existing = seen_periods.get(report.period)
        if existing is not None and existing != report:
            raise ValidationFailure("duplicate-period", f"two different reports for period {report.period}")
        seen_periods[report.period] = report

    mint = _Minter(base_iri)
    rdf_type = Iri(RDF + "type")
    label = Iri(RDFS + "label")
    statements: set = set()

    def add(s: Term, p: Iri, o: Term) -> None:
        statements.add((s, p, o))

    dataset = mint.dataset(org_id)
    dsd = mint.definition("structure")
    dim_period = mint.definition("period")
    dim_section = mint.definition("section")
    measure_ratio = mint.definition("ratio")
    attr_compliant = mint.definition("compliant")
    attr_applicable = mint.definition("applicable")
    scheme = mint.scheme()

    add(dataset, rdf_type, Iri(QB + "DataSet"))
    add(dataset, Iri(QB + "structure"), dsd)
    add(dataset, label, Literal(f"Compliance scores for {org_id}"))

    add(dsd, rdf_type, Iri(QB + "DataStructureDefinition"))
    components = {
        "component/period": (Iri(QB + "dimension"), dim_period, 1),
        "component/section": (Iri(QB + "dimension"), dim_section, 2),
        "component/ratio": (Iri(QB + "measure"), measure_ratio, None),
        "component/compliant": (Iri(QB + "attribute"), attr_compliant, None),
        "component/applicable": (Iri(QB + "attribute"), attr_applicable, None),
    }
    for name, (role, prop, order) in components.items():
        component = mint.definition(name)
        add(dsd, Iri(QB + "component"), component)
        add(component, rdf_type, Iri(QB + "ComponentSpecification"))
        add(component, role, prop)
        if order is not None:
            add(component, Iri(QB + "order"), Literal(str(order), XSD + "integer"))

    add(dim_period, rdf_type, Iri(QB + "DimensionProperty"))
    add(dim_period, label, Literal("reference period"))
    add(dim_section, rdf_type, Iri(QB + "DimensionProperty"))
    add(dim_section, label, Literal("regulatory section"))
    add(dim_section, Iri(QB + "codeList"), scheme)
    add(measure_ratio, rdf_type, Iri(QB + "MeasureProperty"))
    add(measure_ratio, label, Literal("compliance ratio"))
    add(attr_compliant, rdf_type, Iri(QB + "AttributeProperty"))
    add(attr_compliant, label, Literal("compliant count"))
    add(attr_applicable, rdf_type, Iri(QB + "AttributeProperty"))
    add(attr_applicable, label, Literal("applicable count"))

    add(scheme, rdf_type, Iri(SKOS + "ConceptScheme"))
    add(scheme, Iri(SKOS + "prefLabel"), Literal("Regulatory sections"))
    for section in checklist.sections:
        code = mint.section_code(section.id)
        add(code, rdf_type, Iri(SKOS + "Concept"))
        add(code, Iri(SKOS + "inScheme"), scheme)
        add(code, Iri(SKOS + "notation"), Literal(section.id))
        add(code, Iri(SKOS + "prefLabel"), Literal(section.title))
        if section.dpv_concept is not None:
            add(code, Iri(DCT + "subject"), Iri(section.dpv_concept))
    overall = mint.section_code(OVERALL_CODE)
    add(overall, rdf_type, Iri(SKOS + "Concept"))
    add(overall, Iri(SKOS + "inScheme"), scheme)
    add(overall, Iri(SKOS + "notation"), Literal(OVERALL_CODE))
    add(overall, Iri(SKOS + "prefLabel"), Literal("Overall"))

    def add_observation(period: str, section_code: str, ratio: Ratio) -> None:
        obs = mint.observation(org_id, period, section_code)
        add(obs, rdf_type, Iri(QB + "Observation"))
        add(obs, Iri(QB + "dataSet"), dataset)
        add(obs, dim_period, Literal(period, XSD + "gYearMonth"))
        add(obs, dim_section, mint.section_code(section_code))
        add(obs, measure_ratio, Literal(_decimal_lexical(ratio), XSD + "decimal"))
        add(obs, attr_compliant, Literal(str(ratio.numerator), XSD + "integer"))
        add(obs, attr_applicable, Literal(str(ratio.denominator), XSD + "integer"))

    for period in sorted(seen_periods):
        report = seen_periods[period]
        for score in report.sections:
            if score.ratio is not None:
                add_observation(period, score.section_id, score.ratio)
        if report.total is not None:
            add_observation(period, OVERALL_CODE, report.total)

    return CubeGraph(statements=frozenset(statements), base_iri=mint.base)


# Fixed predicate order for serialisation; anything else sorts
# lexicographically after these.
_PREDICATE_ORDER = [
    RDF + "type",
    RDFS + "label",
    QB + "structure",
    QB + "component",
    QB + "dimension",
    QB + "measure",
    QB + "attribute",
    QB + "codeList",
    QB + "order",
    QB + "dataSet",
    SKOS + "inScheme",
    SKOS + "notation",
    SKOS + "prefLabel",
    DCT + "subject",
]
_PREDICATE_RANK = {iri: i for i, iri in enumerate(_PREDICATE_ORDER)}

_PREFIXES = [
    ("dct", DCT),
    ("qb", QB),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("skos", SKOS),
    ("xsd", XSD),
]

_SAFE_LOCAL = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")

_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def _escape_literal(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def _compact(iri: str) -> str:
    if iri == RDF + "type":
        return "a"
    for prefix, namespace in _PREFIXES:
        if iri.startswith(namespace):
            local = iri[len(namespace):]
            if _SAFE_LOCAL.match(local):
                return f"{prefix}:{local}"
    return f"<{iri}>"


def _term_text(term: Term) -> str:
    if isinstance(term, Iri):
        return _compact(term.value)
    if isinstance(term, Blank):
        return f"_:{term.label}"
    lexical = f'"{_escape_literal(term.lexical)}"'
    if term.datatype == XSD + "string":
        return lexical
    return f"{lexical}^^{_compact(term.datatype)}"


def _predicate_key(predicate: Iri):
    rank = _PREDICATE_RANK.get(predicate.value)
    if rank is not None:
        return (0, rank, "")
    return (1, 0, predicate.value)


def serialize_turtle(graph: CubeGraph) -> str:
    """Deterministic Turtle: same graph in, identical bytes out.

    Subjects sort lexicographically (IRIs before blanks), predicates follow
    the fixed vocabulary order, objects sort within each predicate. Vocabulary
    terms compact to prefixed names; minted IRIs stay in full angle-bracket
    form since their local parts contain path separators.
    """
    lines = []
    for prefix, namespace in sorted(_PREFIXES + [("ns", graph.base_iri + "/")]):
        lines.append(f"@prefix {prefix}: <{namespace}> .")
    lines.append("")

    by_subject: dict = {}
    for s, p, o in graph.statements:
        by_subject.setdefault(s, {}).setdefault(p, []).append(o)

    for subject in sorted(by_subject, key=_term_key):
        predicates = by_subject[subject]
        parts = []
        for predicate in sorted(predicates, key=_predicate_key):
            objects = sorted(predicates[predicate], key=_term_key)
            rendered = ", ".join(_term_text(o) for o in objects)
            parts.append(f"{_term_text(predicate)} {rendered}")
        subject_text = _term_text(subject)
        lines.append(f"{subject_text} {parts[0]}" + (" ;" if len(parts) > 1 else " ."))
        for i, part in enumerate(parts[1:], start=1):
            terminator = " ;" if i < len(parts) - 1 else " ."
            lines.append(f"    {part}{terminator}")
        lines.append("")
    return "\n".join(lines[:-1] if lines[-1] == "" else lines) + "\n"


def check_cube(graph: CubeGraph) -> CubeCheckReport:
    """Well-formedness subset: dataset link, dimension coverage, measure
    presence and key uniqueness for every observation."""
    violations: list[CubeViolation] = []
    rdf_type = Iri(RDF + "type")
    qb_dataset = Iri(QB + "dataSet")

    observations = graph.subjects_of_type(Iri(QB + "Observation"))
    seen_keys: dict = {}
    for obs in observations:
        node = obs.value if isinstance(obs, Iri) else f"_:{obs.label}"
        datasets = graph.objects(obs, qb_dataset)
        if len(datasets) != 1:
            code = "missing-dataset" if not datasets else "multiple-dataset"
            violations.append(CubeViolation(code, node, f"observation links to {len(datasets)} datasets"))
            continue
        dataset = datasets[0]

        dimensions: list[Iri] = []
        measures: list[Iri] = []
        for structure in graph.objects(dataset, Iri(QB + "structure")):
            for component in graph.objects(structure, Iri(QB + "component")):
                for dim in graph.objects(component, Iri(QB + "dimension")):
                    if isinstance(dim, Iri):
                        dimensions.append(dim)
                for measure in graph.objects(component, Iri(QB + "measure")):
                    if isinstance(measure, Iri):
                        measures.append(measure)

        key = [dataset]
        complete = True
        for dim in sorted(dimensions):
            values = graph.objects(obs, dim)
            if len(values) != 1:
                code = "missing-dimension" if not values else "multiple-dimension"
                violations.append(
                    CubeViolation(code, node, f"observation has {len(values)} values for dimension <{dim.value}>")
                )
                complete = False
            else:
                key.append(values[0])
        for measure in sorted(measures):
            values = graph.objects(obs, measure)
            if not values:
                violations.append(CubeViolation("missing-measure", node, f"observation lacks measure <{measure.value}>"))

        if complete and dimensions:
            key_tuple = tuple(key)
            if key_tuple in seen_keys:
                violations.append(
                    CubeViolation(
                        "duplicate-key",
                        node,
                        f"same dimension values as <{seen_keys[key_tuple]}>",
                    )
                )
            else:
                seen_keys[key_tuple] = node

    return CubeCheckReport(ok=not violations, violations=tuple(violations))
