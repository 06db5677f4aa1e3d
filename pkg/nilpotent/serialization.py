"""
Conversion between the JSON file formats in ``schemas`` and domain objects.

Loaders raise ``InvalidInput`` with ``file:line:col: message`` for JSON syntax
errors and ``file: loc: message`` for schema errors.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Type, TypeVar

from pydantic import BaseModel, ValidationError

from nilpotent import exact
from nilpotent.algebra import LieAlgebra, Metric, random_metric, validate, vector_label
from nilpotent.catalog import CatalogEntry, VerificationReport
from nilpotent.errors import InvalidInput, NilformsError
from nilpotent.forms import FormSpace, TwoForm
from nilpotent.graphs import DirectedGraph
from nilpotent.symplectic import Verdict
from schemas import (
    AlgebraFile,
    BracketEntry,
    BracketTerm,
    CatalogEntryModel,
    CertificateModel,
    EntryResultModel,
    ExpectedModel,
    FieldCheckModel,
    FormBasisReport,
    FormEntry,
    FormFile,
    GraphFile,
    MetricFile,
    VerdictModel,
    VerificationReportModel,
)

logger = logging.getLogger("nilforms")

M = TypeVar("M", bound=BaseModel)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------
def _format_loc(loc: tuple[Any, ...]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_document(text: str, model: Type[M], source: str = "<input>") -> M:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return validate_document(data, model, source)


def validate_document(data: Any, model: Type[M], source: str = "<input>") -> M:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise InvalidInput(f"{source}: {_format_loc(first['loc'])}: {first['msg']}") from None


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"{path}: cannot read file: {exc.strerror or exc}") from None


# ---------------------------------------------------------------------------
# Algebras and metrics
# ---------------------------------------------------------------------------
def algebra_from_model(doc: AlgebraFile) -> tuple[LieAlgebra, Metric | None]:
    entries = []
    for bracket in doc.brackets:
        terms: dict[int, Any] = {}
        for term in bracket.terms:
            if term.k in terms:
                raise InvalidInput(f"term e{term.k} repeated in [e{bracket.i},e{bracket.j}]")
            terms[term.k] = exact.parse_rational(term.c)
        entries.append((bracket.i, bracket.j, terms))
    algebra = LieAlgebra.from_entries(doc.dim, entries, doc.name)
    validate(algebra)
    metric = None
    if doc.metric is not None:
        metric = metric_from_rows(doc.metric, doc.dim)
    return algebra, metric


def metric_from_rows(rows: list[list[str]], dim: int | None = None) -> Metric:
    if dim is not None and (len(rows) != dim or any(len(row) != dim for row in rows)):
        raise InvalidInput(f"metric must be a {dim}x{dim} matrix")
    return Metric.from_rows([[exact.parse_rational(c) for c in row] for row in rows])


def algebra_to_document(algebra: LieAlgebra, metric: Metric | None = None) -> dict[str, Any]:
    brackets = []
    for (i, j), coeffs in sorted(algebra.brackets.items()):
        terms = [
            BracketTerm(k=k + 1, c=exact.format_rational(c)) for k, c in enumerate(coeffs) if c
        ]
        brackets.append(BracketEntry(i=i + 1, j=j + 1, terms=terms))
    doc = AlgebraFile(name=algebra.name, dim=algebra.dim, brackets=brackets)
    if metric is not None and not exact.equal(metric.gram, exact.identity(metric.dim)):
        doc.metric = [[exact.format_rational(c) for c in row] for row in metric.rows()]
    return doc.model_dump(mode="json", exclude_none=True)


def load_algebra(path: str | Path) -> tuple[LieAlgebra, Metric | None]:
    source = str(path)
    doc = parse_document(_read(path), AlgebraFile, source)
    try:
        return algebra_from_model(doc)
    except NilformsError as exc:
        exc.detail = f"{source}: {exc.detail}"
        exc.args = (exc.detail,)
        raise


def load_metric(source: str, dim: int) -> tuple[Metric, str]:
    """``random:SEED`` or a file holding ``{"metric": [...]}`` or a bare matrix."""
    if source.startswith("random:"):
        seed_text = source.split(":", 1)[1]
        try:
            seed = int(seed_text)
        except ValueError:
            raise InvalidInput(f"bad metric seed {seed_text!r}") from None
        return random_metric(dim, seed), source
    text = _read(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(data, list):
        data = {"metric": data}
    doc = validate_document(data, MetricFile, source)
    return metric_from_rows(doc.metric, dim), "custom"


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------
def form_from_model(doc: FormFile) -> TwoForm:
    return TwoForm.from_entries(doc.dim, [(e.i, e.j, exact.parse_rational(e.c)) for e in doc.entries])


def form_to_model(form: TwoForm) -> FormFile:
    return FormFile(
        dim=form.dim,
        entries=[FormEntry(i=i, j=j, c=exact.format_rational(c)) for i, j, c in form.entries()],
    )


def load_form(path: str | Path) -> TwoForm:
    return form_from_model(parse_document(_read(path), FormFile, str(path)))


def form_space_to_report(space: FormSpace) -> FormBasisReport:
    return FormBasisReport(
        kind=space.kind.value,
        dim=space.dim,
        metric=space.metric_tag,
        forms=[form_to_model(form) for form in space.basis],
        labels=[form.label() for form in space.basis],
    )


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------
def graph_from_model(doc: GraphFile) -> DirectedGraph:
    return DirectedGraph.from_edges(doc.vertices, [tuple(edge) for edge in doc.edges])


def load_graph(path: str | Path) -> DirectedGraph:
    return graph_from_model(parse_document(_read(path), GraphFile, str(path)))


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------
def verdict_to_model(verdict: Verdict) -> VerdictModel:
    certificate = None
    if verdict.certificate is not None:
        vec = verdict.certificate.vector
        certificate = CertificateModel(
            kind=verdict.certificate.kind.value,
            vector=exact.format_vector(vec) if vec is not None else None,
            label=vector_label(vec) if vec is not None else None,
        )
    witness = verdict.witness
    return VerdictModel(
        answer=verdict.answer.value,
        witness=form_to_model(witness) if witness is not None else None,
        witness_label=witness.label() if witness is not None else None,
        certificate=certificate,
        method=list(verdict.method),
    )


def dumps(model: BaseModel | dict[str, Any] | list[Any]) -> str:
    """Deterministic JSON: sorted keys, two-space indent."""
    data = model.model_dump(mode="json") if isinstance(model, BaseModel) else model
    return json.dumps(data, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------
def catalog_entry_to_model(entry: CatalogEntry) -> CatalogEntryModel:
    exp = entry.expected
    return CatalogEntryModel(
        name=entry.name,
        description=entry.description,
        algebra=AlgebraFile.model_validate(algebra_to_document(entry.algebra, entry.metric)),
        expected=ExpectedModel(
            center_dim=exp.center_dim,
            commutator_dim=exp.commutator_dim,
            kerj_dim=exp.kerj_dim,
            singularity=exp.singularity.value,
            h_type=exp.h_type,
            closed_dim=exp.closed_dim,
            typeI_dim=exp.typeI_dim,
            typeII_dim=exp.typeII_dim,
            exact_dim=exp.exact_dim,
            symplectic=exp.symplectic.value,
            witness=form_to_model(exp.witness) if exp.witness is not None else None,
        ),
        aux_forms={key: form_to_model(form) for key, form in entry.aux_forms.items()},
    )


def verification_to_model(report: VerificationReport) -> VerificationReportModel:
    return VerificationReportModel(
        passed=report.passed,
        failures=report.failures,
        entries=[
            EntryResultModel(
                name=result.name,
                passed=result.passed,
                error=result.error,
                checks=[
                    FieldCheckModel(
                        field=check.field,
                        expected=check.expected,
                        actual=check.actual,
                        passed=check.passed,
                    )
                    for check in result.checks
                ],
            )
            for result in report.results
        ],
    )
