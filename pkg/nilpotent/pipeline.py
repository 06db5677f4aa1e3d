"""
Analysis pipeline: runs registered stages over one algebra and builds the report.

Each stage reads what earlier stages stored on the ``AnalysisContext`` and adds
its own result. A failing stage records its error on the context; stages that
need its output are skipped through their ``can_analyze`` check.
"""

from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass, field
from typing import Any, Protocol, runtime_checkable

from nilpotent import exact
from nilpotent.algebra import (
    Decomposition,
    LieAlgebra,
    Metric,
    SingularityClass,
    classify_singularity,
    decompose,
    is_h_type,
    validate,
)
from nilpotent.errors import NilformsError
from nilpotent.forms import (
    TypeIISystem,
    betti1,
    closed_space,
    exact_space,
    type_I_closed_space,
    type_II_closed_space,
    type_II_system,
)
from nilpotent.graphs import DirectedGraph, graph_algebra, pt_criterion
from nilpotent.serialization import verdict_to_model
from nilpotent.symplectic import MainTheoremReport, Verdict, symplectic_exists, type_II_iff_symplectic_report
from schemas import (
    AnalysisReport,
    DecompositionSection,
    FormsSection,
    GraphReport,
    MainTheoremSection,
    SingularitySection,
    ValidationSection,
)

logger = logging.getLogger("nilforms")


# ---------------------------------------------------------------------------
# State accumulated through the stages
# ---------------------------------------------------------------------------
@dataclass
class FormDims:
    closed: int
    exact: int
    type_one: int
    type_two: int
    betti1: int
    betti2: int
    system: TypeIISystem


@dataclass
class AnalysisContext:
    algebra: LieAlgebra
    metric: Metric | None = None
    metric_tag: str | None = None
    options: dict[str, Any] = field(default_factory=dict)

    valid: bool = False
    validation_detail: str | None = None
    decomposition: Decomposition | None = None
    singularity: SingularityClass | None = None
    h_type: bool | None = None
    forms: FormDims | None = None
    verdict: Verdict | None = None
    main_theorem: MainTheoremReport | None = None

    # Non-fatal errors, one line per failed stage
    errors: list[str] = field(default_factory=list)


@runtime_checkable
class Analyzer(Protocol):
    name: str

    def can_analyze(self, ctx: AnalysisContext) -> bool: ...

    def analyze(self, ctx: AnalysisContext) -> AnalysisContext: ...


# ---------------------------------------------------------------------------
# Orchestrator
# ---------------------------------------------------------------------------
class AnalysisPipeline:
    """Runs registered analyzers in order; batches run thread-pooled."""

    def __init__(self, max_workers: int = 4) -> None:
        self._analyzers: list[Analyzer] = []
        self._max_workers = max_workers

    def register(self, analyzer: Analyzer) -> "AnalysisPipeline":
        self._analyzers.append(analyzer)
        return self

    @property
    def stage_names(self) -> list[str]:
        return [a.name for a in self._analyzers]

    def run(self, ctx: AnalysisContext) -> AnalysisContext:
        for analyzer in self._analyzers:
            try:
                if analyzer.can_analyze(ctx):
                    ctx = analyzer.analyze(ctx)
            except Exception as exc:
                ctx.errors.append(f"{analyzer.name}: {getattr(exc, 'detail', exc)}")
                logger.debug("Stage %s failed for %s: %s", analyzer.name, ctx.algebra.name, exc)
        logger.info(
            "Analyzed %s (dim %d): %d stage errors",
            ctx.algebra.name or "algebra", ctx.algebra.dim, len(ctx.errors),
        )
        return ctx

    def run_all(self, contexts: list[AnalysisContext]) -> list[AnalysisContext]:
        if not contexts:
            return contexts
        with concurrent.futures.ThreadPoolExecutor(max_workers=self._max_workers) as pool:
            futures = {pool.submit(self.run, ctx): idx for idx, ctx in enumerate(contexts)}
            results: list[AnalysisContext | None] = [None] * len(contexts)
            for future in concurrent.futures.as_completed(futures):
                idx = futures[future]
                try:
                    results[idx] = future.result()
                except Exception as exc:
                    contexts[idx].errors.append(f"pipeline: {exc}")
                    results[idx] = contexts[idx]
        return [r for r in results if r is not None]


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------
class ValidationAnalyzer:
    name = "validation"

    def can_analyze(self, ctx: AnalysisContext) -> bool:
        return True

    def analyze(self, ctx: AnalysisContext) -> AnalysisContext:
        try:
            validate(ctx.algebra)
        except NilformsError as exc:
            ctx.validation_detail = exc.detail
            raise
        ctx.valid = True
        return ctx


class DecompositionAnalyzer:
    name = "decomposition"

    def can_analyze(self, ctx: AnalysisContext) -> bool:
        return ctx.valid

    def analyze(self, ctx: AnalysisContext) -> AnalysisContext:
        ctx.decomposition = decompose(ctx.algebra, ctx.metric, ctx.metric_tag)
        return ctx


class SingularityAnalyzer:
    name = "singularity"

    def can_analyze(self, ctx: AnalysisContext) -> bool:
        # abelian algebras have no v part
        return ctx.decomposition is not None and ctx.decomposition.dim_v > 0

    def analyze(self, ctx: AnalysisContext) -> AnalysisContext:
        ctx.singularity = classify_singularity(ctx.decomposition)
        ctx.h_type = is_h_type(ctx.decomposition)
        return ctx


class FormSpaceAnalyzer:
    name = "forms"

    def can_analyze(self, ctx: AnalysisContext) -> bool:
        return ctx.decomposition is not None

    def analyze(self, ctx: AnalysisContext) -> AnalysisContext:
        dec = ctx.decomposition
        closed, exact_dim = closed_space(ctx.algebra).dim, exact_space(dec).dim
        ctx.forms = FormDims(
            closed=closed,
            exact=exact_dim,
            type_one=type_I_closed_space(dec).dim,
            type_two=type_II_closed_space(dec).dim,
            betti1=betti1(ctx.algebra),
            betti2=closed - exact_dim,
            system=type_II_system(dec),
        )
        return ctx


class SymplecticAnalyzer:
    name = "symplectic"

    def can_analyze(self, ctx: AnalysisContext) -> bool:
        return ctx.valid

    def analyze(self, ctx: AnalysisContext) -> AnalysisContext:
        ctx.verdict = symplectic_exists(ctx.algebra, **ctx.options)
        return ctx


class MainTheoremAnalyzer:
    name = "main_theorem"

    def can_analyze(self, ctx: AnalysisContext) -> bool:
        return ctx.verdict is not None and ctx.algebra.dim % 2 == 0

    def analyze(self, ctx: AnalysisContext) -> AnalysisContext:
        ctx.main_theorem = type_II_iff_symplectic_report(ctx.algebra, verdict=ctx.verdict)
        return ctx


def build_default_pipeline(max_workers: int = 4) -> AnalysisPipeline:
    return (
        AnalysisPipeline(max_workers=max_workers)
        .register(ValidationAnalyzer())
        .register(DecompositionAnalyzer())
        .register(SingularityAnalyzer())
        .register(FormSpaceAnalyzer())
        .register(SymplecticAnalyzer())
        .register(MainTheoremAnalyzer())
    )


def analyze(
    algebra: LieAlgebra,
    metric: Metric | None = None,
    metric_tag: str | None = None,
    **options: Any,
) -> AnalysisReport:
    ctx = build_default_pipeline().run(
        AnalysisContext(algebra=algebra, metric=metric, metric_tag=metric_tag, options=options)
    )
    return to_report(ctx)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------
def _vectors(vectors: list[Any]) -> list[list[str]]:
    return [exact.format_vector(v) for v in vectors]


def to_report(ctx: AnalysisContext) -> AnalysisReport:
    report = AnalysisReport(
        name=ctx.algebra.name,
        dim=ctx.algebra.dim,
        validation=ValidationSection(valid=ctx.valid, detail=ctx.validation_detail),
        errors=list(ctx.errors),
    )
    dec = ctx.decomposition
    if dec is not None:
        report.decomposition = DecompositionSection(
            metric=dec.tag,
            center_dim=dec.dim_z,
            v_dim=dec.dim_v,
            commutator_dim=len(dec.commutator_basis),
            kerj_dim=len(dec.kerj_basis),
            center_basis=_vectors(dec.center_basis),
            v_basis=_vectors(dec.v_basis),
            commutator_basis=_vectors(dec.commutator_basis),
            kerj_basis=_vectors(dec.kerj_basis),
        )
    if ctx.singularity is not None:
        report.singularity = SingularitySection(
            kind=ctx.singularity.kind.value,
            certainty=ctx.singularity.certainty.value,
            method=ctx.singularity.method,
            h_type=bool(ctx.h_type),
        )
    if ctx.forms is not None:
        dims = ctx.forms
        report.forms = FormsSection(
            closed_dim=dims.closed,
            exact_dim=dims.exact,
            typeI_dim=dims.type_one,
            typeII_dim=dims.type_two,
            betti1=dims.betti1,
            betti2=dims.betti2,
            typeII_unknowns=len(dims.system.unknowns),
            typeII_rank=dims.system.rank,
        )
    if ctx.verdict is not None:
        report.symplectic = verdict_to_model(ctx.verdict)
    if ctx.main_theorem is not None:
        mt = ctx.main_theorem
        report.main_theorem = MainTheoremSection(
            typeII_dim=mt.typeII_dim,
            equivalence_holds=mt.equivalence_holds,
            exception=mt.exception,
            consistent_with_main_theorem=mt.consistent_with_main_theorem,
            note=mt.note,
        )
    return report


def graph_report(graph: DirectedGraph, name: str | None = None, **options: Any) -> GraphReport:
    """Criterion, type II system and full analysis of ``L(G)``."""
    algebra = graph_algebra(graph, name=name)
    system = type_II_system(decompose(algebra))
    return GraphReport(
        vertices=graph.vertices,
        edges=[list(edge) for edge in graph.edges],
        pt_criterion=pt_criterion(graph),
        typeII_unknowns=len(system.unknowns),
        typeII_equations=len(system.equations),
        typeII_rank=system.rank,
        analysis=analyze(algebra, **options),
    )
