"""
nilforms command line.

    python cli.py analyze algebra.json [--metric random:3] [--json]
    python cli.py closed algebra.json --type II
    python cli.py symplectic algebra.json --strict
    python cli.py graph --complete 4
    python cli.py catalog list | get NAME | verify

Exit codes: 0 success, 1 invalid input, 2 Unknown verdict under --strict.
"""

from __future__ import annotations

import functools
import logging
import sys
from typing import Any, Callable

import click

from config import get_settings
from nilpotent import catalog, pipeline
from nilpotent.algebra import LieAlgebra, Metric, decompose
from nilpotent.errors import NilformsError
from nilpotent.forms import closed_space, exact_space, type_I_closed_space, type_II_closed_space
from nilpotent.graphs import complete_graph
from nilpotent.serialization import (
    catalog_entry_to_model,
    dumps,
    form_space_to_report,
    load_algebra,
    load_graph,
    load_metric,
    verdict_to_model,
    verification_to_model,
)
from nilpotent.symplectic import Answer, symplectic_exists
from schemas import AnalysisReport, GraphReport, VerdictModel

logger = logging.getLogger("nilforms")

EXIT_INVALID = 1
EXIT_UNKNOWN = 2


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INVALID)


def _guarded(func: Callable[..., Any]) -> Callable[..., Any]:
    """Turn domain errors into exit code 1 with a one-line message."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except NilformsError as exc:
            _fail(exc.detail)

    return wrapper


def _load(path: str, metric_spec: str | None) -> tuple[LieAlgebra, Metric | None, str | None]:
    algebra, metric = load_algebra(path)
    tag = None
    if metric_spec:
        metric, tag = load_metric(metric_spec, algebra.dim)
    return algebra, metric, tag


def _options(seed: int | None) -> dict[str, Any]:
    return {"seed": seed} if seed is not None else {}


# ---------------------------------------------------------------------------
# Human-readable rendering
# ---------------------------------------------------------------------------
def _verdict_line(verdict: VerdictModel) -> str:
    line = f"symplectic: {verdict.answer}"
    if verdict.certificate is not None:
        kind = "".join(f"_{c.lower()}" if c.isupper() else c for c in verdict.certificate.kind).lstrip("_")
        line += f", certificate: {kind}"
        if verdict.certificate.label:
            line += f" {verdict.certificate.label}"
    if verdict.witness_label:
        line += f", witness: {verdict.witness_label}"
    return line


def _render_report(report: AnalysisReport) -> list[str]:
    lines = [f"algebra: {report.name or '(unnamed)'} (dim {report.dim})"]
    if report.validation.valid:
        lines.append("validation: 2-step nilpotent")
    else:
        lines.append(f"validation: invalid ({report.validation.detail})")
    dec = report.decomposition
    if dec is not None:
        lines.append(
            f"decomposition: metric {dec.metric}; center_dim {dec.center_dim}; "
            f"commutator_dim {dec.commutator_dim}; kerj_dim {dec.kerj_dim}; v_dim {dec.v_dim}"
        )
    sing = report.singularity
    if sing is not None:
        lines.append(
            f"singularity: {sing.kind} ({sing.certainty}, {sing.method}); h_type: {str(sing.h_type).lower()}"
        )
    forms = report.forms
    if forms is not None:
        lines.append(
            f"forms: closed_dim {forms.closed_dim}; exact_dim {forms.exact_dim}; "
            f"typeI_dim {forms.typeI_dim}; typeII_dim {forms.typeII_dim}; "
            f"betti1 {forms.betti1}; betti2 {forms.betti2}"
        )
    if report.symplectic is not None:
        lines.append(_verdict_line(report.symplectic))
    if report.main_theorem is not None:
        lines.append(f"type II vs symplectic: {report.main_theorem.note}")
    for error in report.errors:
        lines.append(f"error: {error}")
    return lines


def _render_graph(report: GraphReport) -> list[str]:
    analysis = report.analysis
    typeII = analysis.forms.typeII_dim if analysis.forms is not None else "?"
    answer = analysis.symplectic.answer if analysis.symplectic is not None else "?"
    return [
        f"pt_criterion: {str(report.pt_criterion).lower()}; typeII_dim: {typeII}; symplectic: {answer}",
        f"type II system: {report.typeII_unknowns} unknowns, {report.typeII_equations} equations, "
        f"rank {report.typeII_rank}",
    ] + _render_report(analysis)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------
@click.group()
@click.option("--log-level", default=None, help="Override LOG_LEVEL")
def cli(log_level: str | None) -> None:
    """Closed 2-forms and symplectic structures on 2-step nilpotent Lie algebras."""
    level = (log_level or get_settings().log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), stream=sys.stderr)


json_option = click.option("--json", "as_json", is_flag=True, help="Emit JSON (sorted keys)")
metric_option = click.option("--metric", "metric_spec", default=None, help="Metric file or random:SEED")
seed_option = click.option("--seed", type=int, default=None, help="Sampling seed (default NILFORMS_SEED)")


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@metric_option
@seed_option
@json_option
@_guarded
def analyze(file: str, metric_spec: str | None, seed: int | None, as_json: bool) -> None:
    """Run every analysis on an algebra file."""
    algebra, metric, tag = _load(file, metric_spec)
    report = pipeline.analyze(algebra, metric, tag, **_options(seed))
    if as_json:
        click.echo(dumps(report))
    else:
        click.echo("\n".join(_render_report(report)))


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option(
    "--type", "kind", type=click.Choice(["all", "I", "II", "exact"]), default="all",
    help="Which space to list",
)
@metric_option
@json_option
@_guarded
def closed(file: str, kind: str, metric_spec: str | None, as_json: bool) -> None:
    """List a basis of closed (or exact) 2-forms."""
    algebra, metric, tag = _load(file, metric_spec)
    if kind == "all":
        space = closed_space(algebra)
    else:
        dec = decompose(algebra, metric, tag)
        space = {"I": type_I_closed_space, "II": type_II_closed_space, "exact": exact_space}[kind](dec)
    report = form_space_to_report(space)
    if as_json:
        click.echo(dumps(report))
        return
    click.echo(f"{report.kind}: dim {report.dim}")
    for label in report.labels:
        click.echo(f"  {label}")


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--strict", is_flag=True, help="Exit 2 when the verdict is unknown")
@seed_option
@json_option
@_guarded
def symplectic(file: str, strict: bool, seed: int | None, as_json: bool) -> None:
    """Decide whether the algebra carries a symplectic structure."""
    algebra, _metric = load_algebra(file)
    verdict = symplectic_exists(algebra, **_options(seed))
    model = verdict_to_model(verdict)
    if as_json:
        click.echo(dumps(model))
    else:
        click.echo(_verdict_line(model))
        for step in model.method:
            click.echo(f"  - {step}")
    if strict and verdict.answer is Answer.UNKNOWN:
        sys.exit(EXIT_UNKNOWN)


@cli.command()
@click.argument("file", required=False, type=click.Path(dir_okay=False))
@click.option("--complete", "complete", type=int, default=None, help="Use the complete graph K_n")
@seed_option
@json_option
@_guarded
def graph(file: str | None, complete: int | None, seed: int | None, as_json: bool) -> None:
    """Analyze the algebra L(G) of a graph."""
    if (file is None) == (complete is None):
        _fail("give either a graph file or --complete N")
    if complete is not None:
        report = pipeline.graph_report(complete_graph(complete), f"L(K{complete})", **_options(seed))
    else:
        report = pipeline.graph_report(load_graph(file), **_options(seed))
    if as_json:
        click.echo(dumps(report))
    else:
        click.echo("\n".join(_render_graph(report)))


@cli.group("catalog")
def catalog_group() -> None:
    """Reference algebras with expected results."""


@catalog_group.command("list")
@json_option
def catalog_list(as_json: bool) -> None:
    names = catalog.names()
    click.echo(dumps(names) if as_json else "\n".join(names))


@catalog_group.command("get")
@click.argument("name")
@click.option("--export", "export_only", is_flag=True, help="Print only the algebra file")
@_guarded
def catalog_get(name: str, export_only: bool) -> None:
    """Print an entry (JSON) with its expected results."""
    if export_only:
        click.echo(dumps(catalog.export(name)))
    else:
        click.echo(dumps(catalog_entry_to_model(catalog.get(name))))


@catalog_group.command("verify")
@click.option("--entry", "entries", multiple=True, help="Restrict to these entries")
@json_option
@_guarded
def catalog_verify(entries: tuple[str, ...], as_json: bool) -> None:
    """Check every catalog entry against its expected values."""
    report = catalog.verify_all(list(entries) or None)
    if as_json:
        click.echo(dumps(verification_to_model(report)))
    else:
        for result in report.results:
            status = "ok" if result.passed else "FAIL"
            click.echo(f"{status:4} {result.name}")
            if result.error:
                click.echo(f"     error: {result.error}")
            for check in result.checks:
                if not check.passed:
                    click.echo(f"     {check.field}: expected {check.expected}, got {check.actual}")
        click.echo(f"{len(report.results)} entries, {report.failures} failures")
    if not report.passed:
        sys.exit(EXIT_INVALID)


if __name__ == "__main__":
    cli()
