"""
Catalog of low-dimensional 2-step nilpotent Lie algebras with expected results.

Every entry ships its algebra in the stored basis e1..en, the canonical metric
(identity in that basis) and the values every analysis must reproduce.
``verify_all`` is the regression run over the whole table.
"""

from __future__ import annotations

import concurrent.futures
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable

from sympy.polys.matrices import DomainMatrix

from config import get_settings
from nilpotent import exact
from nilpotent.algebra import (
    LieAlgebra,
    Metric,
    Singularity,
    classify_singularity,
    decompose,
    is_h_type,
    validate,
)
from nilpotent.errors import InvalidInput, UnknownName
from nilpotent.forms import (
    TwoForm,
    closed_space,
    exact_space,
    type_I_closed_space,
    type_II_closed_space,
)
from nilpotent.symplectic import Answer, is_symplectic, symplectic_exists

logger = logging.getLogger("nilforms")

NS = Singularity.NON_SINGULAR
ANS = Singularity.ALMOST_NON_SINGULAR
SING = Singularity.SINGULAR


@dataclass(frozen=True, eq=False)
class Expected:
    center_dim: int
    commutator_dim: int
    kerj_dim: int
    singularity: Singularity
    h_type: bool
    closed_dim: int
    typeI_dim: int
    typeII_dim: int
    exact_dim: int
    symplectic: Answer
    witness: TwoForm | None = None


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    metric: Metric
    expected: Expected
    description: str = ""
    complex_structure: DomainMatrix | None = None
    aux_forms: dict[str, TwoForm] = field(default_factory=dict)


def _form(n: int, *entries: tuple[int, int, Any]) -> TwoForm:
    return TwoForm.from_entries(n, entries)


def _entry(
    name: str,
    algebra: LieAlgebra,
    expected: Expected,
    description: str,
    **extra: Any,
) -> CatalogEntry:
    return CatalogEntry(
        name=name,
        algebra=algebra,
        metric=Metric.identity(algebra.dim),
        expected=expected,
        description=description,
        **extra,
    )


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------
def _h1() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(1, 2): {3: 1}}, "h1")


def _h2() -> LieAlgebra:
    return LieAlgebra.from_brackets(5, {(1, 2): {5: 1}, (3, 4): {5: 1}}, "h2")


def _g5() -> LieAlgebra:
    return LieAlgebra.from_brackets(5, {(1, 3): {4: 1}, (2, 3): {5: 1}}, "g5")


def heisenberg(k: int) -> LieAlgebra:
    """Real Heisenberg algebra of dimension 2k+1: ``[X_i, Y_i] = Z``."""
    if k < 1:
        raise InvalidInput("Heisenberg index must be at least 1")
    z = 2 * k + 1
    return LieAlgebra.from_brackets(2 * k + 1, {(i, k + i): {z: 1} for i in range(1, k + 1)}, f"hn({k})")


def complex_heisenberg(k: int) -> LieAlgebra:
    """Complex Heisenberg algebra of real dimension 4k+2.

    Basis X_1, JX_1, .., X_k, JX_k, Y_1, JY_1, .., Y_k, JY_k, Z, JZ.
    """
    if k < 1:
        raise InvalidInput("complex Heisenberg index must be at least 1")
    z1, z2 = 4 * k + 1, 4 * k + 2
    table: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(1, k + 1):
        x, jx = 2 * i - 1, 2 * i
        y, jy = 2 * k + 2 * i - 1, 2 * k + 2 * i
        table[(x, y)] = {z1: 1}
        table[(jx, jy)] = {z1: -1}
        table[(x, jy)] = {z2: 1}
        table[(jx, y)] = {z2: 1}
    return LieAlgebra.from_brackets(4 * k + 2, table, f"hcn({k})")


def complex_structure(k: int) -> DomainMatrix:
    """``J`` on the complex Heisenberg basis: each pair (w, Jw) rotates."""
    n = 4 * k + 2
    rows = [[0] * n for _ in range(n)]
    for p in range(0, n, 2):
        rows[p + 1][p] = 1
        rows[p][p + 1] = -1
    return exact.matrix(rows)


def _quaternionic() -> LieAlgebra:
    # v = span{1, i, j, k} = e1..e4, z = Im H = e5..e7
    return LieAlgebra.from_brackets(
        7,
        {
            (1, 2): {5: 1},
            (3, 4): {5: 1},
            (1, 3): {6: 1},
            (2, 4): {6: -1},
            (1, 4): {7: 1},
            (2, 3): {7: 1},
        },
        "hH",
    )


def _singular7() -> LieAlgebra:
    # V1..V5 = e1..e5, Z1 = e6, Z2 = e7
    return LieAlgebra.from_brackets(7, {(1, 2): {6: 1}, (3, 4): {7: 1}, (4, 5): {7: 1}}, "singular7")


def _heisenberg_expected(k: int) -> Expected:
    type_two = 2 if k == 1 else 0
    type_one = k * (2 * k - 1)
    return Expected(1, 1, 0, NS, True, type_one + type_two, type_one, type_two, 1, Answer.NO)


def _complex_heisenberg_expected(k: int) -> Expected:
    type_two = 4 if k == 1 else 0
    type_one = 2 * k * (4 * k - 1)
    return Expected(
        2, 2, 0, NS, True, type_one + type_two, type_one, type_two, 2,
        Answer.YES if k == 1 else Answer.NO,
    )


# ---------------------------------------------------------------------------
# Table
# ---------------------------------------------------------------------------
def _static_entries() -> list[CatalogEntry]:
    h1, h2, g5 = _h1(), _h2(), _g5()
    hc = complex_heisenberg(1)
    hc_listed = LieAlgebra.from_brackets(
        6, {(1, 2): {5: 1}, (3, 4): {5: -1}, (1, 4): {6: 1}, (2, 3): {6: 1}}, "hC-e"
    )
    return [
        _entry("h1", h1, Expected(1, 1, 0, NS, True, 3, 1, 2, 1, Answer.NO),
               "Heisenberg algebra of dimension 3"),
        _entry("h1+R", h1.trivial_extension(1, "h1+R"),
               Expected(2, 1, 1, ANS, False, 5, 1, 4, 1, Answer.YES),
               "trivial extension of h1"),
        _entry("h1+R2", h1.trivial_extension(2, "h1+R2"),
               Expected(3, 1, 2, ANS, False, 8, 2, 6, 1, Answer.NO),
               "h1 plus a 2-dimensional abelian factor"),
        _entry("h2", h2, Expected(1, 1, 0, NS, True, 6, 6, 0, 1, Answer.NO),
               "Heisenberg algebra of dimension 5"),
        _entry("g5", g5, Expected(2, 2, 0, SING, False, 8, 3, 5, 2, Answer.NO),
               "star algebra [e1,e3]=e4, [e2,e3]=e5"),
        _entry("h1+R3", h1.trivial_extension(3, "h1+R3"),
               Expected(4, 1, 3, ANS, False, 12, 4, 8, 1, Answer.YES,
                        _form(6, (1, 3, 1), (2, 4, 1), (5, 6, 1))),
               "h1 plus a 3-dimensional abelian factor"),
        _entry("h2+R", h2.trivial_extension(1, "h2+R"),
               Expected(2, 1, 1, ANS, False, 10, 6, 4, 1, Answer.NO),
               "trivial extension of h2; type II forms but no symplectic structure"),
        _entry("g5+R", g5.trivial_extension(1, "g5+R"),
               Expected(3, 2, 1, SING, False, 11, 3, 8, 2, Answer.YES,
                        _form(6, (1, 4, 1), (2, 5, 1), (3, 6, 1))),
               "trivial extension of g5"),
        _entry("h1+h1", LieAlgebra.from_brackets(6, {(1, 2): {5: 1}, (3, 4): {6: 1}}, "h1+h1"),
               Expected(2, 2, 0, ANS, False, 10, 6, 4, 2, Answer.YES,
                        _form(6, (1, 5, 1), (2, 4, 1), (3, 6, 1))),
               "direct sum of two Heisenberg algebras"),
        _entry("f6", LieAlgebra.from_brackets(6, {(1, 2): {4: 1}, (1, 3): {5: 1}, (2, 3): {6: 1}}, "f6"),
               Expected(3, 3, 0, SING, False, 11, 3, 8, 3, Answer.YES,
                        _form(6, (1, 6, 1), (2, 5, 2), (3, 4, 1))),
               "free 2-step nilpotent algebra on three generators"),
        _entry("k6", LieAlgebra.from_brackets(6, {(1, 4): {5: 1}, (2, 3): {5: -1}, (3, 4): {6: 1}}, "k6"),
               Expected(2, 2, 0, ANS, False, 10, 6, 4, 2, Answer.YES,
                        _form(6, (1, 6, 1), (2, 4, 1), (3, 5, 1))),
               "[e1,e4]=e5, [e2,e3]=-e5, [e3,e4]=e6"),
        CatalogEntry(
            name="hC",
            algebra=LieAlgebra(hc.dim, hc.brackets, "hC"),
            metric=Metric.identity(6),
            expected=Expected(2, 2, 0, NS, True, 10, 6, 4, 2, Answer.YES,
                              _form(6, (1, 6, 1), (2, 5, 1), (3, 4, 1))),
            description="complex Heisenberg algebra in the basis X1, X2, Y1, Y2, Z1, Z2",
            complex_structure=complex_structure(1),
        ),
        _entry("hC-e", hc_listed,
               Expected(2, 2, 0, ANS, False, 10, 6, 4, 2, Answer.YES),
               "complex Heisenberg brackets as listed in the e1..e6 presentation",
               aux_forms={"listed_witness": _form(6, (1, 6, 1), (2, 5, 1), (3, 4, 1))}),
        _entry("hH", _quaternionic(),
               Expected(3, 3, 0, NS, True, 14, 6, 8, 3, Answer.NO),
               "quaternionic Heisenberg algebra of dimension 7"),
        _entry("singular7", _singular7(),
               Expected(3, 2, 1, ANS, False, 14, 6, 8, 2, Answer.NO),
               "[V1,V2]=Z1, [V3,V4]=Z2=[V4,V5]; V3+V5 is central",
               aux_forms={
                   "printed_force": _form(7, (3, 7, 1), (5, 7, -1), (4, 6, 1)),
                   "printed_force_z2_part": _form(7, (3, 7, 1), (5, 7, -1)),
               }),
    ]


_GENERATED = re.compile(r"^(hn|hcn)\((\d+)\)$")
_DEFAULT_GENERATED = ("hn(2)", "hn(3)", "hn(4)", "hcn(2)")


def _generated_entry(kind: str, k: int) -> CatalogEntry:
    if kind == "hn":
        return _entry(f"hn({k})", heisenberg(k), _heisenberg_expected(k),
                      f"real Heisenberg algebra of dimension {2 * k + 1}")
    return _entry(f"hcn({k})", complex_heisenberg(k), _complex_heisenberg_expected(k),
                  f"complex Heisenberg algebra of real dimension {4 * k + 2}",
                  complex_structure=complex_structure(k))


def _self_check(entry: CatalogEntry) -> CatalogEntry:
    if entry.expected.h_type and not is_h_type(decompose(entry.algebra, entry.metric)):
        raise InvalidInput(f"catalog entry {entry.name} fails its H-type self-check")
    return entry


@lru_cache(maxsize=None)
def _table() -> dict[str, CatalogEntry]:
    return {entry.name: _self_check(entry) for entry in _static_entries()}


def names() -> list[str]:
    return list(_table()) + list(_DEFAULT_GENERATED)


@lru_cache(maxsize=64)
def get(name: str) -> CatalogEntry:
    table = _table()
    if name in table:
        return table[name]
    match = _GENERATED.match(name)
    if match:
        k = int(match.group(2))
        if k < 1:
            raise UnknownName(f"no catalog entry {name!r} (index must be at least 1)")
        return _self_check(_generated_entry(match.group(1), k))
    raise UnknownName(f"no catalog entry {name!r}; known: {', '.join(names())}")


def export(name: str) -> dict[str, Any]:
    """Entry in the algebra file format."""
    from nilpotent.serialization import algebra_to_document

    entry = get(name)
    return algebra_to_document(entry.algebra, entry.metric)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FieldCheck:
    field: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class EntryResult:
    name: str
    checks: list[FieldCheck] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)


@dataclass
class VerificationReport:
    results: list[EntryResult]

    @property
    def failures(self) -> int:
        return sum(
            (1 if r.error else 0) + sum(1 for c in r.checks if not c.passed) for r in self.results
        )

    @property
    def passed(self) -> bool:
        return self.failures == 0


def verify_entry(entry: CatalogEntry) -> EntryResult:
    result = EntryResult(entry.name)
    checks = result.checks
    exp = entry.expected
    try:
        validate(entry.algebra)
        dec = decompose(entry.algebra, entry.metric)
        closed = closed_space(entry.algebra)
        type_one = type_I_closed_space(dec)
        type_two = type_II_closed_space(dec)
        verdict = symplectic_exists(entry.algebra)
        checks += [
            FieldCheck("center_dim", exp.center_dim, dec.dim_z),
            FieldCheck("commutator_dim", exp.commutator_dim, len(dec.commutator_basis)),
            FieldCheck("kerj_dim", exp.kerj_dim, len(dec.kerj_basis)),
            FieldCheck("singularity", exp.singularity.value, classify_singularity(dec).kind.value),
            FieldCheck("h_type", exp.h_type, is_h_type(dec)),
            FieldCheck("closed_dim", exp.closed_dim, closed.dim),
            FieldCheck("typeI_dim", exp.typeI_dim, type_one.dim),
            FieldCheck("typeII_dim", exp.typeII_dim, type_two.dim),
            FieldCheck("exact_dim", exp.exact_dim, exact_space(dec).dim),
            FieldCheck("closed_split", closed.dim, type_one.dim + type_two.dim),
            FieldCheck("symplectic", exp.symplectic.value, verdict.answer.value),
            FieldCheck("verdict_check", True, verdict.check(entry.algebra)),
        ]
        if exp.witness is not None:
            checks.append(FieldCheck("witness", True, is_symplectic(entry.algebra, exp.witness)))
    except Exception as exc:
        result.error = f"{type(exc).__name__}: {exc}"
        logger.debug("Verification of %s failed: %s", entry.name, exc)
    return result


def verify_all(
    entries: list[str] | None = None,
    max_workers: int | None = None,
    on_result: Callable[[EntryResult], None] | None = None,
) -> VerificationReport:
    selected = [get(name) for name in (entries or names())]
    workers = max_workers or get_settings().max_workers
    results: list[EntryResult | None] = [None] * len(selected)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(verify_entry, entry): idx for idx, entry in enumerate(selected)}
        for future in concurrent.futures.as_completed(futures):
            idx = futures[future]
            results[idx] = future.result()
            if on_result:
                on_result(results[idx])
    report = VerificationReport([r for r in results if r is not None])
    logger.info("Catalog verification: %d entries, %d failures", len(report.results), report.failures)
    return report
