"""
Existence of left-invariant symplectic structures.

``symplectic_exists`` runs a cascade of sound tests on the closed space
``{Σ t_b Ω_b}``: dimension parity, the non-singular obstruction, a common
radical, seeded random Pfaffian evaluation, and finally the generic Pfaffian
expanded over perfect matchings. Yes answers always carry a witness form,
No answers a certificate that ``Verdict.check`` re-validates.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Sequence

from sympy import QQ
from sympy.polys.rings import ring

from config import get_settings
from nilpotent import exact
from nilpotent.algebra import (
    Decomposition,
    LieAlgebra,
    classify_singularity,
    commutator,
    decompose,
    validate,
)
from nilpotent.errors import OddDimension
from nilpotent.exact import Vector
from nilpotent.forms import (
    FormSpace,
    TwoForm,
    closed_space,
    is_closed,
    type_I_closed_space,
    type_II_closed_space,
)

logger = logging.getLogger("nilforms")


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class CertificateKind(str, Enum):
    ODD_DIMENSION = "OddDimension"
    COMMON_RADICAL = "CommonRadical"
    ZERO_PFAFFIAN = "ZeroPfaffian"
    NON_SINGULAR_OBSTRUCTION = "NonSingularObstruction"


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    vector: Vector | None = None


@dataclass(frozen=True, eq=False)
class Verdict:
    answer: Answer
    witness: TwoForm | None = None
    certificate: Certificate | None = None
    method: list[str] = field(default_factory=list)

    def check(self, algebra: LieAlgebra) -> bool:
        """Re-validate the verdict from the definition of its witness or certificate."""
        if self.answer is Answer.YES:
            return (
                self.witness is not None
                and is_closed(algebra, self.witness)
                and self.witness.is_nondegenerate()
            )
        if self.answer is Answer.UNKNOWN:
            return self.witness is None and self.certificate is None
        cert = self.certificate
        if cert is None:
            return False
        if cert.kind is CertificateKind.ODD_DIMENSION:
            return algebra.dim % 2 == 1
        if cert.kind is CertificateKind.COMMON_RADICAL:
            vec = cert.vector
            if vec is None or exact.is_zero_vector(vec):
                return False
            return all(
                exact.is_zero_vector(exact.apply(form.omega, vec))
                for form in closed_space(algebra).basis
            )
        if cert.kind is CertificateKind.NON_SINGULAR_OBSTRUCTION:
            return nonsingular_obstruction(decompose(algebra))
        return generic_pfaffian(closed_space(algebra)).is_zero


def is_symplectic(algebra: LieAlgebra, form: TwoForm) -> bool:
    return form.dim == algebra.dim and is_closed(algebra, form) and form.is_nondegenerate()


# ---------------------------------------------------------------------------
# Pfaffians
# ---------------------------------------------------------------------------
def pfaffian(form: TwoForm) -> Any:
    """Exact Pfaffian by skew-symmetric elimination; ``pf(e^12 + e^34) = 1``."""
    n = form.dim
    if n % 2:
        raise OddDimension(f"Pfaffian needs even dimension, got {n}")
    a = [list(row) for row in form.rows()]
    value = QQ.one
    for k in range(0, n - 1, 2):
        pivot = next((i for i in range(k + 1, n) if a[k][i]), None)
        if pivot is None:
            return QQ.zero
        if pivot != k + 1:
            a[k + 1], a[pivot] = a[pivot], a[k + 1]
            for row in a:
                row[k + 1], row[pivot] = row[pivot], row[k + 1]
            value = -value
        head = a[k][k + 1]
        value *= head
        if k + 2 < n:
            tau = {i: a[k][i] / head for i in range(k + 2, n) if a[k][i]}
            col = {i: a[i][k + 1] for i in range(k + 2, n) if a[i][k + 1]}
            for i in range(k + 2, n):
                for j in range(k + 2, n):
                    delta = tau.get(i, 0) * col.get(j, 0) - col.get(i, 0) * tau.get(j, 0)
                    if delta:
                        a[i][j] += delta
    return value


def pfaffian_by_matchings(rows: Sequence[Sequence[Any]], zero: Any = QQ.zero, one: Any = QQ.one) -> Any:
    """Perfect-matching expansion ``pf(S) = Σ_pos (-1)^pos a_{s0,s_pos} pf(S∖{s0,s_pos})``.

    Works over any ring whose elements support ``+``, ``*`` and negation.
    """
    n = len(rows)
    if n % 2:
        raise OddDimension(f"Pfaffian needs even dimension, got {n}")
    memo: dict[tuple[int, ...], Any] = {(): one}

    def expand(remaining: tuple[int, ...]) -> Any:
        if remaining in memo:
            return memo[remaining]
        first, rest = remaining[0], remaining[1:]
        total = zero
        for pos, partner in enumerate(rest):
            entry = rows[first][partner]
            if not entry:
                continue
            sub = expand(rest[:pos] + rest[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[remaining] = total
        return total

    return expand(tuple(range(n)))


@dataclass(frozen=True, eq=False)
class PfaffianPoly:
    """Generic Pfaffian of ``Σ t_b Ω_b`` as a sparse polynomial in ``t1..tk``."""

    poly: Any
    nparams: int
    degree: int

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def terms(self) -> dict[tuple[int, ...], Any]:
        """Exponent vector -> coefficient."""
        return {monom[: self.nparams]: coeff for monom, coeff in self.poly.terms()}

    def evaluate(self, params: Sequence[Any]) -> Any:
        values = [exact.qq(p) for p in params]
        if self.poly.ring.ngens > self.nparams:
            values += [QQ.zero] * (self.poly.ring.ngens - self.nparams)
        return self.poly(*values)

    def is_homogeneous(self) -> bool:
        return all(sum(monom) == self.degree for monom in self.terms())


def generic_pfaffian(space: FormSpace) -> PfaffianPoly:
    n = space.ambient_dim
    if n % 2:
        raise OddDimension(f"Pfaffian needs even dimension, got {n}")
    k = space.dim
    # a polynomial ring needs at least one generator
    names = ",".join(f"t{b + 1}" for b in range(max(k, 1)))
    poly_ring, *gens = ring(names, QQ)
    rows = [[poly_ring.zero] * n for _ in range(n)]
    for gen, form in zip(gens, space.basis):
        for a, row in enumerate(form.rows()):
            for b, c in enumerate(row):
                if c:
                    rows[a][b] += gen * c
    poly = pfaffian_by_matchings(rows, poly_ring.zero, poly_ring.one)
    return PfaffianPoly(poly=poly, nparams=k, degree=n // 2)


def _witness_params(pf: PfaffianPoly) -> list[int]:
    """Integer parameters with nonzero Pfaffian, from the leading monomial's support."""
    monom = max(pf.terms())
    support = [b for b, e in enumerate(monom) if e]
    point = [0] * pf.nparams
    for b in support:
        point[b] = 1
    if pf.evaluate(point):
        return point
    for b in support:
        for value in range(2, pf.degree + 2):
            trial = list(point)
            trial[b] = value
            if pf.evaluate(trial):
                return trial
    # A box with side exponent + 1 on the support always holds a nonzero value.
    for values in itertools.product(*(range(monom[b] + 1) for b in support)):
        trial = [0] * pf.nparams
        for b, value in zip(support, values):
            trial[b] = value
        if pf.evaluate(trial):
            return trial
    raise AssertionError("nonzero Pfaffian polynomial without a nonzero grid point")  # pragma: no cover


def common_radical(space: FormSpace) -> list[Vector]:
    n = space.ambient_dim
    rows: list[list[Any]] = []
    for form in space.basis:
        rows.extend(form.rows())
    return exact.nullspace(exact.matrix(rows, n))


# ---------------------------------------------------------------------------
# Decision cascade
# ---------------------------------------------------------------------------
def nonsingular_obstruction(dec: Decomposition) -> bool:
    """Proven non-singular and ``dim n > 3 dim z``."""
    if dec.dim_v == 0 or dec.n <= 3 * dec.dim_z:
        return False
    return classify_singularity(dec).proven_non_singular


def _yes(witness: TwoForm, method: list[str]) -> Verdict:
    return Verdict(Answer.YES, witness=witness, method=method)


def _no(kind: CertificateKind, method: list[str], vector: Vector | None = None) -> Verdict:
    return Verdict(Answer.NO, certificate=Certificate(kind, vector), method=method)


def symplectic_exists(
    algebra: LieAlgebra,
    *,
    seed: int | None = None,
    samples: int | None = None,
    max_params: int | None = None,
    max_dim: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> Verdict:
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    samples = settings.samples if samples is None else samples
    max_params = settings.symbolic_max_params if max_params is None else max_params
    max_dim = settings.symbolic_max_dim if max_dim is None else max_dim

    method: list[str] = []

    def step(text: str) -> None:
        method.append(text)
        logger.debug("symplectic %s: %s", algebra.name or "algebra", text)
        if progress:
            progress(text)

    validate(algebra)
    n = algebra.dim
    if n % 2:
        step(f"dimension {n} is odd")
        return _no(CertificateKind.ODD_DIMENSION, method)

    dec = decompose(algebra)
    if nonsingular_obstruction(dec):
        step(f"non-singular with dim n = {n} > 3 dim z = {3 * dec.dim_z}")
        return _no(CertificateKind.NON_SINGULAR_OBSTRUCTION, method)
    step("no non-singular obstruction")

    space = closed_space(algebra)
    radical = common_radical(space)
    if radical:
        step(f"closed forms share the radical vector {list(exact.format_vector(radical[0]))}")
        return _no(CertificateKind.COMMON_RADICAL, method, radical[0])
    step(f"closed space has dimension {space.dim} and no common radical")

    rng = random.Random(seed)
    bound = 2 * (n // 2)
    for index in range(samples):
        params = [rng.randint(-bound, bound) for _ in range(space.dim)]
        candidate = space.combine(params)
        if pfaffian(candidate):
            step(f"sample {index + 1} of {samples} (seed {seed}) has nonzero Pfaffian")
            return _yes(candidate, method)
    step(f"{samples} samples in [-{bound}, {bound}] all have zero Pfaffian")

    if space.dim <= max_params and n <= max_dim:
        pf = generic_pfaffian(space)
        if pf.is_zero:
            step("generic Pfaffian vanishes identically")
            return _no(CertificateKind.ZERO_PFAFFIAN, method)
        params = _witness_params(pf)
        step(f"generic Pfaffian has {len(pf.terms())} terms; witness parameters {params}")
        return _yes(space.combine(params), method)

    step(f"symbolic expansion skipped (k = {space.dim}, n = {n})")
    return Verdict(Answer.UNKNOWN, method=method)


@dataclass(frozen=True, eq=False)
class MainTheoremReport:
    typeII_dim: int
    symplectic: Verdict
    equivalence_holds: bool
    exception: bool
    consistent_with_main_theorem: bool
    note: str


def type_II_iff_symplectic_report(
    algebra: LieAlgebra, verdict: Verdict | None = None, **options: Any
) -> MainTheoremReport:
    """Compare ``typeII_dim > 0`` with symplectic existence (a precomputed verdict is reused)."""
    if algebra.dim % 2:
        raise OddDimension(f"report needs even dimension, got {algebra.dim}")
    validate(algebra)
    dec = decompose(algebra)
    typeII_dim = type_II_closed_space(dec).dim
    if verdict is None:
        verdict = symplectic_exists(algebra, **options)
    has_type_II = typeII_dim > 0
    holds = has_type_II == (verdict.answer is Answer.YES)
    # h2 ⊕ R is the only 6-dimensional 2-step algebra with dim z = 2 and dim C(n) = 1
    exception = (
        algebra.dim == 6
        and dec.dim_z == 2
        and len(commutator(algebra)) == 1
        and has_type_II
        and verdict.answer is Answer.NO
    )
    if holds:
        note = "type II forms exist exactly when a symplectic structure does"
    elif exception:
        note = "known exception: trivial extension of the 5-dimensional Heisenberg algebra"
    elif verdict.answer is Answer.UNKNOWN:
        note = "symplectic verdict unknown"
    elif algebra.dim > 6:
        note = f"counterexample to the equivalence in dimension {algebra.dim}"
    else:
        note = "equivalence fails in the low-dimensional range"
    return MainTheoremReport(
        typeII_dim=typeII_dim,
        symplectic=verdict,
        equivalence_holds=holds,
        exception=exception,
        consistent_with_main_theorem=holds or exception,
        note=note,
    )


def type_I_degenerate(dec: Decomposition) -> bool:
    """Every closed type-I form is degenerate (generic Pfaffian of the space vanishes)."""
    if dec.n % 2:
        return True
    space = type_I_closed_space(dec)
    if common_radical(space):
        return True
    return generic_pfaffian(space).is_zero
