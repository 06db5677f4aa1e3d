"""
Left-invariant 2-forms on 2-step nilpotent Lie algebras.

Forms live in the structural basis as skew matrices ``Ω_ab = ω(e_a, e_b)``.
The type I / type II split is computed on demand in the adapted basis
``P = [v_basis | center_basis]`` of a ``Decomposition``: ``Ω' = PᵀΩP``.
The Lorentz force of ``ω`` is the skew endomorphism with
``ω(X, Y) = ⟨F X, Y⟩``, i.e. ``Ω = FᵀG``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from nilpotent import exact
from nilpotent.algebra import (
    Decomposition,
    LieAlgebra,
    Metric,
    decompose,
    is_orthogonal_automorphism,
    j_map,
)
from nilpotent.errors import BadIndex, InvalidInput, NotAutomorphism
from nilpotent.exact import Vector

logger = logging.getLogger("nilforms")


def pairs(n: int) -> list[tuple[int, int]]:
    """0-based ``(a, b)`` with ``a < b`` in lexicographic order."""
    return list(itertools.combinations(range(n), 2))


def triples(n: int) -> list[tuple[int, int, int]]:
    return list(itertools.combinations(range(n), 3))


# ---------------------------------------------------------------------------
# TwoForm
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class TwoForm:
    omega: DomainMatrix

    def __post_init__(self) -> None:
        m, n = self.omega.shape
        if m != n:
            raise InvalidInput("form matrix must be square")
        if not exact.equal(self.omega.transpose(), -self.omega):
            raise InvalidInput("form matrix must be skew-symmetric")

    # -- construction ---------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "TwoForm":
        return cls(exact.zeros(n, n))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "TwoForm":
        return cls(exact.matrix(rows, len(rows)))

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int, Any]]) -> "TwoForm":
        """1-based ``(i, j, c)`` with ``i < j``: ``Ω_ij = c``, ``Ω_ji = -c``."""
        rows = [[QQ.zero] * n for _ in range(n)]
        for i, j, c in entries:
            for idx in (i, j):
                if not 1 <= idx <= n:
                    raise BadIndex(f"form index {idx} out of range 1..{n}")
            if i >= j:
                raise InvalidInput(f"form entry e^{i}{j} must be given with i < j")
            value = exact.qq(c)
            rows[i - 1][j - 1] += value
            rows[j - 1][i - 1] -= value
        return cls(exact.matrix(rows, n))

    @classmethod
    def elementary(cls, n: int, i: int, j: int) -> "TwoForm":
        """``e^{ij}`` (1-based)."""
        return cls.from_entries(n, [(i, j, 1)])

    @classmethod
    def from_vector(cls, n: int, vector: Sequence[Any]) -> "TwoForm":
        return cls.from_entries(
            n, ((a + 1, b + 1, c) for (a, b), c in zip(pairs(n), vector) if c)
        )

    @classmethod
    def from_lorentz_force(cls, metric: Metric, force: DomainMatrix) -> "TwoForm":
        return cls(force.transpose() * metric.gram)

    # -- views ----------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.omega.shape[0]

    def rows(self) -> list[list[Any]]:
        return self.omega.to_list()

    def vector(self) -> Vector:
        rows = self.rows()
        return tuple(rows[a][b] for a, b in pairs(self.dim))

    def entries(self) -> list[tuple[int, int, Any]]:
        rows = self.rows()
        return [(a + 1, b + 1, rows[a][b]) for a, b in pairs(self.dim) if rows[a][b]]

    def label(self) -> str:
        """``e^16 + 2*e^25 + e^34`` style rendering."""
        wide = self.dim >= 10
        parts: list[str] = []
        for i, j, c in self.entries():
            name = f"e^{{{i},{j}}}" if wide else f"e^{i}{j}"
            text = exact.format_rational(abs(c))
            term = name if text == "1" else f"{text}*{name}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts) if parts else "0"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoForm):
            return NotImplemented
        return exact.equal(self.omega, other.omega)

    def __hash__(self) -> int:
        return hash(self.vector())

    def __add__(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(self.omega + other.omega)

    def __sub__(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(self.omega - other.omega)

    def scale(self, c: Any) -> "TwoForm":
        return TwoForm(self.omega * exact.qq(c))

    def evaluate(self, x: Sequence[Any], y: Sequence[Any]) -> Any:
        return exact.bilinear(self.omega, x, y)

    def determinant(self) -> Any:
        return exact.det(self.omega)

    def is_nondegenerate(self) -> bool:
        return self.determinant() != 0

    def radical(self) -> list[Vector]:
        return exact.nullspace(self.omega)

    def lorentz_force(self, metric: Metric) -> DomainMatrix:
        """``F = -G⁻¹Ω``."""
        return -(exact.inverse(metric.gram) * self.omega)

    def in_adapted(self, dec: Decomposition) -> DomainMatrix:
        return dec.adapted.transpose() * self.omega * dec.adapted

    @classmethod
    def from_adapted(cls, dec: Decomposition, adapted: DomainMatrix) -> "TwoForm":
        inv = dec.adapted_inverse
        return cls(inv.transpose() * adapted * inv)


# ---------------------------------------------------------------------------
# FormSpace
# ---------------------------------------------------------------------------
class FormKind(str, Enum):
    CLOSED = "Closed"
    EXACT = "Exact"
    CLOSED_TYPE_I = "ClosedTypeI"
    CLOSED_TYPE_II = "ClosedTypeII"


@dataclass(frozen=True, eq=False)
class FormSpace:
    ambient_dim: int
    basis: list[TwoForm]
    kind: FormKind
    metric_tag: str | None = None
    _vectors: list[Vector] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        vectors = [form.vector() for form in self.basis]
        if exact.span_rank(vectors, len(pairs(self.ambient_dim))) != len(vectors):
            raise InvalidInput(f"{self.kind.value} basis is not linearly independent")
        object.__setattr__(self, "_vectors", vectors)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, params: Sequence[Any]) -> TwoForm:
        """``Σ t_b Ω_b`` for the given parameters."""
        if len(params) != self.dim:
            raise InvalidInput(f"expected {self.dim} parameters, got {len(params)}")
        vec = exact.combine([exact.qq(t) for t in params], self._vectors, len(pairs(self.ambient_dim)))
        return TwoForm.from_vector(self.ambient_dim, vec)

    def contains(self, form: TwoForm) -> bool:
        if form.dim != self.ambient_dim:
            return False
        return exact.in_span(form.vector(), self._vectors)

    def vectors(self) -> list[Vector]:
        return list(self._vectors)


# ---------------------------------------------------------------------------
# Closedness
# ---------------------------------------------------------------------------
def _cyclic_sums(algebra: LieAlgebra, rows: list[list[Any]]) -> list[Any]:
    """Cyclic sums ``ω([e_i,e_j],e_k) + ω([e_j,e_k],e_i) + ω([e_k,e_i],e_j)``."""
    n = algebra.dim

    def w(vec: Vector, k: int) -> Any:
        return sum((c * rows[m][k] for m, c in enumerate(vec) if c), QQ.zero)

    out = []
    for i, j, k in triples(n):
        out.append(
            w(algebra.basis_bracket(i, j), k)
            + w(algebra.basis_bracket(j, k), i)
            + w(algebra.basis_bracket(k, i), j)
        )
    return out


def cyclic_defect(algebra: LieAlgebra, form: TwoForm) -> dict[tuple[int, int, int], Any]:
    """Nonzero cyclic sums keyed by 1-based basis triples."""
    if form.dim != algebra.dim:
        raise InvalidInput(f"form has dimension {form.dim}, algebra has {algebra.dim}")
    sums = _cyclic_sums(algebra, form.rows())
    return {
        (i + 1, j + 1, k + 1): value
        for (i, j, k), value in zip(triples(algebra.dim), sums)
        if value
    }


def is_closed(algebra: LieAlgebra, form: TwoForm) -> bool:
    return not cyclic_defect(algebra, form)


def closedness_operator(algebra: LieAlgebra) -> DomainMatrix:
    """Rows: basis triples; columns: elementary forms ``e^{ab}``."""
    n = algebra.dim
    columns = [
        _cyclic_sums(algebra, TwoForm.elementary(n, a + 1, b + 1).rows()) for a, b in pairs(n)
    ]
    return exact.columns(columns, len(triples(n)))


def closed_space(algebra: LieAlgebra) -> FormSpace:
    n = algebra.dim
    if n < 3:
        solutions = [exact.unit(len(pairs(n)), i) for i in range(len(pairs(n)))]
    else:
        solutions = exact.nullspace(closedness_operator(algebra))
    basis = [TwoForm.from_vector(n, s) for s in solutions]
    return FormSpace(n, basis, FormKind.CLOSED)


# ---------------------------------------------------------------------------
# Type I / type II
# ---------------------------------------------------------------------------
def split_form(dec: Decomposition, form: TwoForm) -> tuple[TwoForm, TwoForm]:
    """Block split in the adapted basis: (v×v ⊕ z×z, v×z)."""
    adapted = form.in_adapted(dec).to_list()
    k = dec.dim_v
    n = dec.n
    first = [[QQ.zero] * n for _ in range(n)]
    second = [[QQ.zero] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            same_block = (a < k) == (b < k)
            (first if same_block else second)[a][b] = adapted[a][b]
    return (
        TwoForm.from_adapted(dec, exact.matrix(first, n)),
        TwoForm.from_adapted(dec, exact.matrix(second, n)),
    )


def _from_adapted_entries(dec: Decomposition, entries: Iterable[tuple[int, int, Any]]) -> TwoForm:
    n = dec.n
    rows = [[QQ.zero] * n for _ in range(n)]
    for a, b, c in entries:
        rows[a][b] += c
        rows[b][a] -= c
    return TwoForm.from_adapted(dec, exact.matrix(rows, n))


@dataclass(frozen=True, eq=False)
class TypeIISystem:
    """The homogeneous system in ``b_tk = ω(v_k, z_t)`` (t-major unknowns)."""

    matrix: DomainMatrix
    unknowns: list[tuple[int, int]]
    equations: list[tuple[int, int, int]]

    @property
    def rank(self) -> int:
        return exact.rank(self.matrix)

    @property
    def nullity(self) -> int:
        return len(self.unknowns) - self.rank

    def unknown_labels(self) -> list[str]:
        return [f"b_{t + 1},{k + 1}" for t, k in self.unknowns]


def type_II_system(dec: Decomposition) -> TypeIISystem:
    k_dim, q = dec.dim_v, dec.dim_z
    unknowns = [(t, k) for t in range(q) for k in range(k_dim)]
    column = {u: idx for idx, u in enumerate(unknowns)}
    equations = triples(k_dim)
    rows = []
    for i, j, k in equations:
        row = [QQ.zero] * len(unknowns)
        for (a, b), free in (((i, j), k), ((j, k), i), ((k, i), j)):
            for s, c in enumerate(dec.bracket_in_center(a, b)):
                if c:
                    row[column[(s, free)]] += c
        rows.append(row)
    return TypeIISystem(exact.matrix(rows, len(unknowns)), unknowns, [(i + 1, j + 1, k + 1) for i, j, k in equations])


def type_II_closed_space(dec: Decomposition) -> FormSpace:
    system = type_II_system(dec)
    k_dim = dec.dim_v
    basis = []
    for solution in exact.nullspace(system.matrix):
        entries = [
            (k, k_dim + t, c) for (t, k), c in zip(system.unknowns, solution) if c
        ]
        basis.append(_from_adapted_entries(dec, entries))
    return FormSpace(dec.n, basis, FormKind.CLOSED_TYPE_II, dec.tag)


def type_I_closed_space(dec: Decomposition) -> FormSpace:
    """Any v×v pairing plus z×z pairings ``W`` with ``γᵀW = 0`` on C(n)."""
    k_dim, q = dec.dim_v, dec.dim_z
    basis = [_from_adapted_entries(dec, [(a, b, QQ.one)]) for a, b in pairs(k_dim)]
    z_pairs = pairs(q)
    if z_pairs:
        gammas = [dec.center_coordinates(g) for g in dec.commutator_basis]
        rows = []
        for gamma in gammas:
            for t in range(q):
                row = [QQ.zero] * len(z_pairs)
                for idx, (s, u) in enumerate(z_pairs):
                    # (γᵀW)_t = Σ_s γ_s W_st with W_su = w, W_us = -w
                    if u == t:
                        row[idx] += gamma[s]
                    elif s == t:
                        row[idx] -= gamma[u]
                rows.append(row)
        for solution in exact.nullspace(exact.matrix(rows, len(z_pairs))):
            entries = [
                (k_dim + s, k_dim + u, c) for (s, u), c in zip(z_pairs, solution) if c
            ]
            basis.append(_from_adapted_entries(dec, entries))
    return FormSpace(dec.n, basis, FormKind.CLOSED_TYPE_I, dec.tag)


def lorentz_force_of_j(dec: Decomposition, z: Sequence[Any]) -> DomainMatrix:
    """``j(Z)`` extended by zero on z, in structural coordinates."""
    n, k_dim = dec.n, dec.dim_v
    jz = j_map(dec, z).to_list()
    block = [[QQ.zero] * n for _ in range(n)]
    for a in range(k_dim):
        for b in range(k_dim):
            block[a][b] = jz[a][b]
    return dec.adapted * exact.matrix(block, n) * dec.adapted_inverse


def exact_space(dec: Decomposition) -> FormSpace:
    basis = [
        TwoForm.from_lorentz_force(dec.metric, lorentz_force_of_j(dec, z))
        for z in dec.commutator_basis
    ]
    return FormSpace(dec.n, basis, FormKind.EXACT, dec.tag)


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------
def chevalley_eilenberg(algebra: LieAlgebra, degree: int) -> DomainMatrix:
    """Matrix of ``d: Λᵖ → Λᵖ⁺¹`` on elementary forms, ``p`` in {1, 2}.

    ``dω(X_0..X_p) = Σ_{i<j} (-1)^{i+j} ω([X_i, X_j], X_0..X̂_i..X̂_j..X_p)``.
    """
    if degree not in (1, 2):
        raise InvalidInput("differential is available for degrees 1 and 2")
    n = algebra.dim
    sources = list(itertools.combinations(range(n), degree))
    targets = list(itertools.combinations(range(n), degree + 1))
    source_index = {s: idx for idx, s in enumerate(sources)}

    def elementary_value(idx: int, args: tuple[int, ...]) -> int:
        # ω = e^{sources[idx]} evaluated on basis vectors ``args``
        if len(set(args)) != len(args):
            return 0
        order = sorted(range(len(args)), key=lambda p: args[p])
        if tuple(args[p] for p in order) != sources[idx]:
            return 0
        inversions = sum(
            1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b]
        )
        return -1 if inversions % 2 else 1

    rows = []
    for target in targets:
        row = [QQ.zero] * len(sources)
        for i, j in itertools.combinations(range(len(target)), 2):
            sign = -1 if (i + j) % 2 else 1
            rest = tuple(x for p, x in enumerate(target) if p not in (i, j))
            for m, c in enumerate(algebra.basis_bracket(target[i], target[j])):
                if not c:
                    continue
                args = (m,) + rest
                key = tuple(sorted(args))
                if key in source_index:
                    idx = source_index[key]
                    value = elementary_value(idx, args)
                    if value:
                        row[idx] += sign * value * c
        rows.append(row)
    return exact.matrix(rows, len(sources))


def betti1(algebra: LieAlgebra) -> int:
    return algebra.dim - len(exact.row_basis(list(algebra.brackets.values()), algebra.dim))


def betti2(algebra: LieAlgebra) -> int:
    dec = decompose(algebra)
    return closed_space(algebra).dim - exact_space(dec).dim


def conjugate_form(dec: Decomposition, psi: DomainMatrix | Sequence[Sequence[Any]], form: TwoForm) -> TwoForm:
    """Form of ``ψ ∘ F ∘ ψ⁻¹``: ``ψ⁻ᵀ Ω ψ⁻¹``."""
    if not isinstance(psi, DomainMatrix):
        psi = exact.matrix(psi, dec.n)
    if not is_orthogonal_automorphism(dec.algebra, dec.metric, psi):
        raise NotAutomorphism("map is not an orthogonal automorphism of the metric algebra")
    inv = exact.inverse(psi)
    return TwoForm(inv.transpose() * form.omega * inv)
