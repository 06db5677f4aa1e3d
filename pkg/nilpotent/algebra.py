"""
2-step nilpotent Lie algebras with exact structure constants.

Covers validation, center and commutator, the metric splitting n = v ⊕ z,
the j-maps ⟨j(Z)V, W⟩ = ⟨Z, [V, W]⟩, the singularity trichotomy and the
H-type test. Indices are 0-based internally; every user-facing message and
file format is 1-based.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from sympy import Poly, QQ, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from nilpotent import exact
from nilpotent.errors import (
    BadIndex,
    DegenerateMetric,
    DuplicateBracket,
    InvalidInput,
    NotTwoStep,
    VectorNotInCenter,
)
from nilpotent.exact import Vector

logger = logging.getLogger("nilforms")


def vector_label(vector: Sequence[Any], prefix: str = "e") -> str:
    """Render a coordinate vector as ``e1 - 1/2*e3`` (``0`` when empty)."""
    parts: list[str] = []
    for idx, coeff in enumerate(vector):
        if not coeff:
            continue
        name = f"{prefix}{idx + 1}"
        text = exact.format_rational(abs(coeff))
        term = name if text == "1" else f"{text}*{name}"
        if not parts:
            parts.append(term if coeff > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if coeff > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Lie algebra
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``[e_i, e_j] = Σ_k c[i][j][k] e_k`` for ``i < j``."""

    dim: int
    brackets: Mapping[tuple[int, int], Vector]
    name: str | None = None

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        table: Mapping[tuple[int, int], Mapping[int, Any]],
        name: str | None = None,
    ) -> "LieAlgebra":
        """Build from a 1-based table ``{(i, j): {k: c}}``."""
        return cls.from_entries(dim, ((i, j, terms) for (i, j), terms in table.items()), name)

    @classmethod
    def from_entries(
        cls,
        dim: int,
        entries: Iterable[tuple[int, int, Mapping[int, Any]]],
        name: str | None = None,
    ) -> "LieAlgebra":
        """Build from 1-based ``(i, j, {k: c})`` rows; repeated pairs are rejected."""
        if not isinstance(dim, int) or dim < 1:
            raise InvalidInput(f"dimension must be a positive integer, got {dim!r}")
        brackets: dict[tuple[int, int], Vector] = {}
        seen: set[tuple[int, int]] = set()
        for i, j, terms in entries:
            for idx in (i, j):
                if not 1 <= idx <= dim:
                    raise BadIndex(f"bracket index {idx} out of range 1..{dim}")
            if i >= j:
                raise InvalidInput(f"bracket [e{i},e{j}] must be given with i < j")
            if (i, j) in seen:
                raise DuplicateBracket(f"bracket [e{i},e{j}] given twice")
            seen.add((i, j))
            coeffs = [QQ.zero] * dim
            for k, c in terms.items():
                if not 1 <= k <= dim:
                    raise BadIndex(f"term index {k} in [e{i},e{j}] out of range 1..{dim}")
                coeffs[k - 1] = exact.qq(c)
            if any(coeffs):
                brackets[(i - 1, j - 1)] = tuple(coeffs)
        return cls(dim=dim, brackets=brackets, name=name)

    @classmethod
    def abelian(cls, dim: int, name: str | None = None) -> "LieAlgebra":
        return cls.from_entries(dim, (), name or f"R{dim}")

    def basis_bracket(self, i: int, j: int) -> Vector:
        """``[e_i, e_j]`` for 0-based indices, skew-symmetric."""
        if i == j:
            return (QQ.zero,) * self.dim
        if i < j:
            return self.brackets.get((i, j), (QQ.zero,) * self.dim)
        return tuple(-c for c in self.brackets.get((j, i), (QQ.zero,) * self.dim))

    def bracket(self, x: Sequence[Any], y: Sequence[Any]) -> Vector:
        out = [QQ.zero] * self.dim
        for (i, j), vec in self.brackets.items():
            coeff = x[i] * y[j] - x[j] * y[i]
            if coeff:
                for k, c in enumerate(vec):
                    if c:
                        out[k] += coeff * c
        return tuple(out)

    def adjoint(self, x: Sequence[Any]) -> DomainMatrix:
        """Matrix of ``ad_x`` (column ``k`` holds ``[x, e_k]``)."""
        cols = [self.bracket(x, exact.unit(self.dim, k)) for k in range(self.dim)]
        return exact.columns(cols, self.dim)

    def direct_sum(self, other: "LieAlgebra", name: str | None = None) -> "LieAlgebra":
        shift = self.dim
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), vec in self.brackets.items():
            table[(i, j)] = vec + (QQ.zero,) * other.dim
        for (i, j), vec in other.brackets.items():
            table[(i + shift, j + shift)] = (QQ.zero,) * shift + vec
        return LieAlgebra(dim=self.dim + other.dim, brackets=table, name=name)

    def trivial_extension(self, k: int = 1, name: str | None = None) -> "LieAlgebra":
        """``self ⊕ R^k``."""
        suffix = "+R" if k == 1 else f"+R{k}"
        return self.direct_sum(LieAlgebra.abelian(k), name or f"{self.name or 'n'}{suffix}")

    def is_abelian(self) -> bool:
        return not self.brackets


def validate(algebra: LieAlgebra) -> None:
    """Raise ``NotTwoStep`` for the first triple with ``[[e_i,e_j],e_k] != 0``."""
    n = algebra.dim
    for (i, j), vec in sorted(algebra.brackets.items()):
        if len(vec) != n:
            raise BadIndex(f"bracket [e{i + 1},e{j + 1}] has {len(vec)} coordinates, expected {n}")
        for k in range(n):
            value = algebra.bracket(vec, exact.unit(n, k))
            if not exact.is_zero_vector(value):
                raise NotTwoStep((i + 1, j + 1, k + 1), vector_label(value))


def center(algebra: LieAlgebra) -> list[Vector]:
    """Null space of the stacked adjoint maps ``x ↦ [x, e_k]``."""
    n = algebra.dim
    rows: list[list[Any]] = []
    for k in range(n):
        images = [algebra.basis_bracket(i, k) for i in range(n)]
        for m in range(n):
            rows.append([images[i][m] for i in range(n)])
    return exact.nullspace(exact.matrix(rows, n))


def commutator(algebra: LieAlgebra) -> list[Vector]:
    return exact.row_basis(list(algebra.brackets.values()), algebra.dim)


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class Metric:
    gram: DomainMatrix

    @classmethod
    def identity(cls, n: int) -> "Metric":
        return cls(exact.identity(n))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "Metric":
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DegenerateMetric("metric must be a non-empty square matrix")
        metric = cls(exact.matrix(rows))
        metric.check()
        return metric

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def rows(self) -> list[list[Any]]:
        return self.gram.to_list()

    def check(self) -> None:
        """Symmetric and positive-definite (leading principal minors > 0)."""
        g = self.gram
        if g.shape[0] != g.shape[1]:
            raise DegenerateMetric("metric is not square")
        if not exact.equal(g, g.transpose()):
            raise DegenerateMetric("metric is not symmetric")
        for size in range(1, self.dim + 1):
            minor = exact.det(g.extract(list(range(size)), list(range(size))))
            if minor <= 0:
                raise DegenerateMetric(
                    f"metric is not positive-definite (leading minor of size {size} is "
                    f"{exact.format_rational(minor)})"
                )

    def pair(self, x: Sequence[Any], y: Sequence[Any]) -> Any:
        return exact.bilinear(self.gram, x, y)


def random_metric(n: int, seed: int) -> Metric:
    """SPD ``AᵀA + n·Id`` with integer ``A`` drawn from ``[-2, 2]``."""
    if n < 1:
        raise InvalidInput("metric dimension must be positive")
    rng = random.Random(seed)
    a = exact.matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    return Metric(a.transpose() * a + exact.identity(n) * QQ(n))


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class Decomposition:
    algebra: LieAlgebra
    metric: Metric
    center_basis: list[Vector]
    v_basis: list[Vector]
    commutator_basis: list[Vector]
    kerj_basis: list[Vector]
    tag: str = field(default="identity")

    @property
    def n(self) -> int:
        return self.algebra.dim

    @property
    def dim_v(self) -> int:
        return len(self.v_basis)

    @property
    def dim_z(self) -> int:
        return len(self.center_basis)

    @cached_property
    def adapted(self) -> DomainMatrix:
        """Columns ``v_basis`` then ``center_basis``."""
        return exact.columns(self.v_basis + self.center_basis, self.n)

    @cached_property
    def adapted_inverse(self) -> DomainMatrix:
        return exact.inverse(self.adapted)

    @cached_property
    def v_gram(self) -> DomainMatrix:
        return self._gram(self.v_basis)

    @cached_property
    def z_gram(self) -> DomainMatrix:
        return self._gram(self.center_basis)

    def _gram(self, basis: list[Vector]) -> DomainMatrix:
        rows = [[self.metric.pair(x, y) for y in basis] for x in basis]
        return exact.matrix(rows, len(basis))

    def center_coordinates(self, z: Sequence[Any]) -> Vector:
        if len(z) != self.n:
            raise VectorNotInCenter(f"vector has {len(z)} coordinates, expected {self.n}")
        coords = exact.coordinates(tuple(exact.qq(c) for c in z), self.center_basis)
        if coords is None:
            raise VectorNotInCenter(f"{vector_label(z)} is not central")
        return coords

    def bracket_in_center(self, a: int, b: int) -> Vector:
        """``[v_a, v_b]`` in center-basis coordinates."""
        return self._v_brackets[(a, b)]

    @cached_property
    def _v_brackets(self) -> dict[tuple[int, int], Vector]:
        out = {}
        for a, b in itertools.product(range(self.dim_v), repeat=2):
            vec = self.algebra.bracket(self.v_basis[a], self.v_basis[b])
            coords = exact.coordinates(vec, self.center_basis)
            if coords is None:  # pragma: no cover - validated algebras are 2-step
                raise NotTwoStep((a + 1, b + 1, 0), vector_label(vec))
            out[(a, b)] = coords
        return out

    @cached_property
    def j_basis(self) -> list[DomainMatrix]:
        """``J_{Z_t}`` for each center basis vector."""
        return [j_map(self, z) for z in self.center_basis]


def _gram_schmidt(vectors: list[Vector], metric: Metric) -> list[Vector]:
    out: list[Vector] = []
    norms: list[Any] = []
    for vec in vectors:
        current = list(vec)
        for prev, norm in zip(out, norms):
            coeff = metric.pair(vec, prev) / norm
            if coeff:
                current = [c - coeff * p for c, p in zip(current, prev)]
        out.append(tuple(current))
        norms.append(metric.pair(current, current))
    return out


def decompose(algebra: LieAlgebra, metric: Metric | None = None, tag: str | None = None) -> Decomposition:
    metric = metric or Metric.identity(algebra.dim)
    if metric.dim != algebra.dim:
        raise DegenerateMetric(f"metric has dimension {metric.dim}, algebra has {algebra.dim}")
    metric.check()
    n = algebra.dim
    z = center(algebra)
    constraints = [exact.apply(metric.gram, zt) for zt in z]
    v = _gram_schmidt(exact.nullspace(exact.matrix(constraints, n)), metric)
    comm = commutator(algebra)
    pairing = [[metric.pair(zt, gamma) for zt in z] for gamma in comm]
    kerj_coords = exact.nullspace(exact.matrix(pairing, len(z)))
    kerj = [exact.combine(c, z, n) for c in kerj_coords]
    logger.debug(
        "Decomposed %s: dim v=%d dim z=%d dim C=%d dim ker j=%d",
        algebra.name or "algebra", len(v), len(z), len(comm), len(kerj),
    )
    return Decomposition(
        algebra=algebra,
        metric=metric,
        center_basis=z,
        v_basis=v,
        commutator_basis=comm,
        kerj_basis=kerj,
        tag=tag or ("identity" if exact.equal(metric.gram, exact.identity(n)) else "custom"),
    )


def j_map(dec: Decomposition, z: Sequence[Any]) -> DomainMatrix:
    """Matrix of ``j(Z)`` in ``v_basis`` (column convention): ``G_v J = -B_Z``."""
    dec.center_coordinates(z)
    zq = tuple(exact.qq(c) for c in z)
    gz = exact.apply(dec.metric.gram, zq)
    k = dec.dim_v
    if k == 0:
        return exact.zeros(0, 0)
    rows = []
    for a in range(k):
        row = []
        for b in range(k):
            bracket = dec.algebra.bracket(dec.v_basis[a], dec.v_basis[b])
            row.append(-sum((g * c for g, c in zip(gz, bracket) if g and c), QQ.zero))
        rows.append(row)
    return exact.solve(dec.v_gram, exact.matrix(rows))


# ---------------------------------------------------------------------------
# Singularity
# ---------------------------------------------------------------------------
class Singularity(str, Enum):
    NON_SINGULAR = "NonSingular"
    ALMOST_NON_SINGULAR = "AlmostNonSingular"
    SINGULAR = "Singular"


class Certainty(str, Enum):
    PROVEN = "Proven"
    HEURISTIC = "Heuristic"


@dataclass(frozen=True)
class SingularityClass:
    kind: Singularity
    certainty: Certainty
    method: str = ""

    @property
    def proven_non_singular(self) -> bool:
        return self.kind is Singularity.NON_SINGULAR and self.certainty is Certainty.PROVEN


def singularity_polynomial(dec: Decomposition):
    """``det(Σ z_t J_t)`` as a sparse polynomial in ``z1..zq``."""
    q = dec.dim_z
    names = ",".join(f"z{t + 1}" for t in range(q))
    poly_ring, *gens = ring(names, QQ)
    k = dec.dim_v
    rows = [[poly_ring.zero for _ in range(k)] for _ in range(k)]
    for gen, jt in zip(gens, dec.j_basis):
        for a, row in enumerate(jt.to_list()):
            for b, c in enumerate(row):
                if c:
                    rows[a][b] += gen * c
    generic = DomainMatrix(rows, (k, k), poly_ring.to_domain())
    return generic.det()


def _binary_form_has_real_zero(p) -> bool:
    # p is homogeneous in two variables; check both dehomogenizations.
    z1, z2 = p.ring.symbols
    t = Symbol("t")
    expr = p.as_expr()
    for restricted in (expr.subs({z1: t, z2: 1}), expr.subs({z1: 1, z2: t})):
        univariate = Poly(restricted, t, domain=QQ)
        if univariate.is_zero:
            return True
        if univariate.degree() > 0 and univariate.sqf_part().count_roots() > 0:
            return True
    return False


def _grid_points(q: int, radius: int) -> Iterable[tuple[int, ...]]:
    """Points of max-norm ``radius`` with first nonzero coordinate positive."""
    for point in itertools.product(range(-radius, radius + 1), repeat=q):
        if max(abs(x) for x in point) != radius:
            continue
        first = next(x for x in point if x)
        if first > 0:
            yield point


def classify_singularity(dec: Decomposition) -> SingularityClass:
    if dec.dim_v == 0:
        raise InvalidInput("singularity class needs dim v >= 1 (algebra is abelian)")
    p = singularity_polynomial(dec)
    q = dec.dim_z
    if p == 0:
        result = SingularityClass(Singularity.SINGULAR, Certainty.PROVEN, "det j(Z) vanishes identically")
    elif q == 1:
        result = SingularityClass(Singularity.NON_SINGULAR, Certainty.PROVEN, "dim z = 1")
    elif q == 2:
        if _binary_form_has_real_zero(p):
            result = SingularityClass(
                Singularity.ALMOST_NON_SINGULAR, Certainty.PROVEN, "binary form has a real zero"
            )
        else:
            result = SingularityClass(
                Singularity.NON_SINGULAR, Certainty.PROVEN, "binary form has no real zero"
            )
    elif is_h_type(dec):
        result = SingularityClass(Singularity.NON_SINGULAR, Certainty.PROVEN, "H-type")
    elif dec.kerj_basis:
        result = SingularityClass(
            Singularity.ALMOST_NON_SINGULAR, Certainty.PROVEN, "ker j is nonzero"
        )
    else:
        result = _grid_search(p, q)
    logger.debug("Singularity of %s: %s (%s)", dec.algebra.name or "algebra", result.kind.value, result.method)
    return result


def _grid_search(p, q: int) -> SingularityClass:
    degree = max(sum(m) for m in p.monoms())
    for radius in range(1, degree + 1):
        for point in _grid_points(q, radius):
            if p(*[QQ(x) for x in point]) == 0:
                return SingularityClass(
                    Singularity.ALMOST_NON_SINGULAR,
                    Certainty.PROVEN,
                    f"det j(Z) vanishes at Z = {list(point)}",
                )
    return SingularityClass(
        Singularity.NON_SINGULAR,
        Certainty.HEURISTIC,
        f"no zero on the integer grid of radius {degree}",
    )


def is_h_type(dec: Decomposition) -> bool:
    """``J_a J_b + J_b J_a = -2⟨Z_a, Z_b⟩ Id`` on all center basis pairs."""
    if dec.dim_v == 0 or not dec.commutator_basis:
        return False
    ident = exact.identity(dec.dim_v)
    js = dec.j_basis
    zg = dec.z_gram.to_list()
    for a in range(dec.dim_z):
        for b in range(a, dec.dim_z):
            lhs = js[a] * js[b] + js[b] * js[a]
            if not exact.equal(lhs, ident * (QQ(-2) * zg[a][b])):
                return False
    return True


def is_orthogonal_automorphism(algebra: LieAlgebra, metric: Metric, psi: DomainMatrix) -> bool:
    n = algebra.dim
    if psi.shape != (n, n) or metric.dim != n:
        return False
    if not exact.equal(psi.transpose() * metric.gram * psi, metric.gram):
        return False
    images = [exact.apply(psi, exact.unit(n, i)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = exact.apply(psi, algebra.basis_bracket(i, j))
            if lhs != algebra.bracket(images[i], images[j]):
                return False
    return True
