"""
Exact rational linear algebra on top of sympy's ``DomainMatrix`` over ``QQ``.

Everything that decides a verdict (ranks, null spaces, determinants) goes
through this module, so no floating point ever reaches a verdict path.
Elimination uses sympy's fraction-free RREF (``method="CD"``: clear
denominators, then Bareiss-style elimination over ``ZZ``).

Conventions:
- A *vector* is a tuple of ``QQ`` elements in structural coordinates.
- A *subspace* is a list of vectors (its basis).
- Matrices are ``DomainMatrix`` over ``QQ``; bulk element access goes through
  ``to_list()``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from nilpotent.errors import InvalidInput

Scalar = Any
Vector = tuple

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------
def qq(value: Any) -> Scalar:
    """Coerce ints, Fractions, ``"p/q"`` strings and QQ elements into QQ."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, (bool, float)):
        raise InvalidInput(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if QQ.of_type(value):
        return value
    return QQ.convert(value)


def parse_rational(text: str) -> Scalar:
    """Parse ``"p"`` or ``"p/q"``; decimals and exponents are rejected."""
    if not _RATIONAL_RE.match(text):
        raise InvalidInput(f"not a rational literal: {text!r}")
    try:
        value = Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise InvalidInput(f"zero denominator in {text!r}") from None
    return QQ(value.numerator, value.denominator)


def format_rational(value: Scalar) -> str:
    value = qq(value)
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def to_fraction(value: Scalar) -> Fraction:
    value = qq(value)
    return Fraction(int(value.numerator), int(value.denominator))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------
def matrix(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> DomainMatrix:
    """Build a QQ matrix from nested sequences (``ncols`` needed when empty)."""
    converted = [[qq(v) for v in row] for row in rows]
    if not converted:
        return zeros(0, ncols or 0)
    width = len(converted[0])
    if any(len(row) != width for row in converted):
        raise InvalidInput("ragged matrix rows")
    return DomainMatrix(converted, (len(converted), width), QQ)


def zeros(m: int, n: int) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), QQ).to_dense()


def identity(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ).to_dense()


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    """Entrywise equality; independent of sparse or dense storage."""
    return a.shape == b.shape and a.to_list() == b.to_list()


def columns(vectors: Sequence[Vector], n: int) -> DomainMatrix:
    """Matrix whose columns are ``vectors`` (n rows)."""
    if not vectors:
        return zeros(n, 0)
    return matrix(vectors).transpose()


def unit(n: int, index: int) -> Vector:
    return tuple(QQ.one if i == index else QQ.zero for i in range(n))


def to_rows(m: DomainMatrix) -> list[list[Scalar]]:
    return m.to_list()


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------
def rref(m: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    """Normalized RREF (pivots equal to one) and the pivot columns."""
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return m, ()
    reduced, den, pivots = m.rref_den(method="CD")
    if den != QQ.one:
        reduced = reduced / den
    return reduced, tuple(pivots)


def nullspace(m: DomainMatrix) -> list[Vector]:
    """Basis of ``{x : m x = 0}``; one vector per free column, free entry 1."""
    rows, cols = m.shape
    if cols == 0:
        return []
    if rows == 0:
        return [unit(cols, i) for i in range(cols)]
    reduced, pivots = rref(m)
    if not pivots:
        return [unit(cols, i) for i in range(cols)]
    basis = reduced.nullspace_from_rref(list(pivots))
    return [tuple(row) for row in basis.to_list()]


def rank(m: DomainMatrix) -> int:
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return 0
    return len(rref(m)[1])


def row_basis(vectors: Sequence[Vector], n: int) -> list[Vector]:
    """Echelon basis of the span of ``vectors``."""
    if not vectors:
        return []
    reduced, pivots = rref(matrix(vectors))
    return [tuple(row) for row in reduced.to_list()[: len(pivots)]]


def span_rank(vectors: Sequence[Vector], n: int) -> int:
    return rank(matrix(vectors, n)) if vectors else 0


def in_span(vector: Vector, basis: Sequence[Vector]) -> bool:
    n = len(vector)
    return span_rank(list(basis) + [vector], n) == span_rank(basis, n)


def coordinates(vector: Vector, basis: Sequence[Vector]) -> Vector | None:
    """Coefficients of ``vector`` in an independent ``basis``; None if outside."""
    n = len(vector)
    if not basis:
        return () if all(v == 0 for v in vector) else None
    augmented = columns(list(basis) + [vector], n)
    reduced, pivots = rref(augmented)
    k = len(basis)
    if k in pivots:
        return None
    table = reduced.to_list()
    coeffs = [QQ.zero] * k
    for row, col in enumerate(pivots):
        coeffs[col] = table[row][k]
    return tuple(coeffs)


def inverse(m: DomainMatrix) -> DomainMatrix:
    return m.inv()


def det(m: DomainMatrix) -> Scalar:
    if m.shape == (0, 0):
        return QQ.one
    return m.det()


def solve(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Solve ``a x = b`` for square invertible ``a``."""
    return a.lu_solve(b)


# ---------------------------------------------------------------------------
# Vector helpers
# ---------------------------------------------------------------------------
def combine(coeffs: Iterable[Scalar], vectors: Sequence[Vector], n: int) -> Vector:
    out = [QQ.zero] * n
    for c, vec in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(vec):
                if x:
                    out[i] += c * x
    return tuple(out)


def apply(m: DomainMatrix, vector: Vector) -> Vector:
    return tuple(row[0] for row in (m * columns([vector], len(vector))).to_list())


def bilinear(gram: DomainMatrix, x: Vector, y: Vector) -> Scalar:
    """``xᵀ G y``."""
    g = gram.to_list()
    total = QQ.zero
    for a, xa in enumerate(x):
        if xa:
            row = g[a]
            for b, yb in enumerate(y):
                if yb and row[b]:
                    total += xa * row[b] * yb
    return total


def is_zero_vector(vector: Vector) -> bool:
    return all(v == 0 for v in vector)


def format_vector(vector: Vector) -> list[str]:
    return [format_rational(v) for v in vector]
