from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from nilpotent import exact
from nilpotent.errors import InvalidInput


def test_parse_rational_accepts_integers_and_fractions():
    assert exact.parse_rational("3/4") == QQ(3, 4)
    assert exact.parse_rational(" -2 ") == QQ(-2)
    assert exact.parse_rational("6/4") == QQ(3, 2)


@pytest.mark.parametrize("text", ["1.5", "1e3", "", "a", "1/0", "--1"])
def test_parse_rational_rejects_non_rationals(text):
    with pytest.raises(InvalidInput):
        exact.parse_rational(text)


def test_qq_coercions():
    assert exact.qq(Fraction(2, 6)) == QQ(1, 3)
    assert exact.qq(5) == QQ(5)
    assert exact.qq("7/2") == QQ(7, 2)
    with pytest.raises(InvalidInput):
        exact.qq(True)


@pytest.mark.parametrize("value", [0.1, 2.0, float("nan")])
def test_qq_rejects_floats(value):
    with pytest.raises(InvalidInput, match="not a rational number"):
        exact.qq(value)


def test_format_rational():
    assert exact.format_rational(QQ(6, 4)) == "3/2"
    assert exact.format_rational(QQ(-4, 2)) == "-2"
    assert exact.to_fraction(QQ(1, 3)) == Fraction(1, 3)


def test_equal_ignores_storage_format():
    sparse = DomainMatrix.eye(3, QQ)
    assert exact.equal(sparse, exact.identity(3))
    assert not exact.equal(exact.identity(3), exact.zeros(3, 3))


def test_nullspace_has_unit_free_entries():
    m = exact.matrix([[1, 1, 0], [0, 0, 1]])
    assert exact.nullspace(m) == [(QQ(-1), QQ(1), QQ(0))]


def test_nullspace_of_empty_system_is_everything():
    assert exact.nullspace(exact.matrix([], 2)) == [exact.unit(2, 0), exact.unit(2, 1)]


def test_rank_and_row_basis():
    vectors = [(1, 2, 3), (2, 4, 6), (0, 1, 1)]
    assert exact.span_rank(vectors, 3) == 2
    assert len(exact.row_basis(vectors, 3)) == 2


def test_coordinates_in_basis():
    basis = [(QQ(1), QQ(0), QQ(1)), (QQ(0), QQ(1), QQ(0))]
    assert exact.coordinates((QQ(2), QQ(3), QQ(2)), basis) == (QQ(2), QQ(3))
    assert exact.coordinates((QQ(1), QQ(0), QQ(0)), basis) is None
    assert exact.in_span((QQ(3), QQ(-1), QQ(3)), basis)


def test_det_of_empty_matrix_is_one():
    assert exact.det(exact.zeros(0, 0)) == QQ.one


def test_solve_and_inverse():
    a = exact.matrix([[2, 1], [1, 1]])
    b = exact.matrix([[3], [2]])
    assert exact.to_rows(exact.solve(a, b)) == [[QQ(1)], [QQ(1)]]
    assert exact.equal(a * exact.inverse(a), exact.identity(2))


def test_bilinear_and_apply():
    g = exact.matrix([[2, 1], [1, 3]])
    x, y = (QQ(1), QQ(0)), (QQ(0), QQ(1))
    assert exact.bilinear(g, x, y) == 1
    assert exact.apply(g, x) == (QQ(2), QQ(1))


def test_ragged_rows_rejected():
    with pytest.raises(InvalidInput):
        exact.matrix([[1, 2], [3]])


matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-3, 3), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


@given(matrices)
def test_rank_nullity(rows):
    m = exact.matrix(rows)
    kernel = exact.nullspace(m)
    assert exact.rank(m) + len(kernel) == len(rows[0])
    for vec in kernel:
        assert exact.is_zero_vector(exact.apply(m, vec))
