import pytest
from sympy import QQ

from nilpotent import exact
from nilpotent.algebra import (
    Certainty,
    LieAlgebra,
    Metric,
    Singularity,
    center,
    classify_singularity,
    commutator,
    decompose,
    is_h_type,
    is_orthogonal_automorphism,
    j_map,
    random_metric,
    singularity_polynomial,
    validate,
    vector_label,
)
from nilpotent.errors import (
    BadIndex,
    DegenerateMetric,
    DuplicateBracket,
    InvalidInput,
    NotTwoStep,
    VectorNotInCenter,
)

from conftest import STATIC


def three_step() -> LieAlgebra:
    return LieAlgebra.from_brackets(4, {(1, 2): {3: 1}, (1, 3): {4: 1}}, "filiform4")


class TestConstruction:
    def test_bad_index(self):
        with pytest.raises(BadIndex):
            LieAlgebra.from_brackets(3, {(1, 4): {3: 1}})
        with pytest.raises(BadIndex):
            LieAlgebra.from_brackets(3, {(1, 2): {5: 1}})

    def test_float_coefficients_are_rejected(self):
        with pytest.raises(InvalidInput):
            LieAlgebra.from_brackets(3, {(1, 2): {3: 0.1}})

    def test_duplicate_bracket(self):
        with pytest.raises(DuplicateBracket):
            LieAlgebra.from_entries(3, [(1, 2, {3: 1}), (1, 2, {3: 2})])

    def test_pairs_must_be_ordered(self):
        with pytest.raises(InvalidInput):
            LieAlgebra.from_entries(3, [(2, 1, {3: 1})])

    def test_dimension_must_be_positive(self):
        with pytest.raises(InvalidInput):
            LieAlgebra.from_entries(0, [])

    def test_bracket_is_skew(self, entry):
        h1 = entry("h1").algebra
        assert h1.basis_bracket(1, 0) == (QQ(0), QQ(0), QQ(-1))
        assert h1.bracket((1, 1, 0), (0, 1, 0)) == (QQ(0), QQ(0), QQ(1))

    def test_trivial_extension(self, entry):
        ext = entry("h1").algebra.trivial_extension(2)
        assert ext.dim == 5
        assert ext.name == "h1+R2"
        assert len(center(ext)) == 3


class TestValidate:
    def test_three_step_reports_first_triple(self):
        with pytest.raises(NotTwoStep) as info:
            validate(three_step())
        assert info.value.triple == (1, 2, 1)
        assert info.value.detail == "[[e1,e2],e1] = -e4 is not zero"
        assert info.value.code == "not_two_step"

    @pytest.mark.parametrize("name", ["h1", "g5", "hH", "singular7"])
    def test_catalog_algebras_are_two_step(self, entry, name):
        validate(entry(name).algebra)


class TestDecomposition:
    def test_heisenberg(self, entry):
        h1 = entry("h1").algebra
        assert center(h1) == [exact.unit(3, 2)]
        assert commutator(h1) == [exact.unit(3, 2)]
        dec = decompose(h1)
        assert dec.dim_v == 2
        assert dec.tag == "identity"
        assert exact.to_rows(j_map(dec, (0, 0, 1))) == [[0, -1], [1, 0]]

    def test_kernel_of_j_on_trivial_extension(self, entry):
        dec = decompose(entry("h1+R").algebra)
        assert dec.kerj_basis == [exact.unit(4, 3)]

    def test_j_map_needs_a_central_vector(self, entry):
        dec = decompose(entry("h1").algebra)
        with pytest.raises(VectorNotInCenter):
            j_map(dec, (1, 0, 0))

    def test_central_element_found_in_singular7(self, entry):
        dec = decompose(entry("singular7").algebra)
        assert dec.dim_z == 3
        assert exact.in_span((QQ(0), QQ(0), QQ(1), QQ(0), QQ(1), QQ(0), QQ(0)), dec.center_basis)

    def test_v_is_orthogonal_to_center(self, entry):
        metric = random_metric(6, 5)
        dec = decompose(entry("g5+R").algebra, metric, "random:5")
        assert dec.tag == "random:5"
        for v in dec.v_basis:
            for z in dec.center_basis:
                assert metric.pair(v, z) == 0

    def test_diagonal_metric_keeps_coordinate_splitting(self, entry):
        metric = Metric.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 4]])
        dec = decompose(entry("h1").algebra, metric)
        assert dec.tag == "custom"
        assert dec.center_basis == [exact.unit(3, 2)]
        assert exact.span_rank(dec.v_basis + [exact.unit(3, 0), exact.unit(3, 1)], 3) == 2
        assert dec.kerj_basis == []
        assert exact.to_rows(j_map(dec, (0, 0, 1))) == [[0, -4], [4, 0]]

    def test_j_vanishes_on_its_kernel(self, entry):
        dec = decompose(entry("h1+R").algebra)
        assert exact.equal(j_map(dec, exact.unit(4, 3)), exact.zeros(2, 2))

    def test_metric_dimension_mismatch(self, entry):
        with pytest.raises(DegenerateMetric):
            decompose(entry("h1").algebra, Metric.identity(4))


class TestMetric:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_metric_is_positive_definite(self, seed):
        metric = random_metric(5, seed)
        metric.check()
        assert exact.equal(metric.gram, random_metric(5, seed).gram)

    def test_not_symmetric(self):
        with pytest.raises(DegenerateMetric, match="symmetric"):
            Metric.from_rows([[1, 1], [0, 1]])

    def test_not_positive_definite(self):
        with pytest.raises(DegenerateMetric, match="positive-definite"):
            Metric.from_rows([[1, 0], [0, -1]])


class TestSingularity:
    @pytest.mark.parametrize(
        "name, kind",
        [
            ("h1", Singularity.NON_SINGULAR),
            ("h2", Singularity.NON_SINGULAR),
            ("g5", Singularity.SINGULAR),
            ("h1+R", Singularity.ALMOST_NON_SINGULAR),
            ("hC", Singularity.NON_SINGULAR),
            ("hH", Singularity.NON_SINGULAR),
            ("singular7", Singularity.ALMOST_NON_SINGULAR),
        ],
    )
    def test_classification(self, entry, name, kind):
        result = classify_singularity(decompose(entry(name).algebra))
        assert result.kind is kind
        assert result.certainty is Certainty.PROVEN

    def test_methods(self, entry):
        assert classify_singularity(decompose(entry("hC").algebra)).method == "binary form has no real zero"
        assert classify_singularity(decompose(entry("hH").algebra)).method == "H-type"
        assert classify_singularity(decompose(entry("singular7").algebra)).method == "ker j is nonzero"

    def test_polynomial_of_g5_vanishes(self, entry):
        assert singularity_polynomial(decompose(entry("g5").algebra)) == 0

    def test_abelian_has_no_class(self):
        with pytest.raises(InvalidInput):
            classify_singularity(decompose(LieAlgebra.abelian(3)))

    def test_quaternionic_stays_non_singular_under_other_metrics(self, entry):
        dec = decompose(entry("hH").algebra, random_metric(7, 3))
        assert classify_singularity(dec).kind is Singularity.NON_SINGULAR


class TestHType:
    @pytest.mark.parametrize("name", ["h1", "h2", "hC", "hH"])
    def test_h_type(self, entry, name):
        assert is_h_type(decompose(entry(name).algebra))

    @pytest.mark.parametrize("name", ["h1+h1", "h1+R", "g5"])
    def test_not_h_type(self, entry, name):
        assert not is_h_type(decompose(entry(name).algebra))

    def test_abelian_is_not_h_type(self):
        assert not is_h_type(decompose(LieAlgebra.abelian(4)))


def test_orthogonal_automorphisms(entry):
    h1 = entry("h1").algebra
    metric = Metric.identity(3)
    quarter_turn = exact.matrix([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
    assert is_orthogonal_automorphism(h1, metric, quarter_turn)
    assert is_orthogonal_automorphism(h1, metric, exact.identity(3))
    assert not is_orthogonal_automorphism(h1, metric, exact.matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
    assert is_orthogonal_automorphism(h1, metric, exact.matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]]))
    assert not is_orthogonal_automorphism(h1, metric, exact.matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))


def test_vector_label():
    assert vector_label((QQ(1), QQ(0), QQ(-1, 2))) == "e1 - 1/2*e3"
    assert vector_label((QQ(0), QQ(0))) == "0"


def _flat(m):
    return tuple(c for row in exact.to_rows(m) for c in row)


@pytest.mark.parametrize("name", STATIC)
class TestSplittingInvariants:
    def test_commutator_and_kernel_split_the_center(self, entry, name):
        dec = decompose(entry(name).algebra)
        for gamma in dec.commutator_basis + dec.kerj_basis:
            assert exact.in_span(gamma, dec.center_basis)
        assert len(dec.commutator_basis) + len(dec.kerj_basis) == dec.dim_z
        assert exact.span_rank(dec.commutator_basis + dec.kerj_basis, dec.n) == dec.dim_z
        assert dec.dim_v + dec.dim_z == dec.n

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_j_is_skew_for_the_metric(self, entry, name, seed):
        algebra = entry(name).algebra
        dec = decompose(algebra, random_metric(algebra.dim, seed))
        zero = exact.zeros(dec.dim_v, dec.dim_v)
        for jz in dec.j_basis:
            assert exact.equal(dec.v_gram * jz + jz.transpose() * dec.v_gram, zero)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_j_is_injective_on_the_commutator(self, entry, name, seed):
        algebra = entry(name).algebra
        dec = decompose(algebra, random_metric(algebra.dim, seed))
        images = [_flat(j_map(dec, gamma)) for gamma in dec.commutator_basis]
        assert exact.span_rank(images, dec.dim_v**2) == len(dec.commutator_basis)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_singularity_does_not_depend_on_metric(self, entry, name, seed):
        item = entry(name)
        dec = decompose(item.algebra, random_metric(item.algebra.dim, seed))
        assert classify_singularity(dec).kind is item.expected.singularity
