import pytest
from hypothesis import given, strategies as st
from sympy import QQ

from nilpotent import exact
from nilpotent.algebra import LieAlgebra, decompose, random_metric
from nilpotent.errors import BadIndex, InvalidInput, NotAutomorphism
from nilpotent.forms import (
    FormKind,
    TwoForm,
    betti1,
    betti2,
    chevalley_eilenberg,
    closed_space,
    conjugate_form,
    cyclic_defect,
    exact_space,
    is_closed,
    split_form,
    type_I_closed_space,
    type_II_closed_space,
    type_II_system,
)

from conftest import SIX_DIMENSIONAL, STATIC


class TestTwoForm:
    def test_entries_and_label(self):
        form = TwoForm.from_entries(6, [(1, 6, 1), (2, 5, 2), (3, 4, -1)])
        assert form.label() == "e^16 + 2*e^25 - e^34"
        assert form.entries() == [(1, 6, 1), (2, 5, 2), (3, 4, -1)]
        assert TwoForm.zero(4).label() == "0"

    def test_wide_label(self):
        assert TwoForm.elementary(10, 1, 10).label() == "e^{1,10}"

    def test_rejects_non_skew_matrix(self):
        with pytest.raises(InvalidInput):
            TwoForm.from_rows([[1, 0], [0, 0]])

    def test_rejects_bad_entries(self):
        with pytest.raises(InvalidInput):
            TwoForm.from_entries(3, [(2, 1, 1)])
        with pytest.raises(BadIndex):
            TwoForm.from_entries(3, [(1, 4, 1)])

    def test_evaluate_and_radical(self):
        form = TwoForm.elementary(3, 1, 2)
        assert form.evaluate((1, 0, 0), (0, 1, 0)) == 1
        assert form.evaluate((0, 1, 0), (1, 0, 0)) == -1
        assert form.radical() == [exact.unit(3, 2)]
        assert not form.is_nondegenerate()

    @pytest.mark.parametrize("seed", [0, 4])
    def test_lorentz_force_round_trip(self, seed):
        metric = random_metric(4, seed)
        form = TwoForm.from_entries(4, [(1, 2, 1), (1, 4, QQ(-2, 3)), (3, 4, 5)])
        force = form.lorentz_force(metric)
        assert TwoForm.from_lorentz_force(metric, force) == form
        x, y = (QQ(1), QQ(2), QQ(0), QQ(-1)), (QQ(0), QQ(1), QQ(3), QQ(1))
        assert metric.pair(exact.apply(force, x), y) == form.evaluate(x, y)


class TestClosedness:
    def test_non_closed_form_on_f6(self, entry):
        f6 = entry("f6").algebra
        form = TwoForm.elementary(6, 4, 5)
        assert not is_closed(f6, form)
        assert cyclic_defect(f6, form) == {(1, 2, 5): 1, (1, 3, 4): -1}

    def test_star_algebra_couples_two_type_two_unknowns(self, entry):
        g5 = entry("g5").algebra
        assert cyclic_defect(g5, TwoForm.elementary(5, 1, 5)) == {(1, 2, 3): -1}
        assert cyclic_defect(g5, TwoForm.elementary(5, 2, 4)) == {(1, 2, 3): 1}
        assert is_closed(g5, TwoForm.from_entries(5, [(1, 5, 1), (2, 4, 1)]))
        dec = decompose(g5)
        assert type_II_system(dec).rank == 1
        assert type_II_closed_space(dec).dim == 5
        assert len(exact.nullspace(chevalley_eilenberg(g5, 2))) == closed_space(g5).dim == 8

    def test_dimension_mismatch(self, entry):
        with pytest.raises(InvalidInput):
            cyclic_defect(entry("h1").algebra, TwoForm.zero(4))

    def test_every_form_is_closed_on_abelian(self):
        assert closed_space(LieAlgebra.abelian(4)).dim == 6
        assert closed_space(LieAlgebra.abelian(2)).dim == 1

    def test_heisenberg_spaces(self, entry):
        h1 = entry("h1").algebra
        dec = decompose(h1)
        assert closed_space(h1).dim == 3
        assert [f.label() for f in type_II_closed_space(dec).basis] == ["e^13", "e^23"]
        assert [f.label() for f in exact_space(dec).basis] == ["e^12"]
        assert [f.label() for f in type_I_closed_space(dec).basis] == ["e^12"]
        assert betti1(h1) == 2
        assert betti2(h1) == 2

    def test_space_kinds(self, entry):
        dec = decompose(entry("h1").algebra)
        assert type_II_closed_space(dec).kind is FormKind.CLOSED_TYPE_II
        assert exact_space(dec).kind is FormKind.EXACT
        assert closed_space(dec.algebra).kind is FormKind.CLOSED

    def test_combine_checks_parameter_count(self, entry):
        space = closed_space(entry("h1").algebra)
        with pytest.raises(InvalidInput):
            space.combine([1, 2])


class TestCochains:
    @pytest.mark.parametrize("name", ["h1", "g5", "f6", "hC", "singular7"])
    def test_differential_squares_to_zero(self, entry, name):
        algebra = entry(name).algebra
        d1 = chevalley_eilenberg(algebra, 1)
        d2 = chevalley_eilenberg(algebra, 2)
        assert exact.is_zero_vector([c for row in (d2 * d1).to_list() for c in row])

    @pytest.mark.parametrize("name", STATIC)
    def test_kernel_and_image_dimensions(self, entry, name):
        item = entry(name)
        d1 = chevalley_eilenberg(item.algebra, 1)
        d2 = chevalley_eilenberg(item.algebra, 2)
        assert len(exact.nullspace(d2)) == item.expected.closed_dim
        assert exact.rank(d1) == item.expected.exact_dim

    def test_degree_out_of_range(self, entry):
        with pytest.raises(InvalidInput):
            chevalley_eilenberg(entry("h1").algebra, 3)


class TestTypeSplit:
    @pytest.mark.parametrize("name", STATIC)
    def test_closed_space_splits(self, entry, name):
        item = entry(name)
        dec = decompose(item.algebra)
        one, two = type_I_closed_space(dec), type_II_closed_space(dec)
        assert closed_space(item.algebra).dim == one.dim + two.dim
        for form in exact_space(dec).basis:
            assert one.contains(form)

    @pytest.mark.parametrize("name", ["g5+R", "h1+h1", "singular7"])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_dimensions_do_not_depend_on_metric(self, entry, name, seed):
        item = entry(name)
        dec = decompose(item.algebra, random_metric(item.algebra.dim, seed))
        assert type_I_closed_space(dec).dim == item.expected.typeI_dim
        assert type_II_closed_space(dec).dim == item.expected.typeII_dim
        assert exact_space(dec).dim == item.expected.exact_dim

    @pytest.mark.parametrize("name", SIX_DIMENSIONAL)
    @given(data=st.data())
    def test_split_parts_are_closed(self, name, data):
        from nilpotent import catalog

        algebra = catalog.get(name).algebra
        dec = decompose(algebra, random_metric(6, data.draw(st.integers(0, 20))))
        space = closed_space(algebra)
        params = data.draw(st.lists(st.integers(-3, 3), min_size=space.dim, max_size=space.dim))
        form = space.combine(params)
        first, second = split_form(dec, form)
        assert first + second == form
        assert is_closed(algebra, first)
        assert is_closed(algebra, second)
        assert type_II_closed_space(dec).contains(second)
        assert type_I_closed_space(dec).contains(first)

    def test_free_algebra_system(self, entry):
        system = type_II_system(decompose(entry("f6").algebra))
        assert len(system.unknowns) == 9
        assert system.rank == 1
        assert system.unknown_labels()[0] == "b_1,1"


class TestCatalogFindings:
    def test_singular7_printed_force_is_not_closed(self, entry):
        item = entry("singular7")
        form = item.aux_forms["printed_force"]
        assert cyclic_defect(item.algebra, form) == {(1, 2, 4): -1}

    def test_singular7_z2_part_is_type_two(self, entry):
        item = entry("singular7")
        form = item.aux_forms["printed_force_z2_part"]
        dec = decompose(item.algebra)
        assert is_closed(item.algebra, form)
        assert type_II_closed_space(dec).contains(form)
        assert split_form(dec, form)[0] == TwoForm.zero(7)

    def test_listed_complex_heisenberg_witness_is_not_closed(self, entry):
        item = entry("hC-e")
        defect = cyclic_defect(item.algebra, item.aux_forms["listed_witness"])
        assert defect[(1, 2, 3)] == -1

    def test_complex_heisenberg_witness(self, entry):
        item = entry("hC")
        witness = item.expected.witness
        assert is_closed(item.algebra, witness)
        assert witness.is_nondegenerate()

    def test_type_two_forces_anticommute_with_complex_structure(self, entry):
        item = entry("hC")
        dec = decompose(item.algebra, item.metric)
        jay = item.complex_structure
        space = type_II_closed_space(dec)
        assert space.dim == 4
        for form in space.basis:
            force = form.lorentz_force(item.metric)
            assert exact.equal(force * jay, -(jay * force))


class TestConjugation:
    def test_reflection_on_heisenberg(self, entry):
        h1 = entry("h1").algebra
        dec = decompose(h1)
        psi = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
        image = conjugate_form(dec, psi, TwoForm.elementary(3, 1, 3))
        assert image == TwoForm.elementary(3, 1, 3).scale(-1)
        assert type_II_closed_space(dec).contains(image)

    def test_rational_rotation_preserves_types(self, entry):
        algebra = entry("h1+R").algebra
        dec = decompose(algebra)
        c, s = QQ(3, 5), QQ(4, 5)
        psi = exact.matrix([[c, -s, 0, 0], [s, c, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        for form in type_II_closed_space(dec).basis:
            image = conjugate_form(dec, psi, form)
            assert is_closed(algebra, image)
            assert type_II_closed_space(dec).contains(image)
        witness = TwoForm.from_entries(4, [(1, 3, 1), (2, 4, 1)])
        assert conjugate_form(dec, psi, witness).is_nondegenerate()

    def test_rejects_non_automorphism(self, entry):
        dec = decompose(entry("h1").algebra)
        with pytest.raises(NotAutomorphism):
            conjugate_form(dec, [[0, 1, 0], [1, 0, 0], [0, 0, 1]], TwoForm.elementary(3, 1, 3))
