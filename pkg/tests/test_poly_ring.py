import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from error_handler import DomainError, StructuralError
from field_linalg import PrimeFieldConfig
from poly_ring import (
    DegreeSlice,
    GeneralPosition,
    LinearForm,
    Monomial,
    derivative_row_entry,
    derivative_rows,
    enumerate_monomials,
    expand_power,
    monomial_count,
    multiply,
)

FIELD = PrimeFieldConfig()


def slices(v: int, d: int):
    return st.lists(st.integers(min_value=0, max_value=FIELD.modulus - 1),
                    min_size=monomial_count(v, d), max_size=monomial_count(v, d)).map(
        lambda coeffs: DegreeSlice(v, d, np.array(coeffs, dtype=np.int64), FIELD)
    )


forms3 = st.lists(st.integers(min_value=0, max_value=10**6), min_size=3, max_size=3).filter(any).map(
    lambda coeffs: LinearForm(tuple(coeffs), FIELD)
)
points3 = st.lists(st.integers(min_value=0, max_value=10**6), min_size=3, max_size=3)


class TestMonomials:
    @pytest.mark.parametrize("v, d, count", [(7, 0, 1), (7, 3, 84), (7, 6, 924), (7, 9, 5005), (6, 6, 462), (1, 5, 1)])
    def test_monomial_count(self, v, d, count):
        assert monomial_count(v, d) == count

    def test_monomial_count_errors(self):
        with pytest.raises(DomainError):
            monomial_count(0, 2)
        with pytest.raises(DomainError):
            monomial_count(3, -1)

    def test_descending_lexicographic_order(self):
        basis = enumerate_monomials(3, 2)
        assert [m.exponents for m in basis] == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]

    @pytest.mark.parametrize("v, d", [(3, 4), (7, 3), (6, 5)])
    def test_index_bijection(self, v, d):
        basis = enumerate_monomials(v, d)
        assert len(basis) == monomial_count(v, d)
        assert all(basis.index_of(basis.monomial_at(i)) == i for i in range(len(basis)))

    def test_index_of_rejects_wrong_degree(self):
        with pytest.raises(StructuralError):
            enumerate_monomials(3, 2).index_of((1, 0, 0))
        with pytest.raises(StructuralError):
            enumerate_monomials(3, 2).monomial_at(6)

    def test_negative_exponent(self):
        with pytest.raises(DomainError):
            Monomial((1, -1))


class TestForms:
    def test_zero_form_rejected(self):
        with pytest.raises(DomainError):
            LinearForm((0, 0, 0), FIELD)

    def test_binomial_square(self):
        square = expand_power(LinearForm((1, 1), FIELD), 2)
        assert square.coefficients.tolist() == [1, 2, 1]

    def test_power_of_variable_is_a_monomial(self):
        cube = expand_power(LinearForm.variable(1, 3, FIELD), 3)
        assert cube == DegreeSlice.monomial((0, 3, 0), FIELD)

    def test_power_rejects_zero_exponent(self):
        with pytest.raises(DomainError):
            expand_power(LinearForm((1, 2), FIELD), 0)

    @settings(deadline=None, max_examples=50)
    @given(form=forms3, k=st.integers(min_value=1, max_value=6), point=points3)
    def test_power_evaluates_as_power(self, form, k, point):
        p = FIELD.modulus
        value = sum(c * x for c, x in zip(form.coefficients, point)) % p
        assert expand_power(form, k).evaluate(point) == pow(value, k, p)

    def test_add_requires_same_degree(self):
        with pytest.raises(StructuralError):
            DegreeSlice.zero(3, 1, FIELD) + DegreeSlice.zero(3, 2, FIELD)

    def test_wrong_coefficient_count(self):
        with pytest.raises(StructuralError):
            DegreeSlice(3, 2, np.zeros(5, dtype=np.int64), FIELD)


class TestRingLaws:
    @settings(deadline=None, max_examples=30)
    @given(a=slices(3, 2), b=slices(3, 1))
    def test_commutative(self, a, b):
        assert multiply(a, b) == multiply(b, a)

    @settings(deadline=None, max_examples=30)
    @given(a=slices(3, 1), b=slices(3, 2), c=slices(3, 1))
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @settings(deadline=None, max_examples=30)
    @given(a=slices(3, 2), b=slices(3, 1), c=slices(3, 1))
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @settings(deadline=None, max_examples=30)
    @given(a=slices(3, 2), b=slices(3, 2), i=st.integers(min_value=0, max_value=2))
    def test_leibniz(self, a, b, i):
        assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)

    @settings(deadline=None, max_examples=30)
    @given(a=slices(3, 2), b=slices(3, 3), point=points3)
    def test_evaluation_is_multiplicative(self, a, b, point):
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point) % FIELD.modulus


class TestDerivativeRows:
    def test_entry_examples(self):
        # d/dx0 d/dx0 of x0^3 x1 at (2, 5): 6 x0 x1 = 60
        assert derivative_row_entry((3, 1), (2, 0), (2, 5), FIELD) == 60
        assert derivative_row_entry((1, 1), (2, 0), (2, 5), FIELD) == 0
        assert derivative_row_entry((2, 0), (0, 0), (3, 7), FIELD) == 9

    @settings(deadline=None, max_examples=30)
    @given(point=points3, order=st.integers(min_value=0, max_value=3))
    def test_rows_match_entries(self, point, order):
        d = 3
        betas = enumerate_monomials(3, order).exponents
        rows = derivative_rows(3, d, betas, point, FIELD)
        alphas = enumerate_monomials(3, d).exponents
        for r, beta in enumerate(betas):
            for c, alpha in enumerate(alphas):
                assert rows[r, c] == derivative_row_entry(tuple(alpha), tuple(beta), point, FIELD)

    def test_order_above_degree_gives_zero_rows(self):
        rows = derivative_rows(2, 2, [(3, 0)], (1, 1), FIELD)
        assert not rows.any()

    def test_point_length_checked(self):
        with pytest.raises(StructuralError):
            derivative_rows(3, 2, [(0, 0, 0)], (1, 2), FIELD)


class TestGeneralPosition:
    def test_seed_reproducible(self):
        first = GeneralPosition(11, FIELD).linear_forms(4, 5)
        second = GeneralPosition(11, FIELD).linear_forms(4, 5)
        assert first == second

    def test_attempts_draw_fresh_choices(self):
        base = GeneralPosition(11, FIELD, attempt=0).linear_forms(2, 5)
        retry = GeneralPosition(11, FIELD, attempt=1).linear_forms(2, 5)
        assert base != retry

    def test_coordinates_nonzero(self):
        coords = GeneralPosition(3, FIELD).coordinates(10, 6)
        assert all(0 < x < FIELD.modulus for row in coords for x in row)

    def test_negative_seed(self):
        with pytest.raises(DomainError):
            GeneralPosition(-1, FIELD)
