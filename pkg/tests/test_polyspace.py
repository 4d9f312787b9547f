from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subset_syzygy.algebra.exactfield import FieldSpec
from subset_syzygy.algebra.polyspace import (
    PolyVec,
    evaluate,
    linear_form,
    monomial_basis,
    monomial_index,
    monomial_values,
    mult_by_linear,
    multiplication_matrix,
    multiply,
    partial,
    shift_indices,
    variable,
)
from subset_syzygy.errors import PreconditionError

FIELD = FieldSpec(31991)


@st.composite
def forms(draw, n: int = 2, max_degree: int = 3):
    degree = draw(st.integers(min_value=0, max_value=max_degree))
    size = comb(n + degree, n)
    coeffs = draw(
        st.lists(
            st.integers(min_value=0, max_value=FIELD.prime - 1), min_size=size, max_size=size
        )
    )
    return PolyVec(FIELD, n, degree, coeffs)


def test_monomial_basis_order():
    """
    Test the graded lexicographic order of S_2 in three variables.
    """

    assert monomial_basis(2, 2).monomials == (
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    )
    for n, t in [(1, 0), (2, 5), (3, 4), (6, 2)]:
        assert len(monomial_basis(n, t)) == comb(n + t, n)

    with pytest.raises(PreconditionError):
        monomial_basis(0, 2)


def test_monomial_index_matches_position():
    """
    Test that the combinatorial index is the position in the basis.
    """

    for n, t in [(2, 4), (3, 3), (6, 2)]:
        basis = monomial_basis(n, t)
        assert [monomial_index(m) for m in basis.monomials] == list(range(len(basis)))
        assert basis.index(basis.monomials[-1]) == len(basis) - 1

    with pytest.raises(PreconditionError):
        monomial_basis(2, 2).index((1, 1, 1))


def test_shift_indices():
    """
    Test that x_i times a monomial lands on the right position of S_{t+1}.
    """

    source, target = monomial_basis(2, 2), monomial_basis(2, 3)
    for i in range(3):
        for position, monomial in zip(shift_indices(2, 2, i), source.monomials):
            raised = list(monomial)
            raised[i] += 1
            assert target.monomials[position] == tuple(raised)


def test_form_basics():
    """
    Test printing, normalization and size checks.
    """

    x0, x1, x2 = (variable(FIELD, 2, i) for i in range(3))
    conic = multiply(x0, x1 + x2.scale(-1))
    assert str(conic) == "x0*x1 + 31990*x0*x2"
    assert str(PolyVec.zero(FIELD, 2, 2)) == "0"
    assert conic.scale(5).normalized() == conic
    assert linear_form(FIELD, 2, [0, 1, -1]) == x1 + x2.scale(-1)
    assert conic.terms() == [(1, (1, 1, 0)), (31990, (1, 0, 1))]

    with pytest.raises(PreconditionError):
        PolyVec(FIELD, 2, 2, [1, 2, 3])
    with pytest.raises(PreconditionError):
        x0 + conic
    with pytest.raises(PreconditionError):
        variable(FIELD, 2, 3)


@settings(max_examples=40, deadline=None)
@given(forms(), forms())
def test_multiplication_agrees_with_matrix(f, g):
    """
    Test that f·g, g·f and the multiplication matrix agree.
    """

    product = multiply(f, g)
    assert product == multiply(g, f)
    matrix = multiplication_matrix(f, g.degree).entries
    by_matrix = (matrix.astype(object) @ np.array(g.coeffs, dtype=object)) % FIELD.prime
    assert product.coeffs.tolist() == [int(v) for v in by_matrix]


@settings(max_examples=40, deadline=None)
@given(forms(), forms(), st.lists(st.integers(0, FIELD.prime - 1), min_size=3, max_size=3))
def test_evaluation_is_multiplicative(f, g, point):
    """
    Test that evaluating a product multiplies the values.
    """

    expected = evaluate(f, point) * evaluate(g, point) % FIELD.prime
    assert evaluate(multiply(f, g), point) == expected


@settings(max_examples=40, deadline=None)
@given(forms(max_degree=4))
def test_euler_identity(f):
    """
    Test sum_i x_i ∂f/∂x_i = deg(f)·f.
    """

    if f.degree == 0:
        with pytest.raises(PreconditionError):
            partial(f, 0)
        return
    total = PolyVec.zero(FIELD, 2, f.degree)
    for i in range(3):
        total = total + mult_by_linear(partial(f, i), variable(FIELD, 2, i))
    assert total == f.scale(f.degree)


def test_monomial_values(field):
    """
    Test monomial evaluation at two points.
    """

    values = monomial_values(field, np.array([[1, 2, 3], [0, 0, 1]]), 2)
    assert values.tolist() == [[1, 2, 3, 4, 6, 9], [0, 0, 0, 0, 0, 1]]
    assert monomial_values(field, np.array([[4, 5, 6]]), 0).tolist() == [[1]]
