"""Exact scalar tower and jet arithmetic."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spinsplit.scalars import (
    GaussianRational,
    I_GAUSS,
    Jet,
    conjugate_scalar,
    jet_partial,
    jet_product,
    jet_reciprocal,
    rational_sqrt,
)

from oracles import jet_to_poly, poly_mul, poly_truncate

fractions_st = st.fractions(min_value=-12, max_value=12, max_denominator=7)
gaussian_st = st.builds(GaussianRational, fractions_st, fractions_st)


# -- GaussianRational ------------------------------------------------------

def test_gaussian_basics():
    i = I_GAUSS
    assert i * i == -1
    assert (GaussianRational(1, 1) * GaussianRational(1, -1)) == 2
    assert GaussianRational(1, 1) / GaussianRational(1, 1) == 1
    assert 1 / GaussianRational(1, 1) == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    assert GaussianRational(3, 4).norm_sq() == 25
    assert GaussianRational(3, 4).conjugate() == GaussianRational(3, -4)
    assert GaussianRational(2, -5) ** 0 == 1


@given(gaussian_st, gaussian_st, gaussian_st)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    if a != 0:
        assert (b / a) * a == b


@given(gaussian_st, gaussian_st)
def test_gaussian_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@given(gaussian_st)
def test_gaussian_inverse_via_power(a):
    if a != 0:
        assert a ** -1 * a == 1
        assert a ** -3 * a ** 3 == 1


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-1) is None
    assert rational_sqrt(0) == 0


# -- Jet arithmetic --------------------------------------------------------

def x_(num_vars=2, order=4):
    return Jet.variable(0, num_vars, order)


def y_(num_vars=2, order=4):
    return Jet.variable(1, num_vars, order)


def test_jet_product_difference_of_squares():
    x = Jet.variable(0, 1, 2)
    assert (1 + x) * (1 - x) == 1 - x * x


def test_jet_product_unit():
    x, y = x_(), y_()
    a = 3 + x * y - 2 * y
    one = Jet.constant(1, 2, 4)
    assert jet_product(a, one) == a


def test_jet_product_worked_example():
    x, y = x_(2, 2), y_(2, 2)
    prod = jet_product(1 + x + y, 1 + x)
    expected = Jet(2, 2, {
        (0, 0): 1, (1, 0): 2, (0, 1): 1, (2, 0): 1, (1, 1): 1,
    })
    assert prod == expected


@given(st.integers(min_value=0, max_value=3), st.data())
def test_jet_product_matches_polynomial_oracle(order, data):
    def coeffs():
        idx_st = st.tuples(st.integers(0, order), st.integers(0, order))
        return data.draw(st.dictionaries(idx_st, fractions_st, max_size=5))

    a = Jet(2, order, coeffs())
    b = Jet(2, order, coeffs())
    got = jet_to_poly(a * b)
    want = poly_truncate(poly_mul(jet_to_poly(a), jet_to_poly(b)), order)
    assert got == want


def test_jet_reciprocal_trivial():
    one = Jet.constant(1, 2, 3)
    assert jet_reciprocal(one) == one


def test_jet_reciprocal_geometric_series():
    x = Jet.variable(0, 1, 2)
    assert jet_reciprocal(1 + x) == 1 - x + x * x


def test_jet_reciprocal_round_trip():
    x, y = x_(2, 2), y_(2, 2)
    a = 2 + x + y * y
    assert jet_product(a, jet_reciprocal(a)) == 1
    # and with an imaginary constant term
    b = Jet.constant(GaussianRational(0, 2), 2, 2) + x
    assert jet_product(b, jet_reciprocal(b)) == 1


def test_jet_reciprocal_rejects_zero_constant():
    x = Jet.variable(0, 1, 3)
    with pytest.raises(ZeroDivisionError):
        jet_reciprocal(x)


def test_jet_partial_basics():
    x, y = x_(), y_()
    f = x * x * y
    assert jet_partial(f, 0) == 2 * x.truncate(3) * y.truncate(3)
    assert jet_partial(Jet.constant(5, 2, 4), 0).is_zero()


def test_jet_partial_tracks_effective_order():
    f = Jet.variable(0, 1, 3)
    assert f.partial(0).order == 2
    with pytest.raises(ValueError):
        Jet.constant(1, 1, 0).partial(0)


jet_st = st.builds(
    lambda d: Jet(2, 3, d),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3)), fractions_st, max_size=6
    ),
)


@given(jet_st, jet_st)
def test_jet_leibniz(a, b):
    lhs = (a * b).partial(0)
    rhs = a.partial(0) * b.truncate(2) + a.truncate(2) * b.partial(0)
    assert lhs == rhs


@given(jet_st)
def test_jet_mixed_partials_commute(a):
    if a.order < 2:
        return
    assert a.partial(0).partial(1) == a.partial(1).partial(0)


def test_jet_sqrt_exact_round_trip():
    x, y = x_(2, 3), y_(2, 3)
    a = Fraction(9, 4) + x + x * y
    r = a.sqrt()
    assert r * r == a
    assert r.value() == Fraction(3, 2)


def test_jet_exp_exact_for_nilpotent_part():
    x = Jet.variable(0, 1, 3)
    e = x.exp()
    assert e.coefficient((0,)) == 1
    assert e.coefficient((1,)) == 1
    assert e.coefficient((2,)) == Fraction(1, 2)
    assert e.coefficient((3,)) == Fraction(1, 6)


def test_jet_exp_float_constant():
    x = Jet.variable(0, 1, 2)
    e = (1 + x).exp()
    assert math.isclose(e.coefficient((0,)), math.e, rel_tol=1e-12)
    assert math.isclose(e.coefficient((1,)), math.e, rel_tol=1e-12)


def test_jet_evaluate():
    x, y = x_(2, 3), y_(2, 3)
    f = 1 + 2 * x + x * y * y
    assert f.evaluate([Fraction(1, 2), 3]) == 1 + 1 + Fraction(9, 2)


def test_jet_conjugate():
    x = Jet.variable(0, 1, 2)
    f = Jet.constant(I_GAUSS, 1, 2) + x * GaussianRational(2, -3)
    g = conjugate_scalar(f)
    assert g.value() == -I_GAUSS
    assert g.coefficient((1,)) == GaussianRational(2, 3)


@settings(max_examples=40)
@given(jet_st)
def test_jet_reciprocal_random_round_trip(a):
    a = a + 3  # force nonzero constant term
    assert a * a.reciprocal() == 1
