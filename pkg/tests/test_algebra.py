"""Laurent polynomials, rational functions, poles at T2 = 1 and encodings."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from knottheta.algebra import (LaurentPoly1, LaurentPoly2, NonExactDivision, PoleAtOne,
                               RatFunc1, T, T1, T2, apply_symmetry, euclid_gcd,
                               exact_divide_by_pole, from_json, parse_laurent1, parse_laurent2,
                               substitute_T, to_json, to_text)

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
int_coeffs = st.integers(-5, 5)
poly1 = st.dictionaries(st.integers(-4, 4), coeffs, max_size=5).map(LaurentPoly1)
int_poly1 = st.dictionaries(st.integers(-3, 3), int_coeffs, max_size=4).map(LaurentPoly1)
nonzero_poly1 = int_poly1.filter(lambda p: not p.is_zero())
poly2 = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), coeffs,
                        max_size=6).map(LaurentPoly2)
ratfunc = st.tuples(int_poly1, nonzero_poly1).map(lambda nd: RatFunc1(*nd))
points = st.fractions(min_value=Fraction(1, 7), max_value=7, max_denominator=9).filter(
    lambda x: x != 1)

t = sympy.Symbol("t")


def to_sympy(p: LaurentPoly1):
    return sum((sympy.Rational(c.numerator, c.denominator) * t ** n
                for n, c in p.terms().items()), sympy.Integer(0))


# ---------------------------------------------------------------------------
# one variable


def test_laurent1_basic_values():
    p = T() ** -1 - 1 + T()
    assert p.terms() == {-1: 1, 0: -1, 1: 1}
    assert (p.low_degree(), p.degree(), p.span()) == (-1, 1, 2)
    assert p(Fraction(2)) == Fraction(3, 2)
    assert p.inverse_variable() == p
    assert LaurentPoly1().is_zero() and not LaurentPoly1()


@given(poly1, poly1, poly1)
def test_laurent1_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(poly1, nonzero_poly1)
def test_laurent1_exact_div_inverts_multiplication(a, b):
    assert (a * b).exact_div(b) == a


def test_laurent1_exact_div_refuses_remainder():
    with pytest.raises(NonExactDivision):
        (T() + 1).exact_div(T() - 1)


@given(poly1, points)
def test_laurent1_evaluation_is_a_homomorphism(a, x):
    assert (a * a + 3 * a)(x) == a(x) ** 2 + 3 * a(x)


# ---------------------------------------------------------------------------
# rational functions


@given(ratfunc, ratfunc)
def test_ratfunc_field_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a
        assert b * b.inverse() == 1


@given(int_poly1, nonzero_poly1, nonzero_poly1)
def test_ratfunc_reduces_common_factors(n, d, f):
    assert RatFunc1(n * f, d * f) == RatFunc1(n, d)


@settings(max_examples=60)
@given(int_poly1, nonzero_poly1)
def test_ratfunc_matches_sympy_cancel(n, d):
    r = RatFunc1(n, d)
    ours = sympy.cancel(to_sympy(r.num) / to_sympy(r.den))
    ref = sympy.cancel(to_sympy(n) / to_sympy(d))
    assert sympy.simplify(ours - ref) == 0


def test_ratfunc_canonical_form_of_trefoil_entry():
    r = RatFunc1(T() - T() ** 2, T() ** 2 - T() + 1)
    assert r.is_polynomial() is False
    assert r.den == T() ** 2 - T() + 1
    assert r(Fraction(2)) == Fraction(-2, 3)
    with pytest.raises(ZeroDivisionError):
        RatFunc1(1, 0)


def test_ratfunc_polynomial_view():
    r = RatFunc1(T() ** 2 - 1, T() - 1)
    assert r.is_polynomial() and r.to_laurent() == T() + 1


@settings(max_examples=60)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5),
       st.lists(st.integers(-6, 6), min_size=1, max_size=5),
       st.lists(st.integers(-6, 6), min_size=1, max_size=3))
def test_euclid_gcd_agrees_with_ratfunc_reduction(a, b, f):
    pa = LaurentPoly1.from_coeffs(0, a) * LaurentPoly1.from_coeffs(0, f)
    pb = LaurentPoly1.from_coeffs(0, b) * LaurentPoly1.from_coeffs(0, f)
    if pa.is_zero() or pb.is_zero():
        return
    dense = lambda p: [p.coefficient(k) for k in range(0, p.degree() + 1)]
    g = LaurentPoly1.from_coeffs(0, euclid_gcd(dense(pa), dense(pb)))
    assert pa.exact_div(g) * g == pa and pb.exact_div(g) * g == pb
    # the reduced fraction has the gcd cancelled up to powers of T
    r = RatFunc1(pa, pb)
    assert r.num * pb == r.den * pa
    assert r.den.span() <= pb.span() - g.span()
    sg = sympy.gcd(to_sympy(pa), to_sympy(pb))
    assert sympy.degree(sg, t) == g.degree()


def test_euclid_gcd_small_cases():
    assert euclid_gcd([-1, 0, 1], [1, 1]) == [1, 1]
    assert euclid_gcd([1, 1], [2]) == [1]
    assert euclid_gcd([0], [0]) == []


# ---------------------------------------------------------------------------
# two variables and poles


@given(poly2, poly2, poly2)
def test_laurent2_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - b == -(b - a)


@given(poly2)
def test_divide_T2_minus_one_inverts_multiplication(a):
    assert (a * (T2() - 1)).divide_T2_minus_one() == a


def test_divide_T2_minus_one_refuses_remainder():
    with pytest.raises(NonExactDivision):
        (T1() + T2()).divide_T2_minus_one()


def test_pole_at_one_reduces_and_evaluates():
    p = PoleAtOne((T2() - 1) * T1(), 2)
    assert p.pole_order == 1 and p.num == T1()
    assert p(3, 2) == 3
    with pytest.raises(ZeroDivisionError):
        p(3, 1)
    assert exact_divide_by_pole(PoleAtOne(T2() ** 2 - 1, 1)) == T2() + 1
    with pytest.raises(NonExactDivision):
        exact_divide_by_pole(PoleAtOne(T2(), 1))


@given(poly2, poly2, points, points)
def test_pole_arithmetic_matches_evaluation(a, b, x, y):
    p, q = PoleAtOne(a, 1), PoleAtOne(b, 2)
    assert (p + q)(x, y) == p(x, y) + q(x, y)
    assert (p * q)(x, y) == p(x, y) * q(x, y)


def test_substitutions():
    d = T() ** -1 - 1 + T()
    assert substitute_T(d, "T1") == T1() ** -1 - 1 + T1()
    assert substitute_T(d, "T2") == T2() ** -1 - 1 + T2()
    assert substitute_T(d, "T1T2") == (T1() * T2()) ** -1 - 1 + T1() * T2()
    assert substitute_T(T() ** 2, "Tinv") == T() ** -2


@given(poly2)
def test_hexagonal_reflections_are_involutions(p):
    for s in ("refl_h", "refl_30"):
        assert apply_symmetry(apply_symmetry(p, s), s) == p


def test_reflection_acts_as_variable_substitution():
    p = LaurentPoly2({(2, 1): 3, (-1, 2): -1})
    x, y = Fraction(3, 2), Fraction(5, 7)
    assert apply_symmetry(p, "refl_h")(x, y) == p(x, 1 / (x * y))
    assert apply_symmetry(p, "refl_30")(x, y) == p(x * y, 1 / y)


# ---------------------------------------------------------------------------
# encodings


def test_text_format_examples():
    assert to_text(T() ** -1 - 1 + T()) == "T^-1 - 1 + T"
    assert to_text(LaurentPoly1()) == "0"
    p = LaurentPoly2({(0, 0): 2, (1, 0): 1, (1, 1): -1, (-1, -1): Fraction(1, 2)})
    assert to_text(p) == "1/2 T1^-1 T2^-1 + 2 + T1 - T1 T2"


@given(poly1)
def test_text_round_trip_one_variable(p):
    assert parse_laurent1(to_text(p)) == p


@given(poly2)
def test_text_round_trip_two_variables(p):
    assert parse_laurent2(to_text(p)) == p


@given(poly2)
def test_json_round_trip(p):
    assert from_json(to_json(p)) == p


@given(poly1.filter(lambda p: not p.is_zero()))
def test_json_round_trip_one_variable(p):
    assert from_json(to_json(p)) == p


@pytest.mark.parametrize("bad", ["T1 T1", "2 3", "T^", "x + 1", "+"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_laurent2(bad)
