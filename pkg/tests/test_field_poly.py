from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobmult.field_poly import (CoefficientError, ExponentOverflowError, Field, ParseError,
                                 PolynomialError, Ring, UnknownVariableError, format_polynomial,
                                 is_homogeneous, parse_polynomial, poly_mul, poly_power,
                                 weighted_degree)


def R(char, names="xy", relations=()):
    return Ring.make(char, list(names), relations)


# ------------------------------------------------------------ fields

@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
def test_prime_field_inverse(p):
    F = Field(p)
    for a in range(1, p):
        assert F(a) * F.inv(F(a)) % p == 1


@pytest.mark.parametrize("bad", [1, 4, 9, -3])
def test_field_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        Field(bad)


def test_rationals_are_exact():
    Q = Field(0)
    assert Q(Fraction(1, 3)) * Q.inv(Q(Fraction(1, 3))) == 1
    assert str(Q) == "Q" and str(Field(5)) == "F_5"


# ------------------------------------------------------------ parsing

def test_parse_spec_example_f5():
    f = parse_polynomial("x^2*y + 3*y^3", R(5))
    assert f.terms == {(2, 1): 1, (0, 3): 3}


def test_parse_zero():
    assert parse_polynomial("0", R(0)).terms == {}


def test_sign_collapse_in_char_two():
    ring = R(2, "abcd")
    f = parse_polynomial("b^2 - a*c", ring)
    assert f.terms == {(0, 2, 0, 0): 1, (1, 0, 1, 0): 1}


def test_unary_minus_and_whitespace():
    ring = R(0)
    assert parse_polynomial("  - x ^ 2 +y", ring) == parse_polynomial("y - x^2", ring)


def test_rational_coefficients_over_q():
    f = parse_polynomial("1/2*x + 3/4", R(0))
    assert f.terms[(1, 0)] == Fraction(1, 2)


def test_fraction_rejected_over_fp():
    with pytest.raises(CoefficientError):
        parse_polynomial("1/2*x", R(2))


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_polynomial("x + z", R(0))


@pytest.mark.parametrize("src", ["x +", "x ^", "*x", "x y", "(x)", "x^-1", "2/0"])
def test_syntax_errors_carry_position(src):
    with pytest.raises(PolynomialError) as info:
        parse_polynomial(src, R(0))
    if isinstance(info.value, ParseError):
        assert info.value.pos >= 0


def test_exponent_overflow_is_reported():
    with pytest.raises(ExponentOverflowError):
        parse_polynomial(f"x^{2**63}", R(0))
    x = R(0).var("x")
    with pytest.raises(ExponentOverflowError):
        poly_power(x**(2**40), 2**30)


# ------------------------------------------------------------ arithmetic

def test_difference_of_squares():
    ring = R(0)
    x, y = ring.gens()
    assert poly_mul(x + y, x - y) == parse_polynomial("x^2 - y^2", ring)


def test_freshmans_dream_p2():
    ring = R(2)
    x, y = ring.gens()
    assert poly_mul(x + y, x + y) == x**2 + y**2
    assert poly_power(x + y, 4) == x**4 + y**4


def test_zero_and_unit_powers():
    ring = R(0)
    x, y = ring.gens()
    f = x + y
    assert (f * ring.zero()).terms == {}
    assert poly_power(f, 0) == ring.one()


def test_binomial_cube_over_q():
    ring = R(0)
    x, y = ring.gens()
    assert poly_power(x + y, 3) == parse_polynomial("x^3 + 3*x^2*y + 3*x*y^2 + y^3", ring)


@pytest.mark.parametrize("src,weights,expected", [
    ("x^2*y", (1, 1), 3),
    ("x", (2, 3), 2),
    ("x + y^2", (1, 1), None),
    ("x^3 + y^2", (2, 3), 6),
])
def test_weighted_degree(src, weights, expected):
    ring = Ring.make(0, list(zip("xy", weights)))
    assert weighted_degree(parse_polynomial(src, ring)) == expected


def test_weighted_degree_of_zero_raises():
    with pytest.raises(PolynomialError):
        weighted_degree(R(0).zero())


def test_relations_must_be_homogeneous():
    with pytest.raises(PolynomialError):
        R(0, "xy", ["x^2 - y"])
    ring = Ring.make(0, [("x", 2), ("y", 1)], ["x - y^2"])
    assert ring.relations


def test_printing_is_canonical():
    ring = R(0)
    f = parse_polynomial("y^3 + x*y - 2*x^3 + 1/3", ring)
    assert format_polynomial(f) == "-2*x^3 + y^3 + x*y + 1/3"


# ------------------------------------------------------------ properties

def poly_strategy(char, names="xy", max_exp=3, max_terms=4):
    coeff = (st.integers(-5, 5) if char == 0 else st.integers(0, char - 1))
    exp = st.tuples(*[st.integers(0, max_exp) for _ in names])
    return st.dictionaries(exp, coeff, max_size=max_terms)


def build(ring, terms):
    return ring.zero() + sum((ring.monomial(e, c) for e, c in terms.items()), ring.zero())


CHARS = st.sampled_from([0, 2, 3, 5])


@settings(max_examples=60, deadline=None)
@given(CHARS, st.data())
def test_ring_axioms(char, data):
    ring = R(char)
    f, g, h = (build(ring, data.draw(poly_strategy(char))) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f + g == g + f
    assert f - f == ring.zero()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 2), st.data())
def test_frobenius_is_additive(p, e, data):
    ring = R(p)
    f = build(ring, data.draw(poly_strategy(p)))
    g = build(ring, data.draw(poly_strategy(p)))
    q = p**e
    assert poly_power(f + g, q) == poly_power(f, q) + poly_power(g, q)


@settings(max_examples=80, deadline=None)
@given(CHARS, st.data())
def test_parse_print_round_trip(char, data):
    ring = R(char)
    f = build(ring, data.draw(poly_strategy(char)))
    assert parse_polynomial(format_polynomial(f), ring) == f


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(1, 4))
def test_homogeneity_preserved(i, j, k, n):
    ring = Ring.make(0, [("x", 2), ("y", 3)])
    x, y = ring.gens()
    f = x**(3 * i) + y**(2 * i)
    g = x**(3 * j + 3 * k) + 2 * y**(2 * j + 2 * k)
    fg = f * g
    assert is_homogeneous(fg)
    assert weighted_degree(fg) == weighted_degree(f) + weighted_degree(g)
    assert weighted_degree(poly_power(f, n)) == n * weighted_degree(f)
