import itertools
import math
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobmult.casefile import find_cases, load_case
from frobmult.field_poly import Ring
from frobmult.groebner import Ideal, colon_ideal, ideal_equal
from frobmult.hilbert import quotient_length
from frobmult.monomial import (MonomialIdeal, divides, minimalize, monomial_colon,
                               monomial_intersection, power_containment, power_nu,
                               staggered_family, staircase_length, staircase_member,
                               taylor_lcm)
from frobmult.thresholds import frobenius_power, nu

CORPUS = Path(__file__).resolve().parents[1] / "src" / "frobmult" / "corpus"


def test_minimal_generators_form_an_antichain():
    L = MonomialIdeal(2, [(2, 0), (2, 1), (0, 3), (1, 3)])
    assert L.gens == ((0, 3), (2, 0))
    for g, h in itertools.permutations(L.gens, 2):
        assert not divides(g, h)


def test_staircase_member_examples():
    L = MonomialIdeal(2, [(2, 0), (0, 3)])
    assert not staircase_member((1, 2), L)
    assert staircase_member((2, 1), L)
    assert not staircase_member((0, 0), MonomialIdeal(2, []))


def test_power_containment_examples():
    a = [(1, 0), (0, 1)]
    L = MonomialIdeal(2, [(4, 0), (0, 4)])
    assert power_containment(7, L, a)
    assert not power_containment(6, L, a)
    assert power_nu(a, L) == 6
    q = 2
    L = MonomialIdeal(2, [(2 * q, 0), (0, 3 * q)])
    assert not power_containment(8, L, a) and power_containment(9, L, a)
    assert not power_containment(0, MonomialIdeal(2, [(1, 0)]), a)


def test_monomial_colon_examples():
    assert monomial_colon(MonomialIdeal(2, [(2, 1)]), MonomialIdeal(2, [(0, 1)])).gens == ((2, 0),)
    C = monomial_colon(MonomialIdeal(2, [(3, 0), (0, 2)]), MonomialIdeal(2, [(1, 1)]))
    assert C.gens == ((0, 1), (2, 0))
    L = MonomialIdeal(2, [(3, 1), (0, 4)])
    assert monomial_colon(L, MonomialIdeal(2, [(0, 0)])) == L


def test_intersection_is_lcm_closure():
    A = MonomialIdeal(2, [(1, 0)])
    B = MonomialIdeal(2, [(0, 1)])
    assert monomial_intersection(A, B).gens == ((1, 1),)


def test_taylor_examples():
    t = taylor_lcm([(2, 0), (1, 3)], [0, 1])
    assert t.lcm == (2, 3) and t.degree == 5
    fam = staggered_family((2, 2))
    assert fam == [(2, 0), (1, 2)]
    t = taylor_lcm(fam, [0, 1], weights=(3, 5))
    assert t.lcm == (2, 2) and t.degree == 2 * 3 + 2 * 5
    assert taylor_lcm([(2, 0), (1, 3)], [1]).lcm == (1, 3)
    with pytest.raises(ValueError):
        taylor_lcm([(1, 0)], [])


def test_staircase_length_examples():
    assert staircase_length(MonomialIdeal(2, [(2, 0), (0, 3)])) == 6
    assert staircase_length(MonomialIdeal(2, [(1, 0)])) == math.inf
    assert staircase_length(MonomialIdeal(2, [(1, 0), (0, 1)])) == 1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_diagonal_formula(d):
    """nu of (x_1..x_d) into (x_i^(c_i q)) is sum(c_i) q - d."""
    a = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    for cs in itertools.product(range(1, 4), repeat=d):
        for q in (1, 2, 4, 8):
            L = MonomialIdeal(d, [tuple(c * q if i == j else 0 for j in range(d))
                                  for i, c in enumerate(cs)])
            r = sum(cs) * q - d
            assert not power_containment(r, L, a)
            assert power_containment(r + 1, L, a)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_staggered_family_lcm(t):
    fam = staggered_family(t)
    full = taylor_lcm(fam, range(len(t)))
    assert full.lcm == tuple(t)
    for i in range(len(t)):
        prefix = taylor_lcm(fam, range(i + 1))
        assert prefix.lcm == tuple(t[:i + 1]) + (0,) * (len(t) - i - 1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3))
def test_colon_matches_groebner(L_gens, Lp_gens):
    R = Ring.make(0, ["x", "y"])
    L, Lp = MonomialIdeal(2, L_gens), MonomialIdeal(2, Lp_gens)
    expected = Ideal(R, [R.monomial(g) for g in monomial_colon(L, Lp).gens])
    got = colon_ideal(Ideal(R, [R.monomial(g) for g in L.gens]),
                      Ideal(R, [R.monomial(g) for g in Lp.gens]))
    assert ideal_equal(got, expected)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 3)),
                min_size=1, max_size=5))
def test_staircase_length_matches_quotient_length(gens):
    R = Ring.make(0, ["x", "y", "z"])
    L = MonomialIdeal(3, gens)
    assert staircase_length(L) == quotient_length(Ideal(R, [R.monomial(g) for g in L.gens]))


def _monomial_corpus():
    for path in find_cases(CORPUS):
        case = load_case(path)
        R = case.ring(2)
        if case.relations:
            continue
        a, J = case.ideal("a", R), case.ideal("J", R)
        if len(J.gens) < len(case.ideals["J"]):
            continue  # a generator vanishes mod 2
        if all(g.is_monomial() for g in a.gens + J.gens):
            yield pytest.param(path, id=path.stem)


@pytest.mark.parametrize("path", list(_monomial_corpus()))
def test_power_containment_nu_matches_engine(path):
    case = load_case(path)
    R = case.ring(2)
    a, J = case.ideal("a", R), case.ideal("J", R)
    a_exps = [g.lead()[0] for g in a.gens]
    for q in (2, 4):
        L = MonomialIdeal(R.nvars, [g.lead()[0] for g in frobenius_power(J, q).gens])
        assert power_nu(a_exps, L) == nu(a, J, q)


def test_minimalize_random():
    rng = random.Random(1)
    for _ in range(50):
        gens = [(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(6)]
        mins = minimalize(gens)
        for g in gens:
            assert any(divides(m, g) for m in mins)
