from fractions import Fraction
from pathlib import Path

import pytest

from frobmult.bounds import (HOLDS_EQUAL, HOLDS_STRICT, VIOLATION, BoundReport,
                             check_integral_condition, lift_monomial, multi_prime_compare,
                             multiplicity, proportional, random_identity_suite, samuel_agrees,
                             veronese_fjn_demo, veronese_ring, veronese_tau,
                             verify_main_inequality, verify_nu_bound)
from frobmult.casefile import find_cases, load_case
from frobmult.field_poly import Ring
from frobmult.groebner import Ideal, ideal_contains
from frobmult.hilbert import is_hsop

CORPUS = Path(__file__).resolve().parents[1] / "src" / "frobmult" / "corpus"
VERONESE = ["b^2 - a*c", "c^2 - b*d", "b*c - a*d"]


def plane(p=0):
    return Ring.make(p, ["x", "y"])


# ------------------------------------------------------------ main inequality

def test_diagonal_holds_strict():
    R = plane()
    rep = verify_main_inequality(R, Ideal(R, ["x", "y"]), Ideal(R, ["x^2", "y^3"]))
    assert (rep.d, rep.e_a, rep.e_J, rep.N) == (2, 1, 6, 3)
    assert rep.lhs == 25 and rep.rhs == 24
    assert rep.verdict == HOLDS_STRICT and not rep.proportional and not rep.alarm


@pytest.mark.parametrize("gens", [["x", "y"], ["x^2", "y^3"], ["x + y", "x - y"]])
def test_equal_ideals_give_equality(gens):
    R = plane()
    J = Ideal(R, gens)
    rep = verify_main_inequality(R, J, J)
    assert rep.N == 0 and rep.verdict == HOLDS_EQUAL and rep.proportional


def test_veronese_squares_equality_is_proportional():
    R = Ring.make(2, list("abcd"), VERONESE)
    rep = verify_main_inequality(R, Ideal(R, ["a", "d"]), Ideal(R, ["a^2", "d^2"]))
    assert (rep.e_a, rep.e_J, rep.N) == (3, 12, 2)
    assert rep.lhs == rep.rhs == 48
    assert rep.verdict == HOLDS_EQUAL and rep.proportional


def test_alarm_logic():
    base = dict(d=2, e_a=Fraction(1), e_J=Fraction(1), N=0, lhs=Fraction(4), rhs=Fraction(4),
                degrees_a=[1, 1], degrees_J=[1, 2])
    assert BoundReport(verdict=HOLDS_EQUAL, proportional=False, **base).alarm
    assert not BoundReport(verdict=HOLDS_EQUAL, proportional=True, **base).alarm
    assert BoundReport(verdict=VIOLATION, proportional=True, **base).alarm
    assert not BoundReport(verdict=HOLDS_STRICT, proportional=False, **base).alarm


@pytest.mark.parametrize("da,dJ,expected", [
    ([1, 1], [2, 2], True), ([2, 3], [4, 6], True), ([1, 1], [2, 3], False),
    ([3, 2], [6, 4], True),
])
def test_proportional(da, dJ, expected):
    assert proportional(da, dJ) is expected


# ------------------------------------------------------------ per-q bound

def test_nu_bound_examples():
    R = plane(2)
    a, J = Ideal(R, ["x", "y"]), Ideal(R, ["x^2", "y^3"])
    rep = verify_nu_bound(R, a, J, 2)
    assert (rep.q, rep.nu, rep.lhs, rep.rhs) == (4, 18, 400, 384)
    assert rep.verdict == HOLDS_STRICT
    rep = verify_nu_bound(R, a, a, 1)
    assert (rep.nu, rep.lhs, rep.rhs, rep.verdict) == (2, 16, 16, HOLDS_EQUAL)


def test_nu_bound_at_q_one_matches_main_shape():
    R = plane(2)
    a, J = Ideal(R, ["x", "y"]), Ideal(R, ["x^2", "y^3"])
    rep = verify_nu_bound(R, a, J, 0)
    main = verify_main_inequality(R, a, J)
    assert rep.q == 1 and rep.nu == main.N
    assert (rep.lhs, rep.rhs) == (main.lhs, main.rhs)


# ------------------------------------------------------------ integral condition

def test_integral_condition_triggered_and_consistent():
    R = plane(2)
    a = Ideal(R, ["x", "y"])
    rep = check_integral_condition(R, a, a, 3)
    assert rep.triggered and rep.consistent and rep.bracket == Fraction(7, 4)


def test_integral_condition_vacuous():
    R = plane(2)
    rep = check_integral_condition(R, Ideal(R, ["x", "y"]), Ideal(R, ["x^2", "y^3"]), 3)
    assert not rep.triggered and rep.consistent and rep.bracket == Fraction(19, 4)


def test_multiplicity_of_non_parameter_ideal():
    R = plane()
    I = Ideal(R, ["x^2", "x*y", "y^2"])
    assert not is_hsop(I.gens, R)
    assert multiplicity(I) == 4


# ------------------------------------------------------------ multiprime

def test_multiprime_diagonal():
    rep = multi_prime_compare(["x", "y"], [], ["x", "y"], ["x^2", "y^3"], [2, 3, 5])
    assert rep.agree and not rep.skipped
    assert {r.invariants for r in rep.rows} == {(2, 1, 6, 3)}


def test_multiprime_veronese():
    rep = multi_prime_compare(list("abcd"), VERONESE, ["a", "d"], ["a^2", "d^2"], [2, 3])
    assert rep.agree and {r.invariants for r in rep.rows} == {(2, 3, 12, 2)}


def test_multiprime_cusp():
    rep = multi_prime_compare([("a", 2), ("b", 3)], ["b^2 - a^3"], ["a"], ["a"], [5, 7])
    assert rep.agree and {r.invariants for r in rep.rows} == {(1, 2, 2, 0)}


def test_multiprime_skips_bad_prime():
    rep = multi_prime_compare(["x", "y"], [], ["x", "y"], ["x^2", "2*y^3"], [2, 3], emax=2)
    assert rep.skipped == [2] and rep.agree
    assert "vanishes mod 2" in rep.rows[1].to_json()["skipped"]
    assert [r["nu"] for r in rep.rows[2].nu_rows] == [13, 43]


# ------------------------------------------------------------ Veronese demo

def test_lift_monomial():
    images = [(3, 0), (2, 1), (1, 2), (0, 3)]
    exps = lift_monomial((3, 3), images, 2)
    assert sum(exps) == 2
    assert tuple(sum(k * v[i] for k, v in zip(exps, images)) for i in range(2)) == (3, 3)
    assert lift_monomial((1, 0), images, 1) is None


def test_veronese_tau_decreases():
    R = veronese_ring(2)
    taus = [veronese_tau(R, k) for k in range(0, 8)]
    for k in range(len(taus) - 1):
        assert ideal_contains(taus[k], taus[k + 1])
    assert ideal_contains(Ideal(R, ["a", "b", "c", "d"]), taus[1])


def test_veronese_demo():
    rep = veronese_fjn_demo(2, emax=4)
    assert rep.t_star == Fraction(5, 3)
    est = rep.threshold_estimate
    assert est.extrapolated == 2
    assert [row.nu for row in est.table.rows] == [2, 6, 14, 30]
    for row in est.table.rows:
        assert abs(row.ratio - 2) <= Fraction(2, row.q)
    first = [t for t, inside in rep.scan if inside][0]
    assert first == rep.t_star
    assert all(inside for t, inside in rep.scan if t >= rep.t_star)


# ------------------------------------------------------------ identities

def test_random_identity_suite():
    rows = random_identity_suite(0, 50)
    assert len(rows) == 50
    assert all(r["ok"] for r in rows)
    assert {r["p"] for r in rows} == {2, 3}
    assert random_identity_suite(0, 5) == rows[:5]


# ------------------------------------------------------------ corpus

def _cases():
    for path in find_cases(CORPUS):
        yield pytest.param(path, id=path.stem)


@pytest.mark.parametrize("path", list(_cases()))
def test_corpus_main_inequality_over_q(path):
    case = load_case(path)
    R = case.ring()
    rep = verify_main_inequality(R, case.ideal("a", R), case.ideal("J", R))
    assert rep.verdict != VIOLATION and not rep.alarm


@pytest.mark.parametrize("path", list(_cases()))
def test_corpus_samuel_agrees(path):
    case = load_case(path)
    R = case.ring()
    for name in ("a", "J"):
        by_degree, by_samuel, stable = samuel_agrees(case.ideal(name, R))
        assert stable and by_degree == by_samuel
