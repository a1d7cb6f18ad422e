"""Exact checks of the multiplicity inequalities on concrete presentations.

Every verdict is an integer/rational comparison after cross-multiplying;
nothing here uses floating point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .field_poly import Field, Polynomial, Ring, parse_polynomial
from .groebner import Ideal, ideal_contains, power_generators, toric_ring
from .hilbert import (NotHsopError, hilbert_samuel_oracle, is_hsop, krull_dimension,
                      multiplicity_hsop, quotient_length)
from .thresholds import (ThresholdEstimate, check_scaling_identities, least_power_in, nu,
                         nu_table, threshold_bracket)

HOLDS_STRICT = "holds-strict"
HOLDS_EQUAL = "holds-with-equality"
VIOLATION = "VIOLATION"


def _frac(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _verdict(lhs: Fraction, rhs: Fraction) -> str:
    if lhs > rhs:
        return HOLDS_STRICT
    if lhs == rhs:
        return HOLDS_EQUAL
    return VIOLATION


def proportional(degrees_a: Sequence[int], degrees_J: Sequence[int]) -> bool:
    """Whether sorted degree vectors satisfy ``a_1/b_1 = ... = a_d/b_d``."""
    ratios = {Fraction(x, y) for x, y in zip(sorted(degrees_a), sorted(degrees_J))}
    return len(ratios) <= 1


@dataclass
class BoundReport:
    d: int
    e_a: Fraction
    e_J: Fraction
    N: int
    lhs: Fraction
    rhs: Fraction
    verdict: str
    degrees_a: list[int]
    degrees_J: list[int]
    proportional: bool
    case_id: str = ""
    ring: str = ""
    a: str = ""
    J: str = ""
    nu_rows: list = field(default_factory=list)

    @property
    def alarm(self) -> bool:
        """Equality without proportional degrees would contradict the theorem."""
        return self.verdict == VIOLATION or (self.verdict == HOLDS_EQUAL and not self.proportional)

    def to_json(self) -> dict:
        return {"case_id": self.case_id, "ring": self.ring, "a": self.a, "J": self.J,
                "d": self.d, "e_a": _frac(self.e_a), "e_J": _frac(self.e_J), "N": self.N,
                "verdict": self.verdict, "proportional": self.proportional,
                "nu_rows": list(self.nu_rows)}


def verify_main_inequality(R: Ring, a: Ideal, J: Ideal) -> BoundReport:
    """Check ``(d+N)^d e(a) >= d^d e(J)`` where ``N`` is least with ``a^(N+1) ⊆ J``."""
    ma = multiplicity_hsop(a, R)
    mJ = multiplicity_hsop(J, R)
    d = krull_dimension(R)
    N = least_power_in(a, J)
    lhs = Fraction((d + N) ** d) * ma.multiplicity
    rhs = Fraction(d**d) * mJ.multiplicity
    degs_a, degs_J = list(ma.ideal_degrees), list(mJ.ideal_degrees)
    return BoundReport(d, ma.multiplicity, mJ.multiplicity, N, lhs, rhs, _verdict(lhs, rhs),
                       degs_a, degs_J, proportional(degs_a, degs_J),
                       ring=str(R), a=str(a), J=str(J))


@dataclass
class NuBoundReport:
    q: int
    nu: int
    d: int
    e_a: Fraction
    e_J: Fraction
    lhs: Fraction
    rhs: Fraction
    verdict: str

    def to_json(self) -> dict:
        return {"q": self.q, "nu": self.nu, "d": self.d, "e_a": _frac(self.e_a),
                "e_J": _frac(self.e_J), "lhs": _frac(self.lhs), "rhs": _frac(self.rhs),
                "verdict": self.verdict}


def verify_nu_bound(R: Ring, a: Ideal, J: Ideal, e: int, N: int | None = None,
                    multiplicities=None) -> NuBoundReport:
    """Check ``(d + nu(q))^d e(a) >= (q d)^d e(J)`` at ``q = p^e``."""
    if multiplicities is None:
        e_a = multiplicity_hsop(a, R).multiplicity
        e_J = multiplicity_hsop(J, R).multiplicity
    else:
        e_a, e_J = multiplicities
    d = krull_dimension(R)
    q = R.char**e
    v = nu(a, J, q, N)
    lhs = Fraction((d + v) ** d) * e_a
    rhs = Fraction((q * d) ** d) * e_J
    return NuBoundReport(q, v, d, e_a, e_J, lhs, rhs, _verdict(lhs, rhs))


def multiplicity(I: Ideal, R: Ring | None = None, nmax: int | None = None) -> Fraction:
    """``e(I)``: by degrees when ``I`` is an hsop, else by Hilbert-Samuel differences."""
    R = R or I.ring
    if is_hsop(I.gens, R):
        return multiplicity_hsop(I, R).multiplicity
    d = krull_dimension(R)
    return _samuel_general(I, R, nmax or d + 4)


def _samuel_general(I: Ideal, R: Ring, nmax: int) -> Fraction:
    d = krull_dimension(R)
    lengths = {n: quotient_length(Ideal(R, power_generators(I.gens, n, R)), R)
               for n in range(nmax - d - 1, nmax + 1)}
    if math.inf in lengths.values():
        raise NotHsopError(f"{I} is not primary to the maximal ideal")
    diffs = [sum((-1) ** k * math.comb(d, k) * lengths[top - k] for k in range(d + 1))
             for top in (nmax - 1, nmax)]
    if diffs[0] != diffs[1]:
        raise ValueError(f"Hilbert-Samuel differences not stable at n={nmax}: {diffs}")
    return Fraction(diffs[1])


@dataclass
class IntegralReport:
    d: int
    bracket: Fraction
    triggered: bool
    e_a: Fraction
    e_J: Fraction
    consistent: bool
    note: str = ("diagnostic: max nu(q)/q over the computed rows bounds pt_- from above "
                 "only under regularity, so this is never a refutation")

    def to_json(self) -> dict:
        return {"d": self.d, "bracket": _frac(self.bracket), "triggered": self.triggered,
                "e_a": _frac(self.e_a), "e_J": _frac(self.e_J),
                "consistent": self.consistent, "note": self.note}


def check_integral_condition(R: Ring, a: Ideal, J: Ideal, emax: int) -> IntegralReport:
    """If ``max_q nu(q)/q <= d`` over the table, expect ``e(a) >= e(J)``."""
    d = krull_dimension(R)
    table = nu_table(a, J, emax)
    bracket = max(table.ratios())
    e_a = multiplicity(a, R)
    e_J = multiplicity(J, R)
    triggered = bracket <= d
    consistent = (e_a >= e_J) if triggered else True
    return IntegralReport(d, bracket, triggered, e_a, e_J, consistent)


# ------------------------------------------------------- reduction mod p

class BadPrimeError(ValueError):
    pass


@dataclass
class PrimeRow:
    char: int
    d: int | None = None
    e_a: Fraction | None = None
    e_J: Fraction | None = None
    N: int | None = None
    skipped: str | None = None
    nu_rows: list = field(default_factory=list)

    @property
    def invariants(self):
        return (self.d, self.e_a, self.e_J, self.N)

    def to_json(self) -> dict:
        if self.skipped:
            return {"char": self.char, "skipped": self.skipped}
        return {"char": self.char, "d": self.d, "e_a": _frac(self.e_a), "e_J": _frac(self.e_J),
                "N": self.N, "nu_rows": self.nu_rows}


@dataclass
class MultiPrimeReport:
    rows: list[PrimeRow]

    @property
    def agree(self) -> bool:
        vals = {r.invariants for r in self.rows if not r.skipped}
        return len(vals) == 1

    @property
    def skipped(self) -> list[int]:
        return [r.char for r in self.rows if r.skipped]

    def to_json(self) -> dict:
        return {"agree": self.agree, "rows": [r.to_json() for r in self.rows]}


def _check_prime(polys: Sequence[Polynomial], p: int) -> None:
    for f in polys:
        for c in f.terms.values():
            c = Fraction(c)
            if c.denominator % p == 0:
                raise BadPrimeError(f"coefficient {c} of {f} has a denominator divisible by {p}")
            if c.numerator % p == 0:
                raise BadPrimeError(f"coefficient {c} of {f} vanishes mod {p}")


def multi_prime_compare(variables, relations: Sequence[str], a_gens: Sequence[str],
                        J_gens: Sequence[str], primes: Sequence[int],
                        emax: int = 0) -> MultiPrimeReport:
    """Compute ``(d, e(a), e(J), N)`` over Q and each ``F_p`` from one integer presentation."""
    template = Ring.make(0, variables)
    rels_q = [parse_polynomial(s, template) for s in relations]
    a_q = [parse_polynomial(s, template) for s in a_gens]
    J_q = [parse_polynomial(s, template) for s in J_gens]
    rows = []
    for char in [0] + list(primes):
        row = PrimeRow(char)
        if char:
            try:
                Field(char)
                _check_prime(rels_q + a_q + J_q, char)
            except (BadPrimeError, ValueError) as exc:
                row.skipped = str(exc)
                rows.append(row)
                continue
        R = Ring.make(char, variables, relations)
        a = Ideal(R, list(a_gens))
        J = Ideal(R, list(J_gens))
        try:
            row.d = krull_dimension(R)
            row.e_a = multiplicity_hsop(a, R).multiplicity
            row.e_J = multiplicity_hsop(J, R).multiplicity
            row.N = least_power_in(a, J)
        except NotHsopError as exc:
            row.skipped = f"not an hsop over characteristic {char}: {exc}"
            rows.append(row)
            continue
        if char and emax:
            row.nu_rows = nu_table(a, J, emax).to_json()
        rows.append(row)
    return MultiPrimeReport(rows)


# ------------------------------------------------------ Veronese example

VERONESE_IMAGES = [(3, 0), (2, 1), (1, 2), (0, 3)]


def lift_monomial(target: Sequence[int], images: Sequence[Sequence[int]], parts: int):
    """Exponent vector over ``images`` whose product is ``target`` using ``parts`` factors."""
    target = tuple(target)
    n = len(images)

    def rec(i, rest, left, acc):
        if i == n - 1:
            k = left
            if all(k * x == y for x, y in zip(images[i], rest)):
                return acc + [k]
            return None
        for k in range(left, -1, -1):
            nxt = tuple(y - k * x for x, y in zip(images[i], rest))
            if all(v >= 0 for v in nxt):
                found = rec(i + 1, nxt, left - k, acc + [k])
                if found is not None:
                    return found
        return None

    return rec(0, target, parts, [])


def veronese_tau(R: Ring, k: int) -> Ideal:
    """``m_S^k ∩ R`` for the third Veronese ``R`` of ``S = F_p[x, y]``.

    Monomials of ``S`` of degree ``>= k`` that lie in ``R`` are generated by
    those of degree ``3 * ceil(k/3)``; each is written in the ring variables.
    """
    m = max(-(-k // 3), 0)
    if m == 0:
        return Ideal(R, [R.one()])
    gens = []
    for i in range(3 * m + 1):
        exps = lift_monomial((3 * m - i, i), VERONESE_IMAGES, m)
        gens.append(R.monomial(exps))
    return Ideal(R, gens)


@dataclass
class FjnDemoReport:
    t_star: Fraction
    threshold_estimate: ThresholdEstimate
    scan: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"t_star": _frac(self.t_star),
                "threshold": self.threshold_estimate.to_json(),
                "scan": [{"t": _frac(t), "tau_in_J": inside} for t, inside in self.scan]}


def veronese_ring(p: int = 2) -> Ring:
    return toric_ring(VERONESE_IMAGES, ["a", "b", "c", "d"], char=p)


def veronese_fjn_demo(p: int = 2, emax: int = 4, kmax: int = 12) -> FjnDemoReport:
    """F-jumping number of ``J = (x^3, y^3)`` on the third Veronese of ``F_p[x, y]``.

    Uses ``tau(R, J^t) = m_S^(floor(3t) - 1) ∩ R`` for ``t >= 1/3`` and scans the
    jump points ``t = k/3``.
    """
    R = veronese_ring(p)
    J = Ideal(R, ["a", "d"])
    scan = []
    t_star = None
    for k in range(1, kmax + 1):
        t = Fraction(k, 3)
        tau = veronese_tau(R, k - 1)
        inside = ideal_contains(J, tau)
        scan.append((t, inside))
        if inside and t_star is None:
            t_star = t
    if t_star is None:
        raise ValueError(f"tau not inside J for t <= {kmax}/3")
    estimate = threshold_bracket(nu_table(J, J, emax))
    return FjnDemoReport(t_star, estimate, scan)


def samuel_agrees(J: Ideal, nmax: int | None = None) -> tuple[Fraction, Fraction, bool]:
    """``(e via degrees, e via Hilbert-Samuel, stabilized)`` for an hsop ideal."""
    R = J.ring
    d = krull_dimension(R)
    rep = hilbert_samuel_oracle(J, R, nmax or d + 3)
    return multiplicity_hsop(J, R).multiplicity, rep.value, rep.stabilized


# ------------------------------------------- seeded random identity checks

def random_instance(rng: random.Random, p: int):
    """A small ``m``-primary pair ``(a, J)`` in ``F_p[x, y]`` plus ``I ⊇ J`` and ``b ⊆ a``."""
    R = Ring.make(p, ["x", "y"])
    if rng.random() < 0.25:
        i = rng.randint(1, 2)
        a_gens = [f"x^{i} + y^{i}", "x*y"]
    else:
        a_gens = [f"x^{rng.randint(1, 3)}", f"y^{rng.randint(1, 3)}"]
        if rng.random() < 0.5:
            a_gens.append("x*y")
    J_gens = [f"x^{rng.randint(1, 3)}", f"y^{rng.randint(1, 3)}"]
    I_gens = J_gens + [f"x^{rng.randint(1, 2)}*y^{rng.randint(0, 2)}"]
    a = Ideal(R, a_gens)
    return R, a, Ideal(R, J_gens), Ideal(R, I_gens), a * Ideal(R, ["x", "y"])


def random_identity_suite(seed: int, count: int = 50, primes: Sequence[int] = (2, 3)) -> list[dict]:
    """Run the scaling identities on ``count`` seeded random instances.

    Each entry records the instance, the parameters drawn and the per-identity
    results; failures are recorded, not raised.
    """
    rng = random.Random(seed)
    out = []
    for k in range(count):
        p = rng.choice(list(primes))
        R, a, J, I, b = random_instance(rng, p)
        r = rng.randint(2, 3)
        e, eprime = rng.randint(0, 1), rng.randint(0, 1)
        rep = check_scaling_identities(a, J, r, e, eprime, I=I, b=b, raise_on_failure=False)
        out.append({"index": k, "p": p, "a": str(a), "J": str(J), "I": str(I), "r": r,
                    "e": e, "eprime": eprime, "ok": rep.ok,
                    "checks": {name: list(v) for name, v in rep.checks.items()}})
    return out
