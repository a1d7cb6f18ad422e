"""Frobenius powers, the invariants nu_a^J(q) and F-threshold brackets.

``nu(a, J, q)`` is the largest ``r`` with ``a^r`` not inside ``J^[q]``.  The
predicate ``a^r ⊆ J^[q]`` is monotone in ``r``, so ``nu`` is found by binary
search in a window whose upper end comes from a pigeonhole argument: with
``mu`` generators and ``a^(N+1) ⊆ J``, every product of
``mu*(q-1) + (N+1)*q`` generators lies in ``(a^(N+1))^[q] ⊆ J^[q]``.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .field_poly import Polynomial, Ring, poly_power
from .groebner import GroebnerBasis, Ideal, ResourceLimitError, radical_contains
from .hilbert import hilbert_series

log = logging.getLogger(__name__)


class ThresholdError(ValueError):
    pass


class CharacteristicError(ThresholdError):
    pass


class RadicalError(ThresholdError):
    pass


class ScanCapError(ResourceLimitError):
    pass


class IdentityViolation(AssertionError):
    pass


def _require_char(ring: Ring) -> int:
    if not ring.char:
        raise CharacteristicError("Frobenius powers need positive characteristic")
    return ring.char


def power_exponent(q: int, p: int) -> int:
    """``e`` with ``q == p**e``; raises if ``q`` is not a power of ``p``."""
    if q < 1:
        raise ThresholdError(f"{q} is not a power of {p}")
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise ThresholdError(f"q is not a power of the characteristic {p}")
    return e


def frobenius_power(J: Ideal, q: int) -> Ideal:
    """``J^[q]``, generated by the ``q``-th powers of the generators."""
    p = _require_char(J.ring)
    power_exponent(q, p)
    if q == 1:
        return J
    return Ideal(J.ring, [poly_power(g, q) for g in J.gens])


class PowerOracle:
    """Decides ``a^r ⊆ I`` for a fixed generating set of ``a`` and a basis of ``I``.

    Generator powers are cached as normal forms, so each product of ``r``
    generators costs ``mu - 1`` multiplications and one reduction.
    """

    def __init__(self, gens: Iterable[Polynomial], G: GroebnerBasis):
        self.gens = _prune(list(gens))
        self.G = G
        self._powers = [[G.ring.one()] for _ in self.gens]
        self.checks = 0

    def _pow(self, i: int, e: int) -> Polynomial:
        cache = self._powers[i]
        while len(cache) <= e:
            cache.append(self.G.normal_form(cache[-1] * self.gens[i]))
        return cache[e]

    def witness(self, r: int):
        """Exponent vector of a product of ``r`` generators outside ``I``, or ``None``."""
        self.checks += 1
        if r == 0:
            return None if self.G.is_unit_ideal() else []
        mu = len(self.gens)
        for exps in _compositions(r, mu):
            f = None
            zero = False
            for i, e in enumerate(exps):
                if not e:
                    continue
                h = self._pow(i, e)
                if not h.terms:
                    zero = True
                    break
                f = h if f is None else self.G.normal_form(f * h)
                if not f.terms:
                    zero = True
                    break
            if not zero:
                return exps
        return None

    def contained(self, r: int) -> bool:
        return self.witness(r) is None


def _prune(gens: list[Polynomial]) -> list[Polynomial]:
    """Drop monomial generators that are multiples of other monomial generators.

    A product using a dropped generator is a multiple of the same product
    with its divisor, so containment of all products is unchanged.
    """
    exps = [g.lead()[0] for g in gens if g.is_monomial()]
    keep, seen = [], set()
    for g in gens:
        if g.is_monomial():
            e = g.lead()[0]
            if e in seen or any(m != e and all(x <= y for x, y in zip(m, e)) for m in exps):
                continue
            seen.add(e)
        keep.append(g)
    return keep


def _compositions(r: int, k: int):
    """All ``k``-tuples of nonnegative ints summing to ``r``, balanced ones first.

    Balanced products are the usual non-members, so trying them first makes
    the failing checks short.
    """
    if k == 1:
        yield (r,)
        return
    if k == 2:
        mid = r // 2
        order = sorted(range(r + 1), key=lambda i: (abs(i - mid), i))
        for i in order:
            yield (i, r - i)
        return
    for first in range(r + 1):
        for rest in _compositions(r - first, k - 1):
            yield (first,) + rest


def top_degree(J: Ideal) -> int | None:
    """Largest degree where ``R/J`` is nonzero, or ``None`` if ``R/J`` is infinite."""
    hs = hilbert_series(J.ring, J)
    if hs.pole_order > 0:
        return None
    coeffs = hs.coefficients(len(hs.numerator))
    nonzero = [i for i, c in enumerate(coeffs) if c]
    return nonzero[-1] if nonzero else -1


def check_radical(a: Ideal, J: Ideal, maxexp: int | None = None):
    """Verify ``a ⊆ rad(J)``.

    When ``R/J`` has finite length with top degree ``D``, a generator whose
    terms all have degree at least ``delta >= 1`` has its ``(D // delta + 1)``-th
    power in ``J``, so that exponent makes the search exact.
    """
    if maxexp is None:
        D = top_degree(J)
        if D is not None:
            lows = [min(J.ring.degree_of(e) for e in g.terms) for g in a.gens]
            if all(d >= 1 for d in lows):
                maxexp = max(max(D // d + 1 for d in lows), 1)
    verdict = radical_contains(J, a, maxexp)
    if not verdict:
        hint = " (search bound reached)" if verdict.bound_hit else ""
        raise RadicalError(f"a = {a} is not contained in the radical of J = {J}{hint}")
    return verdict


def least_power_in(a: Ideal, J: Ideal, cap: int | None = None) -> int:
    """Least ``N >= 0`` with ``a^(N+1) ⊆ J``.

    The default scan cap is ``sum(m_i - 1) + 1`` where ``g_i^m_i ∈ J`` are
    the radical witnesses; by pigeonhole ``a`` to that power is inside ``J``.
    """
    verdict = check_radical(a, J)
    bound = sum(m - 1 for m in verdict.exponents) + 1
    if cap is None:
        cap = bound
    oracle = PowerOracle(a.gens, J.groebner())
    for r in range(1, cap + 1):
        if oracle.contained(r):
            return r - 1
    raise ScanCapError(f"no power a^r with r <= {cap} lies in J")


def nu(a: Ideal, J: Ideal, q: int, N: int | None = None) -> int:
    """``max{r : a^r not inside J^[q]}`` (zero when ``a ⊆ J^[q]``)."""
    p = _require_char(J.ring)
    power_exponent(q, p)
    if not a.gens:
        raise ThresholdError("a must be nonzero")
    if N is None:
        N = least_power_in(a, J)
    Jq = frobenius_power(J, q)
    G = Jq.groebner()
    if G.is_unit_ideal():
        raise ThresholdError("J^[q] is the unit ideal")
    oracle = PowerOracle(a.gens, G)
    mu = len(a.gens)
    hi = mu * (q - 1) + (N + 1) * q
    if not oracle.contained(hi):
        raise ThresholdError(f"pigeonhole bound a^{hi} ⊆ J^[{q}] failed")
    lo = 0
    # invariant: a^lo not inside, a^hi inside
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if oracle.contained(mid):
            hi = mid
        else:
            lo = mid
    value = hi - 1
    cert = PowerOracle(a.gens, G)
    if cert.contained(value) or not cert.contained(value + 1):
        raise ThresholdError(f"certificate failed for nu = {value} at q = {q}")
    return value


@dataclass(frozen=True)
class NuRow:
    e: int
    q: int
    nu: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.nu, self.q)

    def to_json(self) -> dict:
        r = self.ratio
        return {"e": self.e, "q": self.q, "nu": self.nu,
                "ratio": [r.numerator, r.denominator]}


@dataclass
class NuTable:
    a: Ideal
    J: Ideal
    rows: list[NuRow] = field(default_factory=list)
    errors: dict = field(default_factory=dict)
    N: int | None = None

    @property
    def p(self) -> int:
        return self.J.ring.char

    def nus(self) -> list[int]:
        return [r.nu for r in self.rows]

    def ratios(self) -> list[Fraction]:
        return [r.ratio for r in self.rows]

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["e", "q", "nu", "ratio_num", "ratio_den"])
        for r in self.rows:
            w.writerow([r.e, r.q, r.nu, r.ratio.numerator, r.ratio.denominator])
        return buf.getvalue()


def nu_table(a: Ideal, J: Ideal, emax: int, emin: int = 1) -> NuTable:
    """Rows ``e = emin..emax``; a resource error in one row is recorded, not raised."""
    if emax < 1:
        raise ValueError("emax must be at least 1")
    p = _require_char(J.ring)
    N = least_power_in(a, J)
    table = NuTable(a, J, N=N)
    for e in range(emin, emax + 1):
        q = p**e
        try:
            table.rows.append(NuRow(e, q, nu(a, J, q, N)))
        except ResourceLimitError as exc:
            log.warning("nu row e=%d failed: %s", e, exc)
            table.errors[e] = str(exc)
    return table


@dataclass(frozen=True)
class ThresholdEstimate:
    table: NuTable
    lower: Fraction
    extrapolated: Fraction
    monotone_flag: bool

    @property
    def label(self) -> str:
        """``"lower-bound"`` when the ratios are nondecreasing, else ``"diagnostic"``."""
        return "lower-bound" if self.monotone_flag else "diagnostic"

    def to_json(self) -> dict:
        return {"lower": [self.lower.numerator, self.lower.denominator],
                "extrapolated": [self.extrapolated.numerator, self.extrapolated.denominator],
                "monotone": self.monotone_flag, "label": self.label,
                "rows": self.table.to_json()}


def threshold_bracket(table: NuTable) -> ThresholdEstimate:
    """Bracket the threshold from a table of ``nu(q)/q``.

    ``extrapolated`` fits ``nu(q) = c*q - beta`` through the last two rows and
    returns ``c``; it is a diagnostic, not a proven limit.
    """
    rows = table.rows
    if not rows:
        raise ValueError("empty table")
    ratios = [r.ratio for r in rows]
    lower = max(ratios)
    if len(rows) >= 2:
        r1, r2 = rows[-2], rows[-1]
        extrapolated = Fraction(r2.nu - r1.nu, r2.q - r1.q)
    else:
        extrapolated = ratios[-1]
    monotone = all(x <= y for x, y in zip(ratios, ratios[1:]))
    return ThresholdEstimate(table, lower, extrapolated, monotone)


@dataclass(frozen=True)
class ClosureVerdict:
    member: bool
    witness: int | None
    emax: int

    def __bool__(self):
        return self.member

    def __str__(self):
        if self.member:
            return f"yes(e={self.witness})"
        return f"no-up-to-bound(emax={self.emax})"


def frobenius_closure_member(x: Polynomial, I: Ideal, emax: int = 4) -> ClosureVerdict:
    """Least ``e <= emax`` with ``x^(p^e) ∈ I^[p^e]``, if any."""
    p = _require_char(I.ring)
    if emax < 0:
        raise ValueError("emax must be nonnegative")
    for e in range(emax + 1):
        q = p**e
        if frobenius_power(I, q).groebner().contains(poly_power(x, q)):
            return ClosureVerdict(True, e, emax)
    return ClosureVerdict(False, None, emax)


@dataclass
class ScalingReport:
    q: int
    qprime: int
    r: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c[0] for c in self.checks.values())


def check_scaling_identities(a: Ideal, J: Ideal, r: int, e: int, eprime: int,
                             I: Ideal | None = None, b: Ideal | None = None,
                             raise_on_failure: bool = True) -> ScalingReport:
    """Finite-level scaling identities and monotonicities of ``nu``.

    * ``nu_{a^r}^J(q) == nu_a^J(q) // r``
    * ``nu_a^{J^[q']}(q) == nu_a^J(q q')``
    * ``nu_a^I(q) <= nu_a^J(q)`` when ``I ⊇ J`` is supplied
    * ``nu_b^J(q) <= nu_a^J(q)`` when ``b ⊆ a`` is supplied
    """
    p = _require_char(J.ring)
    if r < 1 or e < 0 or eprime < 0:
        raise ValueError("need r >= 1 and e, e' >= 0")
    q, qp = p**e, p**eprime
    rep = ScalingReport(q, qp, r)
    base = nu(a, J, q)
    ar = a.power(r)
    lhs = nu(ar, J, q)
    rep.checks["power"] = (lhs == base // r, lhs, base // r)
    lhs = nu(a, frobenius_power(J, qp), q)
    rhs = nu(a, J, q * qp)
    rep.checks["frobenius"] = (lhs == rhs, lhs, rhs)
    if I is not None:
        v = nu(a, I, q)
        rep.checks["larger_ideal"] = (v <= base, v, base)
    if b is not None:
        v = nu(b, J, q)
        rep.checks["smaller_ideal"] = (v <= base, v, base)
    if raise_on_failure and not rep.ok:
        bad = {k: v for k, v in rep.checks.items() if not v[0]}
        raise IdentityViolation(f"identity failed for a={a}, J={J}, q={q}, q'={qp}, r={r}: {bad}")
    return rep
