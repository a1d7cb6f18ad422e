"""Hilbert-Poincare series of weighted graded quotients and multiplicities.

The series of ``B/I`` is read off the initial ideal of ``I``: the numerator
``N(t)`` over ``prod(1 - t^w_i)`` comes from the usual pivot recursion on a
monomial ideal.  For an ideal generated by a homogeneous system of
parameters ``f_1..f_d`` the multiplicity is
``deg f_1 * ... * deg f_d * lim_{t->1} (1 - t)^d P(R, t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .field_poly import Polynomial, PolynomialError, Ring, weighted_degree
from .groebner import Ideal, power_generators
from .monomial import minimalize


class NotHsopError(ValueError):
    pass


# --------------------------------------------------- integer polynomials in t

def _padd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _pmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a: list[int], k: int) -> list[int]:
    return [0] * k + a if a else []


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _one_minus_t_power(k: int) -> list[int]:
    out = [0] * (k + 1)
    out[0] += 1
    out[k] -= 1
    return _trim(out)


def _divide_one_minus_t(a: list[int]) -> list[int] | None:
    """``a / (1 - t)`` if exact, else ``None``."""
    if sum(a) != 0:
        return None
    out = []
    acc = 0
    for c in a[:-1]:
        acc += c
        out.append(acc)
    return _trim(out)


# ------------------------------------------------------- monomial numerators

def _numerator(gens: tuple, weights: tuple) -> list[int]:
    """Numerator of the Hilbert series of ``k[x]/(gens)`` over ``prod(1 - t^w)``."""
    gens = minimalize(gens)
    if not gens:
        return [1]
    n = len(weights)
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    if all(c <= 1 for c in counts):
        out = [1]
        for g in gens:
            out = _pmul(out, _one_minus_t_power(sum(w * e for w, e in zip(weights, g))))
        return out
    var = max(range(n), key=lambda i: (counts[i], -i))
    e = min(g[var] for g in gens if g[var])
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = gens + (pivot,)
    colon = tuple(tuple(max(x - y, 0) for x, y in zip(g, pivot)) for g in gens)
    return _padd(_numerator(plus, weights),
                 _shift(_numerator(colon, weights), e * weights[var]))


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / prod(1 - t^w for w in denom_weights)``."""

    numerator: tuple[int, ...]
    denom_weights: tuple[int, ...]

    @property
    def pole_order(self) -> int:
        """Order of the pole at ``t = 1``; ``-1`` for the zero ring."""
        num = list(self.numerator)
        if not num:
            return -1
        k = 0
        while True:
            q = _divide_one_minus_t(num)
            if q is None:
                break
            num = q
            k += 1
        return len(self.denom_weights) - k

    def leading_constant(self) -> Fraction:
        """``lim_{t->1} (1 - t)^d P(t)`` with ``d`` the pole order."""
        num = list(self.numerator)
        if not num:
            return Fraction(0)
        while True:
            q = _divide_one_minus_t(num)
            if q is None:
                break
            num = q
        return Fraction(sum(num), math.prod(self.denom_weights))

    def coefficients(self, nmax: int) -> list[int]:
        """Power series coefficients of degrees ``0..nmax``."""
        out = [0] * (nmax + 1)
        for i, c in enumerate(self.numerator[:nmax + 1]):
            out[i] = c
        for w in self.denom_weights:
            for k in range(w, nmax + 1):
                out[k] += out[k - w]
        return out

    def is_polynomial(self) -> bool:
        return self.pole_order <= 0

    def value_at_one(self) -> Fraction:
        if self.pole_order > 0:
            raise ValueError("series has a pole at t = 1")
        return self.leading_constant() if self.pole_order == 0 else Fraction(0)

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denom_weights": list(self.denom_weights)}

    @classmethod
    def from_json(cls, data: dict) -> "HilbertSeries":
        return cls(tuple(data["numerator"]), tuple(data["denom_weights"]))


def initial_ideal(I: Ideal) -> tuple:
    return minimalize(I.groebner().leading_monomials)


def hilbert_series(R: Ring, I: Ideal | None = None) -> HilbertSeries:
    """Series of ``R`` (or of ``R/I`` when ``I`` is given)."""
    ideal = I if I is not None else Ideal(R, [])
    lead = initial_ideal(ideal)
    return HilbertSeries(tuple(_numerator(lead, R.weights)), R.weights)


def standard_monomial_counts(R: Ring, nmax: int, I: Ideal | None = None) -> list[int]:
    """Per-degree counts of monomials outside the initial ideal, by enumeration."""
    ideal = I if I is not None else Ideal(R, [])
    lead = initial_ideal(ideal)
    counts = [0] * (nmax + 1)
    for exp in _monomials_up_to(R.weights, nmax):
        if not any(all(g <= e for g, e in zip(m, exp)) for m in lead):
            counts[sum(w * e for w, e in zip(R.weights, exp))] += 1
    return counts


def _monomials_up_to(weights, nmax):
    def rec(i, budget, prefix):
        if i == len(weights):
            yield tuple(prefix)
            return
        w = weights[i]
        for e in range(budget // w + 1):
            prefix.append(e)
            yield from rec(i + 1, budget - e * w, prefix)
            prefix.pop()
    yield from rec(0, nmax, [])


def krull_dimension(R: Ring) -> int:
    return hilbert_series(R).pole_order


def multiplicity_constant(R: Ring) -> Fraction:
    return hilbert_series(R).leading_constant()


def quotient_length(I: Ideal, R: Ring | None = None):
    """Length of ``R/I`` as an integer, or ``math.inf``."""
    R = R or I.ring
    hs = hilbert_series(R, I)
    if hs.pole_order > 0:
        return math.inf
    v = hs.value_at_one()
    assert v.denominator == 1
    return int(v)


def _gens_of(gens) -> list[Polynomial]:
    return list(gens.gens) if isinstance(gens, Ideal) else list(gens)


def is_hsop(gens, R: Ring) -> bool:
    gens = _gens_of(gens)
    for g in gens:
        if g.is_zero():
            raise PolynomialError("zero generator")
        if weighted_degree(g) is None:
            raise PolynomialError(f"generator {g} is not homogeneous")
    if any(weighted_degree(g) == 0 for g in gens):
        return False
    if len(gens) != krull_dimension(R):
        return False
    return hilbert_series(R, Ideal(R, gens)).pole_order == 0


@dataclass(frozen=True)
class MultiplicityReport:
    ideal_degrees: tuple[int, ...]
    ring_constant: Fraction
    multiplicity: Fraction

    def to_json(self) -> dict:
        return {"ideal_degrees": list(self.ideal_degrees),
                "ring_constant": [self.ring_constant.numerator, self.ring_constant.denominator],
                "multiplicity": [self.multiplicity.numerator, self.multiplicity.denominator]}


def multiplicity_hsop(J: Ideal, R: Ring | None = None) -> MultiplicityReport:
    """Multiplicity of an ideal generated by a homogeneous system of parameters."""
    R = R or J.ring
    if not is_hsop(J.gens, R):
        raise NotHsopError(f"{J} is not a homogeneous system of parameters of {R}")
    degs = tuple(sorted(weighted_degree(g) for g in J.gens))
    c = multiplicity_constant(R)
    return MultiplicityReport(degs, c, math.prod(degs) * c)


@dataclass(frozen=True)
class SamuelReport:
    """Hilbert-Samuel estimate of ``e(J)``: the ``d``-th difference of ``n -> len(R/J^n)``."""

    value: Fraction
    stabilized: bool
    lengths: dict = field(default_factory=dict)
    differences: tuple = ()
    nmax: int = 0


def hilbert_samuel_oracle(J: Ideal, R: Ring | None = None, nmax: int = 6) -> SamuelReport:
    R = R or J.ring
    if not is_hsop(J.gens, R):
        raise NotHsopError(f"{J} is not a homogeneous system of parameters of {R}")
    d = krull_dimension(R)
    if nmax < d + 2:
        raise ValueError(f"nmax must be at least d + 2 = {d + 2}")
    lengths = {}
    for n in range(max(nmax - d - 1, 0), nmax + 1):
        lengths[n] = quotient_length(Ideal(R, power_generators(J.gens, n, R)), R)
    diffs = []
    for top in (nmax - 1, nmax):
        diffs.append(sum((-1) ** k * math.comb(d, k) * lengths[top - k] for k in range(d + 1)))
    return SamuelReport(Fraction(diffs[-1]), diffs[0] == diffs[1], lengths, tuple(diffs), nmax)


def samuel_lengths(J: Ideal, ns: Sequence[int]) -> dict:
    R = J.ring
    return {n: quotient_length(Ideal(R, power_generators(J.gens, n, R)), R) for n in ns}
