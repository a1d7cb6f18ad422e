"""Monomial-ideal combinatorics used as independent oracles.

Everything here works on bare exponent tuples and never touches the
Groebner engine, so agreement with it is a real cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterable, Sequence

Exp = tuple[int, ...]


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Exp]) -> tuple[Exp, ...]:
    """Minimal generators (an antichain under divisibility), sorted."""
    gens = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), g))
    out: list[Exp] = []
    for g in gens:
        if not any(divides(m, g) for m in out):
            out.append(g)
    return tuple(sorted(out))


@dataclass(frozen=True)
class MonomialIdeal:
    arity: int
    gens: tuple[Exp, ...]

    def __init__(self, arity: int, gens: Iterable[Sequence[int]] = ()):
        gens = [tuple(int(e) for e in g) for g in gens]
        if any(len(g) != arity for g in gens):
            raise ValueError("generator arity mismatch")
        if any(e < 0 for g in gens for e in g):
            raise ValueError("negative exponent")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "gens", minimalize(gens))

    def __contains__(self, m) -> bool:
        return staircase_member(tuple(m), self)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.arity, [tuple(x + y for x, y in zip(a, b))
                                          for a in self.gens for b in other.gens])

    def frobenius(self, q: int) -> "MonomialIdeal":
        return MonomialIdeal(self.arity, [tuple(q * e for e in g) for g in self.gens])


def staircase_member(m: Exp, L: MonomialIdeal) -> bool:
    if len(m) != L.arity:
        raise ValueError("arity mismatch")
    return any(divides(g, m) for g in L.gens)


def power_containment(r: int, L: MonomialIdeal, a_gens: Sequence[Exp]) -> bool:
    """Whether every product of ``r`` of the ``a_gens`` lies in ``L``."""
    if r < 0:
        raise ValueError("negative power")
    n = L.arity
    for combo in combinations_with_replacement(range(len(a_gens)), r):
        m = [0] * n
        for i in combo:
            for k, e in enumerate(a_gens[i]):
                m[k] += e
        if not staircase_member(tuple(m), L):
            return False
    return True


def power_nu(a_gens: Sequence[Exp], L: MonomialIdeal, rmax: int = 10**4) -> int:
    """Largest ``r`` with ``a^r`` not inside ``L``, by a linear scan from ``r = 1``."""
    r = 1
    while not power_containment(r, L, a_gens):
        r += 1
        if r > rmax:
            raise ValueError("no containment found below rmax")
    return r - 1


def monomial_colon(L: MonomialIdeal, Lp: MonomialIdeal) -> MonomialIdeal:
    """``L : L'`` as the intersection of ``L : m'`` over generators ``m'`` of ``L'``."""
    if L.arity != Lp.arity:
        raise ValueError("arity mismatch")
    n = L.arity
    result = MonomialIdeal(n, [(0,) * n])
    for mp in Lp.gens:
        part = MonomialIdeal(n, [tuple(max(g - e, 0) for g, e in zip(gen, mp)) for gen in L.gens])
        result = monomial_intersection(result, part)
    return result


def monomial_intersection(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(A.arity, [tuple(max(x, y) for x, y in zip(a, b))
                                   for a in A.gens for b in B.gens])


@dataclass(frozen=True)
class TaylorData:
    gens: tuple[Exp, ...]
    subset: tuple[int, ...]
    lcm: Exp
    degree: int


def taylor_lcm(gens: Sequence[Exp], subset: Iterable[int], weights=None) -> TaylorData:
    """Generator data of the Taylor complex summand indexed by ``subset``."""
    gens = tuple(tuple(g) for g in gens)
    subset = tuple(sorted(set(subset)))
    if not subset:
        raise ValueError("subset must be nonempty")
    n = len(gens[0])
    weights = tuple(weights) if weights is not None else (1,) * n
    lcm = tuple(max(gens[i][k] for i in subset) for k in range(n))
    return TaylorData(gens, subset, lcm, sum(w * e for w, e in zip(weights, lcm)))


def staggered_family(t: Sequence[int]) -> list[Exp]:
    """``X1^t1, X1^(t1-1) X2^t2, ..., X1^(t1-1)...X_{d-1}^(t_{d-1}-1) Xd^td``."""
    d = len(t)
    out = []
    for i in range(d):
        exp = [0] * d
        for j in range(i):
            exp[j] = t[j] - 1
        exp[i] = t[i]
        out.append(tuple(exp))
    return out


def staircase_length(L: MonomialIdeal):
    """Number of monomials outside ``L``; ``math.inf`` when infinite."""
    n = L.arity
    bounds = []
    for k in range(n):
        pure = [g[k] for g in L.gens if all(e == 0 for j, e in enumerate(g) if j != k) and g[k] > 0]
        if not pure:
            if any(not any(g) for g in L.gens):
                return 0
            return math.inf
        bounds.append(min(pure))
    return sum(1 for m in product(*(range(b) for b in bounds)) if not staircase_member(m, L))
