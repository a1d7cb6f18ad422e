"""Buchberger engine over F_p and Q.

Ideals of a presented ring ``B/I`` are handled in the ambient polynomial
ring ``B``: the ring relations are adjoined to every generating set before a
basis is computed.  Pairs are pruned with the Gebauer-Moeller criteria and
selected by the normal strategy (smallest lcm first).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from functools import reduce as _fold

from .field_poly import Field, Polynomial, PolynomialError, Ring, Variable, weighted_degree

DEFAULT_STEP_LIMIT = 10**6


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds its reduction-step budget."""


_step_limit = DEFAULT_STEP_LIMIT


def set_step_limit(limit: int) -> None:
    global _step_limit
    if limit < 1:
        raise ValueError("step limit must be positive")
    _step_limit = limit


def get_step_limit() -> int:
    return _step_limit


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit):
        self.limit = limit
        self.left = limit

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise ResourceLimitError(f"Groebner step limit of {self.limit} reductions exceeded")


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _reduce(terms: dict, reducers, ring: Ring, budget: _Budget) -> dict:
    """Full reduction of ``terms`` by monic ``reducers`` [(lead, terms), ...]."""
    if not terms or not reducers:
        return dict(terms)
    p = ring.char
    key = ring.key
    acc = dict(terms)
    heap = [(_neg(key(e)), e) for e in acc]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    rem = {}
    while heap:
        _, e = pop(heap)
        c = acc.pop(e, None)
        if c is None:
            continue
        for lm, g in reducers:
            if _divides(lm, e):
                budget.spend()
                shift = tuple(x - y for x, y in zip(e, lm))
                for ge, gc in g.items():
                    if ge == lm:
                        continue
                    ne = tuple(x + y for x, y in zip(ge, shift))
                    d = c * gc
                    v = acc.get(ne)
                    if v is None:
                        acc[ne] = (-d) % p if p else -d
                        push(heap, (_neg(key(ne)), ne))
                    else:
                        v = (v - d) % p if p else v - d
                        if v:
                            acc[ne] = v
                        else:
                            del acc[ne]
                break
        else:
            rem[e] = c
    return rem


def _neg(k):
    return tuple(-x for x in k)


def _lead(terms: dict, ring: Ring):
    return max(terms, key=ring.key)


def _monic(terms: dict, lm, ring: Ring) -> dict:
    c = terms[lm]
    if c == 1:
        return terms
    inv = ring.field.inv(c)
    p = ring.char
    if p:
        return {e: v * inv % p for e, v in terms.items()}
    return {e: v * inv for e, v in terms.items()}


def _spoly(f, g, ring: Ring) -> dict:
    (lf, tf), (lg, tg) = f, g
    l = _lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(l, lf))
    sg = tuple(x - y for x, y in zip(l, lg))
    p = ring.char
    out = {}
    for e, c in tf.items():
        if e != lf:
            out[tuple(x + y for x, y in zip(e, sf))] = c
    for e, c in tg.items():
        if e == lg:
            continue
        ne = tuple(x + y for x, y in zip(e, sg))
        v = out.get(ne, 0) - c
        if p:
            v %= p
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return out


def _buchberger(polys: list[dict], ring: Ring, budget: _Budget) -> list[tuple]:
    key = ring.key
    G: list[tuple] = []       # all basis elements ever added, (lead, terms)
    active: list[int] = []    # indices of the current basis
    pairs: list[tuple] = []   # (key(lcm), i, j, lcm)

    def update(h: int):
        nonlocal active, pairs
        lh = G[h][0]
        cand = [(g, _lcm(lh, G[g][0])) for g in active]
        kept = []
        while cand:
            g, l = cand.pop(0)
            if _coprime(lh, G[g][0]) or not any(
                    _divides(l2, l) for _, l2 in cand) and not any(
                    _divides(l2, l) for _, l2 in kept):
                kept.append((g, l))
        new_pairs = [(key(l), g, h, l) for g, l in kept if not _coprime(lh, G[g][0])]
        survivors = []
        for item in pairs:
            _, i, j, l = item
            if _divides(lh, l) and _lcm(G[i][0], lh) != l and _lcm(G[j][0], lh) != l:
                continue
            survivors.append(item)
        pairs = survivors + new_pairs
        heapq.heapify(pairs)
        active = [g for g in active if not _divides(lh, G[g][0])] + [h]

    def add(terms):
        reducers = [G[i] for i in active]
        r = _reduce(terms, reducers, ring, budget)
        if not r:
            return
        lm = _lead(r, ring)
        G.append((lm, _monic(r, lm, ring)))
        update(len(G) - 1)

    for f in sorted(polys, key=lambda t: key(_lead(t, ring))):
        add(f)
    while pairs:
        _, i, j, _l = heapq.heappop(pairs)
        add(_spoly(G[i], G[j], ring))

    basis = [G[i] for i in active]
    return _interreduce(basis, ring, budget)


def _interreduce(basis, ring: Ring, budget: _Budget) -> list[tuple]:
    key = ring.key
    basis = sorted(basis, key=lambda g: key(g[0]))
    minimal = []
    for lm, t in basis:
        if not any(_divides(m, lm) for m, _ in minimal):
            minimal.append((lm, t))
    out = []
    for idx, (lm, t) in enumerate(minimal):
        others = [g for k, g in enumerate(minimal) if k != idx]
        tail = {e: c for e, c in t.items() if e != lm}
        r = _reduce(tail, others, ring, budget)
        r[lm] = t[lm]
        out.append((lm, _monic(r, lm, ring)))
    return out


class Ideal:
    """An ideal of a presented ring, given by generators in the ambient ring."""

    def __init__(self, ring: Ring, gens=()):
        self.ring = ring
        seen = []
        known = set()
        for g in gens:
            if isinstance(g, str):
                g = ring(g)
            elif g.ring.signature != ring.signature:
                raise PolynomialError("generator from a different ring")
            else:
                g = Polynomial(ring, g.terms, _trusted=True)
            if g.is_zero() or g in known:
                continue
            known.add(g)
            seen.append(g)
        self.gens: tuple[Polynomial, ...] = tuple(seen)
        self._gb = None

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __str__(self):
        return "(" + ", ".join(map(str, self.gens)) + ")"

    def __len__(self):
        return len(self.gens)

    def groebner(self) -> "GroebnerBasis":
        if self._gb is None:
            self._gb = groebner_basis(self)
        return self._gb

    def __contains__(self, f) -> bool:
        return ideal_member(f, self)

    def degrees(self) -> list[int]:
        out = []
        for g in self.gens:
            d = weighted_degree(g)
            if d is None:
                raise PolynomialError(f"generator {g} is not homogeneous")
            out.append(d)
        return sorted(out)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def power(self, r: int) -> "Ideal":
        """Generators of ``self**r``: all r-fold products of the generators."""
        return Ideal(self.ring, power_generators(self.gens, r, self.ring))


def power_generators(gens, r: int, ring: Ring) -> list[Polynomial]:
    """All products of ``r`` generators (with repetition), deduplicated.

    Built degree by degree; a product is only formed once per multiset.
    """
    if r < 0:
        raise ValueError("negative power")
    gens = list(gens)
    level = [(ring.one(), 0)]
    for _ in range(r):
        nxt = []
        for f, start in level:
            for i in range(start, len(gens)):
                nxt.append((f * gens[i], i))
        level = nxt
    out = []
    seen = set()
    for f, _ in level:
        if f.terms and f not in seen:
            seen.add(f)
            out.append(f)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    basis: tuple[Polynomial, ...]

    @property
    def ring(self) -> Ring:
        return self.ideal.ring

    @property
    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.lead()[0] for g in self.basis]

    def _reducers(self):
        cache = self.__dict__.get("_red")
        if cache is None:
            cache = [(g.lead()[0], g.terms) for g in self.basis]
            object.__setattr__(self, "_red", cache)
        return cache

    def normal_form(self, f: Polynomial, step_limit: int | None = None) -> Polynomial:
        if f.ring.signature != self.ring.signature:
            raise PolynomialError("arity mismatch: polynomial from a different ring")
        budget = _Budget(step_limit or _step_limit)
        return Polynomial(self.ring, _reduce(f.terms, self._reducers(), self.ring, budget),
                          _trusted=True)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f).terms

    def is_unit_ideal(self) -> bool:
        return any(not any(g.lead()[0]) for g in self.basis)


def groebner_basis(I: Ideal, step_limit: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I + relations`` in the ambient ring."""
    ring = I.ring
    budget = _Budget(step_limit or _step_limit)
    polys = [g.terms for g in I.gens] + [r.terms for r in ring.relations]
    amb = ring
    raw = _buchberger(polys, amb, budget)
    basis = tuple(Polynomial(ring, t, _trusted=True) for _, t in raw)
    return GroebnerBasis(I, basis)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    if f.is_zero():
        return True
    return I.groebner().contains(f)


def ideal_contains(A: Ideal, B: Ideal) -> bool:
    """True iff ``B`` is contained in ``A`` (in the quotient ring)."""
    G = A.groebner()
    return all(G.contains(g) for g in B.gens)


def ideal_equal(A: Ideal, B: Ideal) -> bool:
    return ideal_contains(A, B) and ideal_contains(B, A)


# -------------------------------------------------------------- elimination

def _extended_ring(ring: Ring, new_names, new_weights, front: bool) -> tuple[Ring, int]:
    """Ring with extra variables in their own leading (``front``) block."""
    taken = set(ring.names)
    vs = []
    for name, w in zip(new_names, new_weights):
        base = name
        k = 0
        while name in taken:
            k += 1
            name = f"{base}{k}"
        taken.add(name)
        vs.append(Variable(name, w))
    if front:
        variables = tuple(vs) + ring.variables
        blocks = (len(vs), ring.nvars)
    else:
        variables = ring.variables + tuple(vs)
        blocks = (ring.nvars, len(vs))
    return Ring(ring.field, variables, (), blocks), len(vs)


def _embed(f: Polynomial, target: Ring, offset: int, width: int) -> Polynomial:
    pad_l = (0,) * offset
    pad_r = (0,) * (width - offset - f.ring.nvars)
    return Polynomial(target, {pad_l + e + pad_r: c for e, c in f.terms.items()}, _trusted=True)


def eliminate(polys, ring: Ring, nfront: int, step_limit: int | None = None) -> list[dict]:
    """Basis of ``(polys) ∩ k[last variables]`` for a block-ordered ``ring``.

    Returns term maps with the first ``nfront`` exponent slots stripped.
    """
    budget = _Budget(step_limit or _step_limit)
    basis = _buchberger([f.terms for f in polys], ring, budget)
    out = []
    for lm, t in basis:
        if not any(lm[:nfront]):
            out.append({e[nfront:]: c for e, c in t.items()})
    return out


def _intersect_polys(P, Q, amb: Ring) -> list[Polynomial]:
    """Generators of ``(P) ∩ (Q)`` in the polynomial ring ``amb``."""
    ext, _ = _extended_ring(amb, ["t"], [1], front=True)
    n = ext.nvars
    t = ext.monomial((1,) + (0,) * amb.nvars)
    one = ext.one()
    polys = [t * _embed(g, ext, 1, n) for g in P]
    polys += [(one - t) * _embed(g, ext, 1, n) for g in Q]
    return [Polynomial(amb, terms, _trusted=True) for terms in eliminate(polys, ext, 1)]


def intersect(I: Ideal, K: Ideal) -> Ideal:
    """``I ∩ K`` in the presented ring, via ``(t I + (1 - t) K) ∩ B``."""
    ring = I.ring
    rels = list(ring.relations)
    polys = _intersect_polys(list(I.gens) + rels, list(K.gens) + rels, ring.ambient())
    return Ideal(ring, polys)


def _quotient_by_element(I: Ideal, f: Polynomial) -> Ideal:
    ring = I.ring
    amb = ring.ambient()
    f0 = Polynomial(amb, f.terms, _trusted=True)
    inter = _intersect_polys(list(I.gens) + list(ring.relations), [f0], amb)
    return Ideal(ring, [exact_divide(g, f0) for g in inter])


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """Divide ``g`` by ``f`` in the ambient ring; the division must be exact."""
    ring = g.ring.ambient()
    lf = _lead(f.terms, ring)
    cf = f.terms[lf]
    inv = ring.field.inv(cf)
    p = ring.char
    rem = dict(g.terms)
    quo = {}
    budget = _Budget(_step_limit)
    while rem:
        le = _lead(rem, ring)
        if not _divides(lf, le):
            raise PolynomialError("division is not exact")
        budget.spend()
        shift = tuple(x - y for x, y in zip(le, lf))
        c = rem[le] * inv
        if p:
            c %= p
        quo[shift] = c
        for e, v in f.terms.items():
            ne = tuple(x + y for x, y in zip(e, shift))
            w = rem.get(ne, 0) - c * v
            if p:
                w %= p
            if w:
                rem[ne] = w
            else:
                rem.pop(ne, None)
    return Polynomial(g.ring, quo, _trusted=True)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """``I : J = {f : f J ⊆ I}`` in the presented ring, as a reduced generating set."""
    ring = I.ring
    if not J.gens:
        return Ideal(ring, [ring.one()])
    result = None
    for j in J.gens:
        if ideal_member(j, I):
            continue
        part = _quotient_by_element(I, j)
        result = part if result is None else intersect(result, part)
    if result is None:
        return Ideal(ring, [ring.one()])
    return _tidy(result)


def _tidy(I: Ideal) -> Ideal:
    """Reduced basis of ``I`` with elements of the relation ideal dropped."""
    ring = I.ring
    G = I.groebner()
    rel = Ideal(ring, []).groebner() if ring.relations else None
    gens = []
    for g in G.basis:
        if rel is not None and rel.contains(g):
            continue
        gens.append(g)
    return Ideal(ring, gens)


@dataclass(frozen=True)
class RadicalVerdict:
    """Outcome of the bounded search ``a ⊆ √J``.

    ``exponents[i]`` is the least ``m <= maxexp`` with ``g_i**m ∈ J``, or
    ``None`` if the bound was reached first.
    """

    contained: bool
    exponents: tuple
    maxexp: int

    @property
    def bound_hit(self) -> bool:
        return any(m is None for m in self.exponents)

    def __bool__(self):
        return self.contained


def default_maxexp(ring: Ring) -> int:
    return 2 * sum(ring.weights)


def radical_contains(J: Ideal, a: Ideal, maxexp: int | None = None) -> RadicalVerdict:
    if maxexp is None:
        maxexp = default_maxexp(J.ring)
    if maxexp < 1:
        raise ValueError("maxexp must be at least 1")
    G = J.groebner()
    exps = []
    for g in a.gens:
        h = G.normal_form(g)
        m = 1
        while h.terms and m < maxexp:
            h = G.normal_form(h * g)
            m += 1
        exps.append(m if not h.terms else None)
    return RadicalVerdict(all(m is not None for m in exps), tuple(exps), maxexp)


# ------------------------------------------------------------- toric rings

def monomial_map_kernel(images, names=None, char: int = 0,
                        target_weights=None) -> Ideal:
    """Defining ideal of ``k[m_1, ..., m_s]`` for monomials ``m_i`` (exponent tuples).

    The returned ideal lives in ``k[A_1, ..., A_s]`` graded by
    ``deg A_i = deg m_i / g`` where ``g`` is the gcd of all image degrees.
    """
    images = [tuple(int(e) for e in m) for m in images]
    if not images:
        raise ValueError("need at least one image monomial")
    n = len(images[0])
    if any(len(m) != n for m in images):
        raise ValueError("image monomials must share the same arity")
    tw = tuple(target_weights) if target_weights else (1,) * n
    degs = [sum(w * e for w, e in zip(tw, m)) for m in images]
    if any(d <= 0 for d in degs):
        raise ValueError("images must be nonconstant monomials")
    g = _fold(gcd, degs)
    if names is None:
        names = _default_names(len(images))
    field = Field(char)
    target_names = _fresh(["x", "y", "z", "w", "u", "v"], n, set(names))
    elim_vars = tuple(Variable(nm, w) for nm, w in zip(target_names, tw))
    new_vars = tuple(Variable(nm, d) for nm, d in zip(names, degs))
    big = Ring(field, elim_vars + new_vars, (), (n, len(images)))
    polys = []
    for k, m in enumerate(images):
        a = tuple(0 for _ in range(n)) + tuple(1 if j == k else 0 for j in range(len(images)))
        mono = tuple(m) + (0,) * len(images)
        polys.append(Polynomial(big, {a: field(1), mono: field(-1)}, _trusted=False))
    elim = eliminate(polys, big, n)
    out_ring = Ring(field, tuple(Variable(nm, d // g) for nm, d in zip(names, degs)))
    gens = [Polynomial(out_ring, t, _trusted=True) for t in elim]
    return Ideal(out_ring, gens)


def toric_ring(images, names=None, char: int = 0) -> Ring:
    """The semigroup ring ``k[m_1, ..., m_s]`` as a presented ring."""
    K = monomial_map_kernel(images, names, char)
    return K.ring.with_relations(K.gens)


def _default_names(k: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvw"
    if k <= len(letters):
        return list(letters[:k])
    return [f"A{i}" for i in range(1, k + 1)]


def _fresh(pool, n, taken):
    out = []
    for name in pool:
        if len(out) == n:
            break
        if name not in taken:
            out.append(name)
    k = 0
    while len(out) < n:
        k += 1
        name = f"X{k}"
        if name not in taken:
            out.append(name)
    return out
