"""Exact coefficient fields and sparse weighted polynomials.

A polynomial is a map from exponent tuples to nonzero field elements.  Over
``F_p`` coefficients are ints in ``[0, p)``; over ``Q`` they are
``fractions.Fraction``.  Every ring carries a weighted degree-reverse-lex
order which is used for printing, hashing and Groebner computations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping

EXPONENT_LIMIT = 2**63 - 1

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class PolynomialError(ValueError):
    pass


class ParseError(PolynomialError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownVariableError(PolynomialError):
    pass


class CoefficientError(PolynomialError):
    pass


class ExponentOverflowError(PolynomialError, OverflowError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Field:
    """``Field(p)`` is F_p, ``Field(0)`` is Q."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not is_prime(self.char):
            raise ValueError(f"characteristic {self.char} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.char != 0

    def __call__(self, value):
        if self.char:
            if isinstance(value, Fraction):
                if value.denominator % self.char == 0:
                    raise CoefficientError(f"{value} is not defined in F_{self.char}")
                return value.numerator * pow(value.denominator, -1, self.char) % self.char
            return int(value) % self.char
        return Fraction(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.char:
            return pow(a, -1, self.char)
        return 1 / a

    def __str__(self):
        return f"F_{self.char}" if self.char else "Q"


@dataclass(frozen=True)
class Variable:
    name: str
    degree: int = 1

    def __post_init__(self):
        if not _IDENT.fullmatch(self.name):
            raise ValueError(f"bad variable name {self.name!r}")
        if self.degree < 1:
            raise ValueError(f"variable {self.name} must have positive degree")


@dataclass(frozen=True, eq=False)
class Ring:
    """A presentation ``k[T_1..T_n] / (relations)`` with weights ``deg T_i``.

    Polynomials always live in the ambient polynomial ring; the relations are
    adjoined to every ideal by the Groebner layer.
    """

    field: Field
    variables: tuple[Variable, ...]
    relations: tuple["Polynomial", ...] = ()
    blocks: tuple[int, ...] | None = None
    _keys: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.blocks is not None:
            if sum(self.blocks) != len(names) or any(b < 1 for b in self.blocks):
                raise ValueError("block sizes must be positive and cover all variables")
            object.__setattr__(self, "blocks", tuple(self.blocks))
        rels = []
        for r in self.relations:
            if isinstance(r, str):
                r = parse_polynomial(r, self)
            elif r.ring.signature != self.signature:
                raise PolynomialError("relation from a different ring")
            else:
                r = Polynomial(self, r.terms, _trusted=True)
            if r.is_zero():
                continue
            if weighted_degree(r) is None:
                raise PolynomialError(f"relation {r} is not homogeneous")
            rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def make(cls, char: int, variables, relations=()) -> "Ring":
        """Build a ring from ``"x"``/``("x", 2)`` variable specs and relation strings."""
        vs = []
        for v in variables:
            if isinstance(v, Variable):
                vs.append(v)
            elif isinstance(v, str):
                vs.append(Variable(v))
            else:
                vs.append(Variable(*v))
        return cls(Field(char), tuple(vs), tuple(relations))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(v.degree for v in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def char(self) -> int:
        return self.field.char

    @property
    def signature(self):
        return (self.field.char, tuple((v.name, v.degree) for v in self.variables), self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Ring):
            return NotImplemented
        return self.signature == other.signature and self.relations == other.relations

    def __hash__(self):
        return hash((self.signature, self.relations))

    def ambient(self) -> "Ring":
        if not self.relations:
            return self
        return Ring(self.field, self.variables, (), self.blocks)

    def with_relations(self, relations) -> "Ring":
        return Ring(self.field, self.variables, tuple(relations), self.blocks)

    def over(self, char: int) -> "Ring":
        """Same presentation read over another prime field (or Q).

        Coefficients must be integers (or rationals for ``char == 0``).
        """
        target = Ring(Field(char), self.variables)
        rels = [Polynomial(target, {e: target.field(c) for e, c in r.terms.items()})
                for r in self.relations]
        return Ring(target.field, self.variables, tuple(rels))

    def key(self, exp: tuple[int, ...]) -> tuple[int, ...]:
        """Sort key of a monomial; larger key means larger monomial.

        The order is weighted degrevlex, or a product of weighted degrevlex
        orders when ``blocks`` is set (earlier blocks dominate).
        """
        k = self._keys.get(exp)
        if k is None:
            ws = self.weights
            if self.blocks is None:
                k = (sum(w * e for w, e in zip(ws, exp)),) + tuple(-e for e in reversed(exp))
            else:
                k = ()
                start = 0
                for size in self.blocks:
                    part = exp[start:start + size]
                    k += (sum(w * e for w, e in zip(ws[start:start + size], part)),)
                    k += tuple(-e for e in reversed(part))
                    start += size
            self._keys[exp] = k
        return k

    def degree_of(self, exp: tuple[int, ...]) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field(1)}, _trusted=True)

    def var(self, name: str) -> "Polynomial":
        i = self.names.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exp: self.field(1)}, _trusted=True)

    def gens(self) -> list["Polynomial"]:
        return [self.var(n) for n in self.names]

    def monomial(self, exp, coeff=1) -> "Polynomial":
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise PolynomialError("arity mismatch")
        c = self.field(coeff)
        return Polynomial(self, {exp: c} if c else {}, _trusted=True)

    def __call__(self, src) -> "Polynomial":
        if isinstance(src, Polynomial):
            return Polynomial(self, src.terms)
        if isinstance(src, str):
            return parse_polynomial(src, self)
        return Polynomial(self, {(0,) * self.nvars: src} if src else {})

    def __str__(self):
        vs = ", ".join(v.name if v.degree == 1 else f"{v.name}:{v.degree}" for v in self.variables)
        base = f"{self.field}[{vs}]"
        if self.relations:
            base += "/(" + ", ".join(map(str, self.relations)) + ")"
        return base

    def __repr__(self):
        return f"Ring({self})"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = dict(terms) if not isinstance(terms, dict) else terms
        else:
            n = ring.nvars
            clean = {}
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise PolynomialError(f"exponent {exp} has wrong arity for {n} variables")
                if any(e < 0 for e in exp):
                    raise PolynomialError("negative exponent")
                if any(e > EXPONENT_LIMIT for e in exp):
                    raise ExponentOverflowError("exponent exceeds 64-bit range")
                c = ring.field(c)
                if c:
                    clean[exp] = c
            self.terms = clean
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.signature != self.ring.signature:
                raise PolynomialError("arity mismatch: polynomials from different rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._check(other)
        return Polynomial(self.ring, _add(self.terms, other.terms, self.ring.char), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.char
        if p:
            return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()}, _trusted=True)
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        return poly_mul(self, self._check(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return poly_power(self, n)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.signature == other.ring.signature and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.signature, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead(self) -> tuple[tuple[int, ...], object]:
        """Leading (exponent, coefficient) under the ring order."""
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading term")
        key = self.ring.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self) -> "Polynomial":
        _, c = self.lead()
        if c == 1:
            return self
        inv = self.ring.field.inv(c)
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.char
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()}, _trusted=True)
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def max_exponents(self) -> tuple[int, ...]:
        n = self.ring.nvars
        return tuple(max((e[i] for e in self.terms), default=0) for i in range(n))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _add(a: dict, b: dict, p: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = (v + c) % p if p else v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _mul_terms(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, 0) + ca * cb
    if p:
        return {e: c % p for e, c in out.items() if c % p}
    return {e: c for e, c in out.items() if c}


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product of two polynomials over the same ring."""
    if f.ring.signature != g.ring.signature:
        raise PolynomialError("arity mismatch: polynomials from different rings")
    if not f.terms or not g.terms:
        return f.ring.zero()
    if any(x + y > EXPONENT_LIMIT for x, y in zip(f.max_exponents(), g.max_exponents())):
        raise ExponentOverflowError("product exponent exceeds 64-bit range")
    return Polynomial(f.ring, _mul_terms(f.terms, g.terms, f.ring.char), _trusted=True)


def poly_power(f: Polynomial, n: int) -> Polynomial:
    """``f**n`` by repeated squaring.

    Over F_p the ``p``-th power of a sum is the sum of ``p``-th powers, so the
    exponent is split into its base-``p`` digits and each digit handled via
    Frobenius on the terms.
    """
    if n < 0:
        raise ValueError("negative exponent")
    ring = f.ring
    if n == 0:
        return ring.one()
    if not f.terms:
        return ring.zero()
    if any(e * n > EXPONENT_LIMIT for e in f.max_exponents()):
        raise ExponentOverflowError(f"exponent overflow in power {n}")
    p = ring.char
    if p and n >= p:
        result = ring.one()
        base = f
        while n:
            n, digit = divmod(n, p)
            if digit:
                result = result * _plain_power(base, digit)
            if n:
                base = frobenius(base)
        return result
    return _plain_power(f, n)


def frobenius(f: Polynomial) -> Polynomial:
    """The p-th power map over F_p: raise each term to the p-th power."""
    p = f.ring.char
    if not p:
        raise PolynomialError("Frobenius needs positive characteristic")
    return Polynomial(f.ring, {tuple(x * p for x in e): c for e, c in f.terms.items()},
                      _trusted=True)


def _plain_power(f: Polynomial, n: int) -> Polynomial:
    result = None
    base = f
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def weighted_degree(f: Polynomial, ring: Ring | None = None):
    """Weighted degree of a homogeneous polynomial, ``None`` if inhomogeneous."""
    ring = ring or f.ring
    if not f.terms:
        raise PolynomialError("the zero polynomial has no degree")
    degs = {ring.degree_of(e) for e in f.terms}
    return degs.pop() if len(degs) == 1 else None


def is_homogeneous(f: Polynomial) -> bool:
    return not f.terms or weighted_degree(f) is not None


# ---------------------------------------------------------------- printing

def _format_coeff(c, field: Field) -> str:
    if field.char:
        return str(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(exp, names) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    field = f.ring.field
    out = []
    for i, (exp, c) in enumerate(f.sorted_terms()):
        neg = not field.char and c < 0
        mag = -c if neg else c
        mono = _format_monomial(exp, names)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_coeff(mag, field)}*{mono}"
        else:
            body = _format_coeff(mag, field)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^/]))")


def _tokenize(src: str):
    pos = 0
    tokens = []
    n = len(src)
    while pos < n:
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, ring: Ring):
        self.tokens = _tokenize(src)
        self.i = 0
        self.ring = ring
        self.index = {name: k for k, name in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, got {t[1] or 'end of input'!r}", t[2])
        return t

    def expr(self) -> dict:
        p = self.ring.char
        terms: dict = {}
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        while True:
            exp, c = self.term()
            c = self.ring.field(c * sign)
            terms = _add(terms, {exp: c} if c else {}, p)
            t = self.peek()
            if t[0] == "end":
                return terms
            if t[0] == "op" and t[1] in "+-":
                self.take()
                sign = 1 if t[1] == "+" else -1
                continue
            raise ParseError(f"unexpected token {t[1]!r}", t[2])

    def term(self):
        t = self.peek()
        exp = [0] * self.ring.nvars
        if t[0] == "int":
            coeff = self.coeff()
        elif t[0] == "ident":
            coeff = 1
            self.factor(exp)
        else:
            raise ParseError(f"expected a term, got {t[1] or 'end of input'!r}", t[2])
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.factor(exp)
        if any(e > EXPONENT_LIMIT for e in exp):
            raise ExponentOverflowError("exponent exceeds 64-bit range")
        return tuple(exp), coeff

    def coeff(self):
        _, num, _ = self.take()
        value = int(num)
        if self.peek()[:2] == ("op", "/"):
            _, _, pos = self.take()
            if self.ring.char:
                raise CoefficientError(f"fraction coefficient at position {pos} "
                                       f"is not allowed over {self.ring.field}")
            den = self.expect("int")
            if int(den[1]) == 0:
                raise ParseError("zero denominator", den[2])
            return Fraction(value, int(den[1]))
        return value

    def factor(self, exp):
        t = self.peek()
        if t[0] != "ident":
            raise ParseError(f"expected a variable, got {t[1] or 'end of input'!r}", t[2])
        self.take()
        k = self.index.get(t[1])
        if k is None:
            raise UnknownVariableError(f"unknown variable {t[1]!r} at position {t[2]}")
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            power = int(self.expect("int")[1])
        exp[k] += power


def parse_polynomial(src: str, ring: Ring) -> Polynomial:
    """Parse ``src`` into a polynomial of ``ring`` (see README for the grammar)."""
    terms = _Parser(src, ring).expr()
    return Polynomial(ring, terms, _trusted=True)


def parse_polynomials(srcs: Iterable[str], ring: Ring) -> list[Polynomial]:
    return [parse_polynomial(s, ring) for s in srcs]
