"""Exact sparse multivariate polynomials over Q or GF(q).

Exponent vectors are plain tuples of non-negative ints.  A polynomial is an
immutable mapping ``exponent -> nonzero coefficient`` tied to a
:class:`PolyRing`, which also fixes the monomial order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import ResourceLimit, RingMismatch, SympowError, current_limits

Exponent = tuple


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    i = 3
    while i * i <= q:
        if q % i == 0:
            return False
        i += 2
    return True


class ModInt:
    """Element of GF(q).  Mixed arithmetic with plain ints is allowed."""

    __slots__ = ("v", "q")

    def __init__(self, v: int, q: int):
        self.q = q
        self.v = v % q

    def _lift(self, other):
        if isinstance(other, ModInt):
            if other.q != self.q:
                raise RingMismatch(f"GF({self.q}) vs GF({other.q})")
            return other.v
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.q)
        return other

    def __add__(self, o):
        return ModInt(self.v + self._lift(o), self.q)

    __radd__ = __add__

    def __sub__(self, o):
        return ModInt(self.v - self._lift(o), self.q)

    def __rsub__(self, o):
        return ModInt(self._lift(o) - self.v, self.q)

    def __mul__(self, o):
        return ModInt(self.v * self._lift(o), self.q)

    __rmul__ = __mul__

    def __truediv__(self, o):
        d = self._lift(o) % self.q
        if d == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.q)
        return ModInt(self.v * pow(d, -1, self.q), self.q)

    def __rtruediv__(self, o):
        return ModInt(self._lift(o), self.q) / self

    def __neg__(self):
        return ModInt(-self.v, self.q)

    def __pow__(self, n: int):
        return ModInt(pow(self.v, n, self.q), self.q)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        if isinstance(o, ModInt):
            return self.q == o.q and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.q
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.q))

    def __repr__(self):
        return str(self.v)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block`` (lex on the first k variables, grevlex on the rest)."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise SympowError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.k < 0:
            raise SympowError("block order needs k >= 0")

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        if text.startswith("block"):
            inner = text[len("block"):].strip()
            if not (inner.startswith("(") and inner.endswith(")")):
                raise SympowError(f"bad block order {text!r}")
            return cls("block", int(inner[1:-1]))
        return cls(text)

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind

    def key(self, e: Exponent) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-a for a in reversed(e))
        head, rest = e[: self.k], e[self.k:]
        return head + (sum(rest),) + tuple(-a for a in reversed(rest))

    def compare(self, u: Exponent, v: Exponent) -> int:
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)

    def eliminates(self, n: int) -> bool:
        """True if this order eliminates the first ``n`` variables."""
        if n == 0 or self.kind == "lex":
            return True
        if self.kind == "block":
            return self.k >= n
        return False

    def restrict(self, drop: int) -> "MonomialOrder":
        """Order induced on the variables after the first ``drop``."""
        if self.kind == "lex":
            return self
        if self.kind == "grevlex":
            return self
        left = self.k - drop
        if left <= 0:
            return MonomialOrder("grevlex")
        return MonomialOrder("block", left)


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    order: MonomialOrder = GREVLEX
    modulus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise SympowError("variable names must be unique")
        limit = current_limits().max_vars
        if len(self.variables) > limit:
            raise ResourceLimit(f"{len(self.variables)} variables exceeds limit {limit}")
        if self.modulus is not None and (not _is_prime(self.modulus) or self.modulus >= 2**31):
            raise SympowError(f"GF({self.modulus}): modulus must be a prime < 2^31")

    @classmethod
    def from_spec(cls, text: str) -> "PolyRing":
        """Parse ``"Q[x,y,z] grevlex"`` or ``"GF(101)[x,y] lex"``."""
        from .parser import parse_ring_decl

        return parse_ring_decl(text)

    def spec(self) -> str:
        dom = "Q" if self.modulus is None else f"GF({self.modulus})"
        return f"{dom}[{','.join(self.variables)}] {self.order}"

    def __str__(self):
        return self.spec()

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def coerce(self, c):
        if self.modulus is not None:
            if isinstance(c, ModInt):
                return c
            if isinstance(c, str):
                c = Fraction(c)
            if isinstance(c, Fraction):
                return ModInt(c.numerator, self.modulus) / c.denominator
            return ModInt(int(c), self.modulus)
        if isinstance(c, Fraction):
            return c
        if isinstance(c, (int, str)):
            return Fraction(c)
        raise SympowError(f"cannot use {c!r} as an exact rational coefficient")

    def zero_exp(self) -> Exponent:
        return (0,) * self.ngens

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return self.monomial(self.zero_exp(), c)

    def monomial(self, exp: Sequence[int], c=1) -> "Polynomial":
        exp = tuple(exp)
        if len(exp) != self.ngens or any(a < 0 for a in exp):
            raise SympowError(f"bad exponent vector {exp} for {self}")
        c = self.coerce(c)
        return Polynomial(self, {exp: c} if c else {})

    def gens(self) -> list:
        d = self.ngens
        return [self.monomial(tuple(int(i == j) for j in range(d))) for i in range(d)]

    def var(self, name: str) -> "Polynomial":
        return self.gens()[self.index(name)]

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise SympowError(f"unknown variable {name!r} in {self}") from None

    def from_terms(self, terms: Mapping) -> "Polynomial":
        out = {}
        for e, c in terms.items():
            c = self.coerce(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial

        return parse_polynomial(text, self)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.variables, order, self.modulus)

    def prepend(self, names: Sequence[str], order: MonomialOrder | None = None) -> "PolyRing":
        """Ring with extra variables in front; default order eliminates them."""
        if order is None:
            order = MonomialOrder("block", len(names))
        return PolyRing(tuple(names) + self.variables, order, self.modulus)

    def fresh_names(self, stem: str, n: int) -> list:
        out, i = [], 0
        while len(out) < n:
            name = stem if n == 1 and i == 0 else f"{stem}{i + 1 if n > 1 else i}"
            if name not in self.variables and name not in out:
                out.append(name)
            i += 1
        return out


def _add_exp(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _divides(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


class Polynomial:
    """Immutable sparse polynomial.  Use ring helpers or the parser to build one."""

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- construction helpers -------------------------------------------------

    def _wrap(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        if len(out) > current_limits().max_terms:
            raise ResourceLimit(f"product has {len(out)} terms")
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise SympowError("polynomial powers need a non-negative integer")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            raise SympowError("use groebner.reduce for polynomial division")
        c = self.ring.coerce(c)
        if not c:
            raise ZeroDivisionError("division by zero")
        return Polynomial(self.ring, {e: v / c for e, v in self.terms.items()})

    def mul_term(self, exp: Exponent, c) -> "Polynomial":
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {_add_exp(e, exp): v * c for e, v in self.terms.items()})

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if not self.terms:
            return True
        w = weights or (1,) * self.ring.ngens
        degs = {sum(a * b for a, b in zip(e, w)) for e in self.terms}
        return len(degs) == 1

    def leading_term(self, order: MonomialOrder | None = None):
        """``(exponent, coefficient)`` of the largest term."""
        if not self.terms:
            raise SympowError("zero polynomial has no leading term")
        order = order or self.ring.order
        if order == self.ring.order:
            return self._lt
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    @cached_property
    def _lt(self):
        e = max(self.terms, key=self.ring.order.key)
        return e, self.terms[e]

    @property
    def lm(self) -> Exponent:
        return self.leading_term()[0]

    @property
    def lc(self):
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self / self.lc

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def variables_used(self) -> set:
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    # -- maps -----------------------------------------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    def substitute(self, images: Sequence["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (all in ``target``)."""
        if len(images) != self.ring.ngens:
            raise SympowError("need one image per variable")
        target = target or (images[0].ring if images else self.ring)
        powers: list = [dict() for _ in images]
        result = target.zero
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    cache = powers[i]
                    if a not in cache:
                        cache[a] = images[i] ** a
                    term = term * cache[a]
            result = result + term
        return result

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-express in ``ring`` by matching variable names."""
        if ring == self.ring:
            return self
        idx = [ring.index(v) for v in self.ring.variables]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.ngens
            for i, a in zip(idx, e):
                ne[i] = a
            out[tuple(ne)] = ring.coerce(c) if ring.modulus != self.ring.modulus else c
        return Polynomial(ring, out)

    # -- text -----------------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {self.ring.spec()!r})"


def _format_monomial(exp, names) -> str:
    parts = []
    for a, n in zip(exp, names):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def _format_coeff(c) -> tuple:
    """Return (negative, text) for the absolute value of ``c``."""
    if isinstance(c, ModInt):
        return False, str(c.v)
    neg = c < 0
    a = -c if neg else c
    if isinstance(a, Fraction) and a.denominator != 1:
        return neg, f"{a.numerator}/{a.denominator}"
    return neg, str(int(a))


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Canonical text form: terms in descending order, ``*`` and ``^``."""
    if not f.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(f.sorted_terms(order)):
        neg, ctext = _format_coeff(c)
        mono = _format_monomial(e, f.ring.variables)
        if mono:
            body = mono if ctext == "1" else f"{ctext}*{mono}"
        else:
            body = ctext
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def leading_term(f: Polynomial, order: MonomialOrder | None = None):
    return f.leading_term(order)


def lcm_exp(u: Exponent, v: Exponent) -> Exponent:
    return tuple(max(a, b) for a, b in zip(u, v))


def divides(u: Exponent, v: Exponent) -> bool:
    """True if the monomial u divides v."""
    return _divides(u, v)


def sub_exp(u: Exponent, v: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(u, v))


def add_exp(u: Exponent, v: Exponent) -> Exponent:
    return _add_exp(u, v)


def polys_in(ring: PolyRing, items: Iterable) -> list:
    """Coerce strings / constants / polynomials into ``ring``."""
    out = []
    for it in items:
        if isinstance(it, Polynomial):
            if it.ring != ring:
                raise RingMismatch(f"{it.ring} vs {ring}")
            out.append(it)
        elif isinstance(it, str):
            out.append(ring.parse(it))
        else:
            out.append(ring.const(it))
    return out
