"""Ideal arithmetic on top of Groebner bases."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable

from .errors import RingMismatch, SympowError
from .groebner import GroebnerBasis, buchberger, eliminate, membership, reduce
from .poly import MonomialOrder, Polynomial, PolyRing, polys_in

PRIMALITY = ("unknown", "asserted-prime", "certified-monomial-prime")


class Ideal:
    """Finitely generated ideal with a lazily computed reduced Groebner basis.

    ``declared_height`` and ``primality`` are metadata supplied by the caller
    (or certified for monomial primes); nothing here computes Krull dimension.
    """

    def __init__(self, ring: PolyRing, generators: Iterable = (), *, gb: GroebnerBasis | None = None,
                 declared_height: int | None = None, primality: str = "unknown"):
        self.ring = ring
        self.generators = tuple(g for g in polys_in(ring, generators) if g.terms)
        if primality not in PRIMALITY:
            raise SympowError(f"primality must be one of {PRIMALITY}")
        if declared_height is not None and declared_height < 0:
            raise SympowError("height must be >= 0")
        self.declared_height = declared_height
        self.primality = primality
        self._gb = None
        if gb is not None:
            if gb.ring != ring:
                raise RingMismatch(f"{gb.ring} vs {ring}")
            self._gb = gb
            if not all(membership(g, gb) for g in self.generators):
                raise SympowError("cached Groebner basis does not contain the generators")
            own = buchberger(self.generators, ring=ring) if self.generators else GroebnerBasis(ring, ())
            if not all(membership(g, own) for g in gb.generators):
                raise SympowError("cached Groebner basis is larger than the ideal")

    @classmethod
    def _trusted(cls, ring, gens, gb) -> "Ideal":
        out = cls(ring, gens)
        out._gb = gb
        return out

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one])

    @classmethod
    def parse(cls, ring: PolyRing, text: str, **meta) -> "Ideal":
        from .parser import parse_polylist

        return cls(ring, parse_polylist(text, ring), **meta)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            if not self.generators:
                self._gb = GroebnerBasis(self.ring, ())
            else:
                self._gb = buchberger(self.generators, ring=self.ring)
        return self._gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def __contains__(self, f: Polynomial) -> bool:
        return membership(f, self.gb)

    def contains(self, other: "Ideal") -> bool:
        return contains(self, other)

    def equals(self, other: "Ideal") -> bool:
        return equals(self, other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, n: int):
        return ideal_power(self, n)

    def __and__(self, other):
        return intersect(self, other)

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal({self.ring.spec()!r}, {str(self)!r})"

    def minimal_generators(self) -> "Ideal":
        """Same ideal generated by the reduced Groebner basis."""
        return Ideal._trusted(self.ring, self.gb.generators, self.gb)


def _same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def _dedupe(polys) -> list:
    seen, out = set(), []
    for p in polys:
        key = p.monic() if p.terms else p
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, _dedupe(I.generators + J.generators))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, _dedupe(f * g for f in I.generators for g in J.generators))


def ideal_power(I: Ideal, n: int) -> Ideal:
    """All degree-n monomials in the generators; ``I^0`` is the unit ideal."""
    if n < 0:
        raise SympowError("ideal powers need n >= 0")
    if n == 0:
        return Ideal.unit(I.ring)
    gens = I.generators
    if not gens:
        return Ideal(I.ring, [])
    cache: dict = {(): I.ring.one}

    def prod(idx: tuple):
        if idx not in cache:
            cache[idx] = prod(idx[:-1]) * gens[idx[-1]]
        return cache[idx]

    return Ideal(I.ring, _dedupe(prod(c) for c in combinations_with_replacement(range(len(gens)), n)))


def _elimination_ring(ring: PolyRing, names) -> PolyRing:
    """Ring with ``names`` prepended whose order eliminates them and restricts back to ``ring.order``."""
    n = len(names)
    if ring.order.kind == "lex":
        order = MonomialOrder("lex")
    elif ring.order.kind == "block":
        order = MonomialOrder("block", ring.order.k + n)
    else:
        order = MonomialOrder("block", n)
    return ring.prepend(names, order)


def _lift(f: Polynomial, big: PolyRing) -> Polynomial:
    k = big.ngens - f.ring.ngens
    pad = (0,) * k
    return Polynomial(big, {pad + e: c for e, c in f.terms.items()})


def _drop(gb: GroebnerBasis, ring: PolyRing) -> GroebnerBasis:
    gens = tuple(Polynomial(ring, dict(g.terms)) for g in gb.generators)
    return GroebnerBasis(ring, gens, gb.reduced)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I & J = eliminate t from t*I + (1 - t)*J."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    (t,) = I.ring.fresh_names("t", 1)
    big = _elimination_ring(I.ring, [t])
    T = big.var(t)
    gens = [T * _lift(f, big) for f in I.generators] + [(1 - T) * _lift(g, big) for g in J.generators]
    gb = _drop(eliminate(buchberger(gens, ring=big), I.ring.ngens), I.ring)
    return Ideal._trusted(I.ring, gb.generators, gb)


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = (I & (f)) / f."""
    if not f.terms:
        raise SympowError("colon by the zero polynomial")
    if f in I:
        return Ideal.unit(I.ring)
    meet = intersect(I, Ideal(I.ring, [f]))
    quotients = []
    for g in meet.generators:
        rem, (q,) = reduce(g, [f])
        if rem:
            raise SympowError("internal error: intersection element not divisible")  # pragma: no cover
        quotients.append(q)
    return Ideal(I.ring, quotients)


def saturate(I: Ideal, f: Polynomial, max_rounds: int = 1000) -> Ideal:
    """(I : f^inf) by iterating colon until the chain stabilizes."""
    if not f.terms:
        raise SympowError("saturation by the zero polynomial")
    current = I
    for _ in range(max_rounds):
        nxt = colon(current, f)
        if contains(current, nxt):
            return current
        current = nxt
    raise SympowError("saturation did not stabilize")  # pragma: no cover


def saturate_rabinowitsch(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f^inf) = eliminate y from I + (1 - y*f).  Independent route used for cross-checks."""
    (y,) = I.ring.fresh_names("y", 1)
    big = _elimination_ring(I.ring, [y])
    gens = [_lift(g, big) for g in I.generators] + [1 - big.var(y) * _lift(f, big)]
    gb = _drop(eliminate(buchberger(gens, ring=big), I.ring.ngens), I.ring)
    return Ideal._trusted(I.ring, gb.generators, gb)


def contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is a subset of I."""
    _same_ring(I, J)
    gb = I.gb
    return all(membership(g, gb) for g in J.generators)


def equals(I: Ideal, J: Ideal) -> bool:
    return contains(I, J) and contains(J, I)


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """f in sqrt(I) iff 1 in I + (1 - y*f)."""
    if not f.terms:
        raise SympowError("radical membership of zero is trivial; pass a nonzero polynomial")
    (y,) = I.ring.fresh_names("y", 1)
    big = I.ring.prepend([y], MonomialOrder("block", 1))
    gens = [_lift(g, big) for g in I.generators] + [1 - big.var(y) * _lift(f, big)]
    return buchberger(gens, ring=big).is_unit()
