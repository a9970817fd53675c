"""Monomial ideals: Newton polyhedra, integral closure, minimal primes and
multiplier ideals of monomial ideals (Howald's lattice-point description)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

from .errors import NotSquarefree, ResourceLimit, SympowError, current_limits
from .groebner import GroebnerBasis
from .hull import minimal_points, newton_facets
from .poly import Polynomial, PolyRing, divides


def _minimalize(exps: Iterable[tuple]) -> frozenset:
    return frozenset(minimal_points(list(exps))) if exps else frozenset()


class MonomialIdeal:
    """Monomial ideal stored by its minimal exponent vectors.

    The empty generating set is the zero ideal; the zero vector gives the
    unit ideal.
    """

    __slots__ = ("ring", "exponents")

    def __init__(self, ring: PolyRing, exponents: Iterable[Sequence[int]] = ()):
        exps = [tuple(int(a) for a in e) for e in exponents]
        for e in exps:
            if len(e) != ring.ngens or any(a < 0 for a in e):
                raise SympowError(f"bad exponent vector {e} for {ring}")
        self.ring = ring
        self.exponents = _minimalize(exps)

    @classmethod
    def from_ideal(cls, ideal) -> "MonomialIdeal":
        if not ideal.is_monomial():
            raise SympowError("ideal is not generated by monomials")
        return cls(ideal.ring, [g.lm for g in ideal.generators])

    @classmethod
    def from_polys(cls, ring: PolyRing, polys: Iterable[Polynomial]) -> "MonomialIdeal":
        exps = []
        for p in polys:
            if not p.is_monomial():
                raise SympowError(f"{p} is not a monomial")
            exps.append(p.lm)
        return cls(ring, exps)

    @classmethod
    def parse(cls, ring: PolyRing, text: str) -> "MonomialIdeal":
        from .parser import parse_polylist

        return cls.from_polys(ring, parse_polylist(text, ring))

    @classmethod
    def unit(cls, ring: PolyRing) -> "MonomialIdeal":
        return cls(ring, [ring.zero_exp()])

    @classmethod
    def principal(cls, ring: PolyRing, exp: Sequence[int]) -> "MonomialIdeal":
        return cls(ring, [tuple(exp)])

    # -- basic predicates ----------------------------------------------------------

    @property
    def d(self) -> int:
        return self.ring.ngens

    def gens(self) -> list:
        return sorted(self.exponents, key=self.ring.order.key, reverse=True)

    def is_zero(self) -> bool:
        return not self.exponents

    def is_unit(self) -> bool:
        return self.ring.zero_exp() in self.exponents

    def is_squarefree(self) -> bool:
        return all(a <= 1 for e in self.exponents for a in e)

    def is_principal(self) -> bool:
        return len(self.exponents) == 1

    def contains_exponent(self, e: Sequence[int]) -> bool:
        return any(divides(g, e) for g in self.exponents)

    def contains(self, other: "MonomialIdeal") -> bool:
        """True iff ``other`` is a subset of ``self``."""
        self._check(other)
        return all(self.contains_exponent(e) for e in other.exponents)

    def non_members(self, other: "MonomialIdeal") -> list:
        """Generators of ``other`` missing from ``self`` (containment witnesses)."""
        self._check(other)
        return sorted(e for e in other.exponents if not self.contains_exponent(e))

    def _check(self, other):
        if other.ring.variables != self.ring.variables:
            raise SympowError(f"{self.ring} vs {other.ring}")

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring.variables == other.ring.variables and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.ring.variables, self.exponents))

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return MonomialIdeal(self.ring, self.exponents | other.exponents)

    def __mul__(self, other):
        self._check(other)
        return MonomialIdeal(self.ring, (tuple(a + b for a, b in zip(u, v))
                                         for u in self.exponents for v in other.exponents))

    def __and__(self, other):
        self._check(other)
        return MonomialIdeal(self.ring, (tuple(max(a, b) for a, b in zip(u, v))
                                         for u in self.exponents for v in other.exponents))

    def __pow__(self, n: int):
        if n < 0:
            raise SympowError("powers need n >= 0")
        result = MonomialIdeal.unit(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def drop_variables(self, indices: Sequence[int], ring: PolyRing) -> "MonomialIdeal":
        """Set the given variables to 1 (localize at them) and land in ``ring``."""
        keep = [i for i in range(self.d) if i not in set(indices)]
        return MonomialIdeal(ring, (tuple(e[i] for i in keep) for e in self.exponents))

    # -- conversions --------------------------------------------------------------

    def to_polys(self) -> list:
        return [self.ring.monomial(e) for e in self.gens()]

    def to_ideal(self, **meta):
        """As a general :class:`Ideal`; minimal monomial generators are a reduced GB."""
        from .ideal import Ideal

        polys = self.to_polys()
        ideal = Ideal(self.ring, polys, **meta)
        ideal._gb = GroebnerBasis(self.ring, tuple(sorted(polys, key=lambda f: self.ring.order.key(f.lm),
                                                          reverse=True)))
        return ideal

    def __str__(self):
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(str(p) for p in self.to_polys()) + ")"

    def __repr__(self):
        return f"MonomialIdeal({self.ring.spec()!r}, {str(self)!r})"


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(generators) + orthant as integer halfspaces ``normal . u >= offset``."""

    generators: tuple
    halfspaces: tuple

    @property
    def d(self) -> int:
        return len(self.generators[0])

    def contains(self, u: Sequence) -> bool:
        return all(sum(w * a for w, a in zip(n, u)) >= b for n, b in self.halfspaces)

    def in_scaled_interior(self, u: Sequence[int], t: Fraction) -> bool:
        """``u`` strictly inside every non-coordinate facet of ``t * P``."""
        t = Fraction(t)
        p, q = t.numerator, t.denominator
        for n, b in self.halfspaces:
            lhs = q * sum(w * a for w, a in zip(n, u))
            if b == 0:
                if lhs < 0:
                    return False
            elif lhs <= p * b:
                return False
        return True

    def slacks(self, u: Sequence) -> list:
        return [sum(w * a for w, a in zip(n, u)) - b for n, b in self.halfspaces]


def newton_polyhedron(M: MonomialIdeal) -> NewtonPolyhedron:
    if M.is_zero():
        raise SympowError("the zero ideal has no Newton polyhedron")
    if M.d > 8:
        raise ResourceLimit(f"Newton polyhedra supported up to 8 variables, got {M.d}")
    gens = tuple(sorted(M.exponents))
    return NewtonPolyhedron(gens, tuple(newton_facets(gens)))


def _box(bounds: Sequence[int]):
    return itertools.product(*(range(b + 1) for b in bounds))


def _minimal_in_box(bounds: Sequence[int], member) -> list:
    """Minimal lattice points of an up-closed set restricted to a box."""
    box_size = 1
    for b in bounds:
        box_size *= b + 1
    if box_size > 5_000_000:
        raise ResourceLimit(f"lattice search box of {box_size} points")
    out = []
    cache: dict = {}

    def inside(v):
        r = cache.get(v)
        if r is None:
            r = cache[v] = member(v)
        return r

    lim = current_limits()
    for step, v in enumerate(_box(bounds)):
        if not step & 4095:
            lim.check_time()
        if not inside(v):
            continue
        minimal = True
        for i, a in enumerate(v):
            if a and inside(v[:i] + (a - 1,) + v[i + 1:]):
                minimal = False
                break
        if minimal:
            out.append(v)
    return out


def integral_closure(M: MonomialIdeal) -> MonomialIdeal:
    """Monomials whose exponent lies in the Newton polyhedron."""
    P = newton_polyhedron(M)
    bounds = [max(e[i] for e in M.exponents) for i in range(M.d)]
    return MonomialIdeal(M.ring, _minimal_in_box(bounds, P.contains))


def is_integral_over(exp: Sequence[int], M: MonomialIdeal) -> bool:
    return newton_polyhedron(M).contains(exp)


def multiplier_ideal_monomial(M: MonomialIdeal, t) -> MonomialIdeal:
    """x^v with v + (1,...,1) in the interior of t * Newt(M)."""
    t = Fraction(t)
    if t < 0:
        raise SympowError("multiplier ideals need t >= 0")
    if t.denominator > 10**6:
        raise ResourceLimit("exponent denominator above 10^6")
    P = newton_polyhedron(M)
    if t == 0:
        return MonomialIdeal.unit(M.ring)
    bounds = [ceil(t * max(e[i] for e in M.exponents)) for i in range(M.d)]
    return MonomialIdeal(M.ring, _minimal_in_box(
        bounds, lambda v: P.in_scaled_interior(tuple(a + 1 for a in v), t)))


def _supports(M: MonomialIdeal) -> list:
    return [frozenset(i for i, a in enumerate(e) if a) for e in M.exponents]


def minimal_vertex_covers(M: MonomialIdeal) -> list:
    supports = _supports(M)
    covers: list = []
    for size in range(M.d + 1):
        for combo in itertools.combinations(range(M.d), size):
            s = frozenset(combo)
            if any(c <= s for c in covers):
                continue
            if all(s & sup for sup in supports):
                covers.append(s)
    return covers


def minimal_primes_squarefree(M: MonomialIdeal) -> list:
    """Minimal primes as sorted tuples of variable names (minimal vertex covers)."""
    if not M.is_squarefree():
        raise NotSquarefree(f"{M} is not squarefree")
    if M.is_zero():
        return [()]
    if M.is_unit():
        return []
    names = M.ring.variables
    return sorted(tuple(names[i] for i in sorted(c)) for c in minimal_vertex_covers(M))


def height(M: MonomialIdeal) -> int:
    """Minimum size of a vertex cover of the generator supports."""
    if not M.is_squarefree():
        raise NotSquarefree(f"{M} is not squarefree")
    return min((len(p) for p in minimal_primes_squarefree(M)), default=0)


def big_height(M: MonomialIdeal) -> int:
    """Largest height of a minimal prime: the h in I^(hn) <= I^n."""
    if not M.is_squarefree():
        raise NotSquarefree(f"{M} is not squarefree")
    return max((len(p) for p in minimal_primes_squarefree(M)), default=0)


def prime_ideal(ring: PolyRing, names: Sequence[str]) -> MonomialIdeal:
    """The monomial prime generated by the named variables."""
    exps = []
    for name in names:
        i = ring.index(name)
        exps.append(tuple(int(j == i) for j in range(ring.ngens)))
    return MonomialIdeal(ring, exps)
