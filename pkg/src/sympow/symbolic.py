"""Symbolic powers and checks of the containment I^(hm) <= I^m."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import reduce as fold

from .errors import InexactSymbolicPower, SympowError
from .groebner import membership
from .ideal import Ideal, ideal_power, intersect, saturate
from .monomial import MonomialIdeal, big_height, minimal_primes_squarefree, prime_ideal
from .poly import Polynomial

CERTAINTY = ("exact", "lower-bound")


@dataclass
class SymbolicPowerResult:
    ideal: Ideal
    n: int
    certainty: str
    witness: Polynomial | None = None
    monomial: MonomialIdeal | None = None

    def __post_init__(self):
        if self.certainty not in CERTAINTY:
            raise SympowError(f"certainty must be one of {CERTAINTY}")

    @property
    def exact(self) -> bool:
        return self.certainty == "exact"


def symbolic_power_monomial(M: MonomialIdeal, n: int, prime_order=None) -> MonomialIdeal:
    """Intersection of P^n over the minimal primes P of a squarefree monomial ideal."""
    if n < 0:
        raise SympowError("n must be >= 0")
    primes = minimal_primes_squarefree(M)
    if prime_order is not None:
        primes = [primes[i] for i in prime_order]
    if n == 0 or M.is_unit():
        return MonomialIdeal.unit(M.ring)
    if M.is_zero():
        return M
    parts = [prime_ideal(M.ring, P) ** n for P in primes]
    return fold(lambda a, b: a & b, parts)


def symbolic_power_squarefree(M: MonomialIdeal, n: int) -> SymbolicPowerResult:
    """Exact: powers of variable-generated primes are primary."""
    sym = symbolic_power_monomial(M, n)
    return SymbolicPowerResult(sym.to_ideal(), n, "exact", None, sym)


def symbolic_power_squarefree_gb(M: MonomialIdeal, n: int) -> Ideal:
    """Same ideal through Groebner-basis intersections (slower, independent route)."""
    primes = minimal_primes_squarefree(M)
    parts = [ideal_power(prime_ideal(M.ring, P).to_ideal(), n) for P in primes]
    return fold(intersect, parts)


def symbolic_power_prime(Q: Ideal, n: int, s: Polynomial, exact: bool = False) -> SymbolicPowerResult:
    """Q^(n) as the saturation (Q^n : s^inf) for a witness s outside Q.

    The result always contains Q^n.  It equals Q^(n) when s lies in every
    embedded prime of Q^n; only the caller can vouch for that, via ``exact``.
    """
    if Q.primality == "unknown":
        raise SympowError("symbolic_power_prime needs an ideal asserted prime")
    if n < 1:
        raise SympowError("n must be >= 1")
    if membership(s, Q.gb):
        raise SympowError(f"witness {s} lies in Q")
    certainty = "exact" if exact else "lower-bound"
    if n == 1:
        return SymbolicPowerResult(Q, 1, "exact", s)
    return SymbolicPowerResult(saturate(ideal_power(Q, n), s), n, certainty, s)


@dataclass
class MainTheoremReport:
    h: int
    m: int
    holds: bool
    symbolic: Ideal
    ordinary: Ideal
    certainty: str
    seconds: float
    witnesses: list = field(default_factory=list)

    def summary(self) -> str:
        verdict = "holds" if self.holds else "FAILS"
        return f"I^({self.h * self.m}) <= I^{self.m} (h={self.h}): {verdict} [{self.certainty}, {self.seconds:.3f}s]"


def check_main_theorem(I, m: int, *, h: int | None = None, witness: Polynomial | None = None,
                       exact: bool = False, allow_inexact: bool = False) -> MainTheoremReport:
    """Compute I^(mh) and I^m and test containment with Groebner bases.

    ``I`` is a squarefree :class:`MonomialIdeal` (exact, h = largest height of
    a minimal prime) or an :class:`Ideal` asserted prime with ``declared_height``
    and a saturation ``witness``.
    """
    if m < 1:
        raise SympowError("m must be >= 1")
    start = time.perf_counter()
    if isinstance(I, MonomialIdeal):
        h = big_height(I) if h is None else h
        sym = symbolic_power_squarefree(I, m * h)
        ordinary = (I ** m).to_ideal()
    else:
        if h is None:
            h = I.declared_height
        if h is None:
            raise SympowError("declare the height of the prime")
        if witness is None:
            raise SympowError("prime path needs a witness polynomial")
        sym = symbolic_power_prime(I, m * h, witness, exact=exact)
        ordinary = ideal_power(I, m)
    if not sym.exact and not allow_inexact:
        raise InexactSymbolicPower("symbolic power is only a lower bound; pass exact=True or allow_inexact=True")
    gb = ordinary.gb
    missing = [g for g in sym.ideal.generators if not membership(g, gb)]
    return MainTheoremReport(h, m, not missing, sym.ideal, ordinary, sym.certainty,
                             time.perf_counter() - start, missing)
