"""Graded sequences of ideals, product-closed generating sets, asymptotic
multiplier-type ideals and the chain I^(hm) <= J(hm) <= J(h)^m <= ..., I^m."""

from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import AxiomViolation, ResourceLimit, StabilizationFailure, SympowError
from .monomial import MonomialIdeal, big_height, multiplier_ideal_monomial
from .poly import PolyRing
from .symbolic import check_main_theorem, symbolic_power_monomial

MAX_LEVEL = 12
MAX_ENTRIES = 200_000
SCHEDULE = (1, 2, 4, 8, 16, 32, 64)


@dataclass(frozen=True)
class Generator:
    exponent: tuple
    tag: tuple  # ("fresh", k) or ("product", s, i, t, j)

    @property
    def is_fresh(self) -> bool:
        return self.tag[0] == "fresh"


class GradedSequence:
    """n -> a_n with a_n a_m <= a_(n+m); levels are monomial ideals, cached."""

    def __init__(self, ring: PolyRing, evaluator: Callable[[int], MonomialIdeal], name: str = "seq"):
        self.ring = ring
        self.evaluator = evaluator
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()
        self.generating_sets: dict = {}

    @classmethod
    def powers(cls, M: MonomialIdeal) -> "GradedSequence":
        return cls(M.ring, lambda n: M ** n, f"powers of {M}")

    @classmethod
    def symbolic_powers(cls, M: MonomialIdeal) -> "GradedSequence":
        return cls(M.ring, lambda n: symbolic_power_monomial(M, n), f"symbolic powers of {M}")

    @classmethod
    def constant_unit(cls, ring: PolyRing) -> "GradedSequence":
        return cls(ring, lambda n: MonomialIdeal.unit(ring), "unit")

    def level(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise SympowError("levels are indexed by n >= 0")
        if n == 0:
            return MonomialIdeal.unit(self.ring)
        hit = self._cache.get(n)
        if hit is None:
            value = self.evaluator(n)  # idempotent, so racing threads agree
            with self._lock:
                hit = self._cache.setdefault(n, value)
        return hit

    def ideal_of_set(self, m: int) -> MonomialIdeal:
        return MonomialIdeal(self.ring, (g.exponent for g in self.generating_sets[m]))

    def check_axiom(self, s: int, t: int) -> list:
        """Generators of a_s a_t outside a_(s+t)."""
        target = self.level(s + t)
        return target.non_members(self.level(s) * self.level(t))


def build_generating_sets(seq: GradedSequence, up_to: int, shuffle_seed: int | None = None) -> GradedSequence:
    """Level m: minimal generators of a_m (fresh) followed by every product g_s * g_t, s + t = m.

    Products are kept with their provenance even when they repeat.  With
    ``shuffle_seed`` the fresh generators are listed in a shuffled order.
    """
    if not 1 <= up_to <= MAX_LEVEL:
        raise SympowError(f"up_to must be in 1..{MAX_LEVEL}")
    rng = random.Random(shuffle_seed)
    sets: dict = {}
    for m in range(1, up_to + 1):
        level = seq.level(m)
        fresh = level.gens()
        if shuffle_seed is not None:
            rng.shuffle(fresh)
        entries = [Generator(e, ("fresh", k)) for k, e in enumerate(fresh)]
        for s in range(1, m):
            t = m - s
            if len(sets[s]) * len(sets[t]) + len(entries) > MAX_ENTRIES:
                raise ResourceLimit(f"generating set at level {m} exceeds {MAX_ENTRIES} entries")
            for i, g in enumerate(sets[s]):
                for j, k in enumerate(sets[t]):
                    e = tuple(a + b for a, b in zip(g.exponent, k.exponent))
                    if not level.contains_exponent(e):
                        raise AxiomViolation(
                            f"product of level {s} and level {t} generators {seq.ring.monomial(e)} "
                            f"is not in level {m}")
                    entries.append(Generator(e, ("product", s, i, t, j)))
        sets[m] = entries
    seq.generating_sets = sets
    return seq


# -- asymptotic ideals ---------------------------------------------------------------


@dataclass
class AsymptoticIdeal:
    n: int
    ideal: MonomialIdeal
    l_star: int
    oracle: str
    history: list = field(default_factory=list)  # (l, value)


def _oracle_value(seq: GradedSequence, level: int, l: int, oracle: str) -> MonomialIdeal:
    a = seq.level(level)
    if a.is_zero():
        return a
    if oracle == "multiplier":
        return multiplier_ideal_monomial(a, Fraction(1, l))
    if oracle == "snc-test":
        from .snc import MixedModel, SncMonomial, snc_test_ideal

        if not a.is_principal():
            raise SympowError("the snc-test oracle only handles principal levels")
        model = MixedModel(seq.ring)
        (e,) = a.exponents
        return snc_test_ideal(model, SncMonomial(e), Fraction(1, l))
    raise SympowError(f"unknown oracle {oracle!r}")


def asymptotic_ideal(seq: GradedSequence, n: int, oracle: str = "multiplier") -> AsymptoticIdeal:
    """oracle(a_(ln), 1/l) along l = 1, 2, 4, ... until two successive values agree."""
    if n < 1:
        raise SympowError("n must be >= 1")
    history = []
    prev = None
    for l in SCHEDULE:
        value = _oracle_value(seq, l * n, l, oracle)
        history.append((l, value))
        if prev is not None and value == prev[1]:
            return AsymptoticIdeal(n, value, prev[0], oracle, history)
        prev = (l, value)
    raise StabilizationFailure(f"no stabilization for n={n} with l <= {SCHEDULE[-1]}")


@dataclass
class ContainmentReport:
    name: str
    passed: bool
    level: str  # "oracle-level" or "endpoint-exact"
    lhs: MonomialIdeal
    rhs: MonomialIdeal
    witnesses: list = field(default_factory=list)

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.name} [{self.level}]: {verdict}"


def _containment(name, lhs, rhs, level="oracle-level") -> ContainmentReport:
    missing = rhs.non_members(lhs)
    return ContainmentReport(name, not missing, level, lhs, rhs, missing)


def verify_asymptotic_subadditivity(seq: GradedSequence, n: int, m: int,
                                    oracle: str = "multiplier") -> ContainmentReport:
    """J(mn) <= J(n)^m for the stabilized asymptotic ideals."""
    big = asymptotic_ideal(seq, m * n, oracle).ideal
    small = asymptotic_ideal(seq, n, oracle).ideal
    return _containment(f"J({m * n}) <= J({n})^{m}", big, small ** m)


@dataclass
class PipelineReport:
    h: int
    m: int
    links: list
    seconds: float

    @property
    def holds(self) -> bool:
        return all(link.passed for link in self.links)

    def summary(self) -> str:
        lines = [f"h={self.h} m={self.m}"] + ["  " + link.summary() for link in self.links]
        return "\n".join(lines)


def main_theorem_pipeline(I: MonomialIdeal, m: int, oracle: str = "multiplier") -> PipelineReport:
    """Check every link of I^(hm) <= J(hm) <= J(h)^m <= I^m, then I^(hm) <= I^m directly."""
    if m < 1:
        raise SympowError("m must be >= 1")
    start = time.perf_counter()
    h = big_height(I)
    seq = GradedSequence.symbolic_powers(I)
    sym = seq.level(h * m)
    j_hm = asymptotic_ideal(seq, h * m, oracle).ideal
    j_h = asymptotic_ideal(seq, h, oracle).ideal
    links = [
        _containment(f"I^({h * m}) <= J({h * m})", sym, j_hm),
        _containment(f"J({h * m}) <= J({h})^{m}", j_hm, j_h ** m),
        _containment(f"J({h}) <= I", j_h, I),
        _containment(f"J({h})^{m} <= I^{m}", j_h ** m, I ** m),
    ]
    direct = check_main_theorem(I, m, h=h)
    ordinary = I ** m
    links.append(ContainmentReport(f"I^({h * m}) <= I^{m}", direct.holds, "endpoint-exact", sym, ordinary,
                                   [g.lm for g in direct.witnesses]))
    return PipelineReport(h, m, links, time.perf_counter() - start)
