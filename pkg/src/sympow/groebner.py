"""Buchberger's algorithm, multivariate division and elimination."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .errors import OrderError, ResourceLimit, RingMismatch, SympowError, current_limits
from .poly import MonomialOrder, Polynomial, PolyRing, divides, lcm_exp, sub_exp


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    generators: tuple
    reduced: bool = True

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.generators) + "}"


def _neg_key(order: MonomialOrder, e) -> tuple:
    return tuple(-a for a in order.key(e))


def reduce(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None,
           with_quotients: bool = True):
    """Full multivariate division of ``f`` by ``G``.

    Returns ``(remainder, quotients)`` with ``f == sum(q_i * g_i) + remainder``
    and no term of the remainder divisible by a leading term of ``G``.
    """
    ring = f.ring
    for g in G:
        if g.ring.variables != ring.variables or g.ring.modulus != ring.modulus:
            raise RingMismatch(f"{g.ring} vs {ring}")
    order = order or ring.order
    divisors = []
    for i, g in enumerate(G):
        if g.terms:
            lm, lc = g.leading_term(order)
            divisors.append((i, lm, lc, g.terms))
    rem, quots = _reduce_terms(dict(f.terms), divisors, order, len(G), with_quotients)
    remainder = Polynomial(ring, rem)
    if not with_quotients:
        return remainder, None
    return remainder, [Polynomial(ring, q) for q in quots]


def _reduce_terms(p: dict, divisors, order, nq: int, with_quotients: bool = False):
    limits = current_limits()
    key = order.key
    heap = [tuple(-a for a in key(e)) + (e,) for e in p]
    heapq.heapify(heap)
    rem: dict = {}
    quots = [dict() for _ in range(nq)] if with_quotients else None
    steps = 0
    while heap:
        e = heapq.heappop(heap)[-1]
        c = p.get(e)
        if c is None:
            continue
        for i, lm, lc, gterms in divisors:
            if all(a <= b for a, b in zip(lm, e)):
                m = tuple(a - b for a, b in zip(e, lm))
                coef = c / lc
                for ge, gc in gterms.items():
                    ne = tuple(a + b for a, b in zip(ge, m))
                    old = p.get(ne)
                    if old is None:
                        p[ne] = -coef * gc
                        heapq.heappush(heap, tuple(-a for a in key(ne)) + (ne,))
                    else:
                        v = old - coef * gc
                        if v:
                            p[ne] = v
                        else:
                            del p[ne]
                if with_quotients:
                    q = quots[i]
                    v = q.get(m, 0) + coef
                    if v:
                        q[m] = v
                    else:
                        q.pop(m, None)
                break
        else:
            rem[e] = c
            del p[e]
        steps += 1
        if steps % 2048 == 0:
            limits.check_time()
            if len(p) > limits.max_terms:
                raise ResourceLimit(f"intermediate polynomial has {len(p)} terms")
    return rem, quots


def _spoly(f: Polynomial, g: Polynomial, order) -> Polynomial:
    (ef, cf), (eg, cg) = f.leading_term(order), g.leading_term(order)
    L = lcm_exp(ef, eg)
    return f.mul_term(sub_exp(L, ef), 1 / cf) - g.mul_term(sub_exp(L, eg), 1 / cg)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Uses the coprime-leading-term and chain criteria; pairs are processed by
    total degree of the lcm, then by the term order, then by index.
    """
    if ring is None:
        if not gens:
            raise SympowError("need a ring for the empty generator list")
        ring = gens[0].ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    order = ring.order
    F = []
    for g in gens:
        if g.ring.variables != ring.variables or g.ring.modulus != ring.modulus:
            raise RingMismatch(f"{g.ring} vs {ring}")
        if g.terms:
            F.append(Polynomial(ring, dict(g.terms)))
    if not F:
        return GroebnerBasis(ring, ())
    if any(f.is_constant() for f in F):
        return GroebnerBasis(ring, (ring.one,))

    limits = current_limits()
    # Deterministic start: sort inputs by leading monomial then text.
    F.sort(key=lambda f: (order.key(f.lm), str(f)))
    G: list = []
    lms: list = []
    pairs: set = set()
    heap: list = []

    def push_pairs(j: int):
        for i in range(j):
            L = lcm_exp(lms[i], lms[j])
            pairs.add((i, j))
            heapq.heappush(heap, (sum(L), order.key(L), i, j))

    def add(f: Polynomial):
        f = f.monic()
        G.append(f)
        lms.append(f.lm)
        push_pairs(len(G) - 1)

    for f in F:
        add(f)

    divisors_cache: list = []

    def divisors():
        while len(divisors_cache) < len(G):
            k = len(divisors_cache)
            g = G[k]
            divisors_cache.append((k, lms[k], g.lc, g.terms))
        return divisors_cache

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        li, lj = lms[i], lms[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        L = lcm_exp(li, lj)
        chain = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if divides(lms[k], L):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    chain = True
                    break
        if chain:
            continue
        s = _spoly(G[i], G[j], order)
        rem, _ = _reduce_terms(dict(s.terms), divisors(), order, 0)
        limits.check_time()
        if rem:
            r = Polynomial(ring, rem)
            if r.is_constant():
                return GroebnerBasis(ring, (ring.one,))
            if r.total_degree > limits.max_degree:
                raise ResourceLimit(f"Groebner element of degree {r.total_degree} exceeds {limits.max_degree}")
            add(r)

    return GroebnerBasis(ring, tuple(_interreduce(G, order)))


def _interreduce(G: list, order) -> list:
    keep = []
    for idx, g in enumerate(G):
        lm = g.lm
        dominated = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            if divides(h.lm, lm) and (h.lm != lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for idx, g in enumerate(keep):
        others = [h for jdx, h in enumerate(keep) if jdx != idx]
        divs = [(k, h.lm, h.lc, h.terms) for k, h in enumerate(others)]
        lm, lc = g.lm, g.lc
        tail = dict(g.terms)
        del tail[lm]
        rem, _ = _reduce_terms(tail, divs, order, 0)
        rem[lm] = lc
        out.append(Polynomial(g.ring, rem).monic())
    out.sort(key=lambda f: order.key(f.lm), reverse=True)
    return out


def is_groebner(G: Sequence[Polynomial]) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g.terms]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            s = _spoly(G[a], G[b], G[a].ring.order)
            if reduce(s, G, with_quotients=False)[0]:
                return False
    return True


def membership(f: Polynomial, I: GroebnerBasis) -> bool:
    if f.ring.variables != I.ring.variables:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if f.ring != I.ring:
        f = Polynomial(I.ring, dict(f.terms))
    return not reduce(f, list(I.generators), with_quotients=False)[0]


def eliminate(I: GroebnerBasis, keep_last: int) -> GroebnerBasis:
    """Generators of I intersected with the subring in the last ``keep_last`` variables."""
    ring = I.ring
    drop = ring.ngens - keep_last
    if drop < 0:
        raise SympowError("cannot keep more variables than the ring has")
    if not ring.order.eliminates(drop):
        raise OrderError(f"order {ring.order} does not eliminate the first {drop} variables")
    if drop == 0:
        return I
    sub = PolyRing(ring.variables[drop:], ring.order.restrict(drop), ring.modulus)
    out = []
    for g in I.generators:
        if all(not any(e[:drop]) for e in g.terms):
            out.append(Polynomial(sub, {e[drop:]: c for e, c in g.terms.items()}))
    return GroebnerBasis(sub, tuple(out), I.reduced)


def kernel_of_map(source_vars: Sequence[str], target: PolyRing, images: Sequence[Polynomial]) -> GroebnerBasis:
    """Defining ideal of the image of ``k[source_vars] -> target``."""
    source_vars = tuple(source_vars)
    if len(images) != len(source_vars):
        raise SympowError("need one image per source variable")
    clash = set(source_vars) & set(target.variables)
    if clash:
        raise SympowError(f"source and target variables overlap: {sorted(clash)}")
    big = PolyRing(target.variables + source_vars, MonomialOrder("block", target.ngens), target.modulus)
    gens = []
    for j, img in enumerate(images):
        if img.ring.variables != target.variables:
            raise RingMismatch(f"{img.ring} vs {target}")
        gens.append(big.var(source_vars[j]) - img.to_ring(big))
    gb = buchberger(gens, ring=big)
    return eliminate(gb, len(source_vars))
