"""Rees algebras, blowup charts, integral chart extensions and the relative
canonical divisor of the blowup of a maximal ideal."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NotIntegral, SympowError
from .groebner import GroebnerBasis, buchberger, eliminate
from .ideal import Ideal
from .monomial import MonomialIdeal, is_integral_over
from .poly import MonomialOrder, Polynomial, PolyRing


@dataclass
class ReesPresentation:
    """R[T_1..T_m] / ker(T_j -> z_j t)."""

    base: PolyRing
    generators: tuple  # z_j in the base ring
    ring: PolyRing  # base variables followed by T variables
    t_names: tuple
    ideal: GroebnerBasis

    def t_degree(self, f: Polynomial) -> set:
        k = self.base.ngens
        return {sum(e[k:]) for e in f.terms}

    def is_t_homogeneous(self) -> bool:
        return all(len(self.t_degree(g)) <= 1 for g in self.ideal.generators)

    def substitution_vanishes(self) -> bool:
        """Setting T_j = z_j kills every presentation generator."""
        images = [self.base.var(v) for v in self.base.variables] + list(self.generators)
        return all(not g.substitute(images, self.base) for g in self.ideal.generators)


def rees_presentation(I) -> ReesPresentation:
    if isinstance(I, MonomialIdeal):
        I = I.to_ideal()
    if I.is_zero():
        raise SympowError("Rees algebra of the zero ideal")
    R = I.ring
    z = I.generators
    t_names = tuple(R.fresh_names("T", len(z))) if len(z) > 1 else tuple(R.fresh_names("T1", 1))
    (t,) = R.fresh_names("t", 1)
    while t in t_names:
        t += "_"
    big = PolyRing((t,) + R.variables + t_names, MonomialOrder("block", 1), R.modulus)
    tv = big.var(t)
    gens = [big.var(T) - zj.to_ring(big) * tv for T, zj in zip(t_names, z)]
    kept = eliminate(buchberger(gens, ring=big), R.ngens + len(z))
    return ReesPresentation(R, tuple(z), kept.ring, t_names, kept)


@dataclass
class BlowupChart:
    """Affine chart R[z_1/z_i, ..., z_m/z_i]; T_j stands for z_j / z_i."""

    index: int
    rees: ReesPresentation
    ring: PolyRing
    generators: tuple

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    def relations_hold(self) -> bool:
        """z_j - T_j z_i lies in the chart ideal for every j != i."""
        ideal = self.ideal
        zi = self.rees.generators[self.index - 1].to_ring(self.ring)
        for j, (T, zj) in enumerate(zip(self.rees.t_names, self.rees.generators), start=1):
            if j == self.index:
                continue
            rel = zj.to_ring(self.ring) - self.ring.var(T) * zi
            if rel not in ideal:
                return False
        return True


def chart(rees: ReesPresentation, i: int) -> BlowupChart:
    m = len(rees.t_names)
    if not 1 <= i <= m:
        raise SympowError(f"chart index {i} outside 1..{m}")
    k = rees.base.ngens
    keep_names = tuple(T for j, T in enumerate(rees.t_names, start=1) if j != i)
    ring = PolyRing(rees.base.variables + keep_names, MonomialOrder("grevlex"), rees.base.modulus)
    drop = k + i - 1
    gens = []
    for g in rees.ideal.generators:
        terms: dict = {}
        for e, c in g.terms.items():
            ne = e[:drop] + e[drop + 1:]
            v = terms.get(ne, 0) + c
            if v:
                terms[ne] = v
            else:
                terms.pop(ne, None)
        if terms:
            gens.append(Polynomial(ring, terms))
    if gens:
        gens = list(buchberger(gens, ring=ring).generators)
    return BlowupChart(i, rees, ring, tuple(gens))


# -- integral elements ---------------------------------------------------------------


@dataclass
class ChartEquation:
    chart: int
    constant_term: Polynomial  # a_n / z_i^n in the chart ring
    verified: bool


@dataclass
class IntegralChartReport:
    degree: int
    f: Polynomial
    equation: list  # coefficients a_1..a_n as polynomials of R
    charts: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(c.verified for c in self.charts)


def _integrality_degree(J: MonomialIdeal, f: tuple, max_degree: int = 64) -> tuple:
    """Smallest n with f^n in J^n, plus the n generators whose product divides f^n."""
    gens = sorted(J.exponents)
    for n in range(1, max_degree + 1):
        target = tuple(n * a for a in f)
        # depth-first search for a multiset of n generators with sum <= target
        choice = _cover(gens, target, n, 0)
        if choice is not None:
            return n, choice
    raise NotIntegral(f"no integral equation of degree <= {max_degree}")  # pragma: no cover


def _cover(gens, budget, n, start):
    if n == 0:
        return []
    for idx in range(start, len(gens)):
        g = gens[idx]
        if all(a <= b for a, b in zip(g, budget)):
            rest = _cover(gens, tuple(b - a for a, b in zip(g, budget)), n - 1, idx)
            if rest is not None:
                return [g] + rest
    return None


def integral_extension_chart(J: MonomialIdeal, f) -> IntegralChartReport:
    """Monic equation f^n + a_n = 0 with a_n in J^n, and a_n / z_i^n on every chart."""
    R = J.ring
    if isinstance(f, Polynomial):
        if not f.is_monomial():
            raise SympowError("f must be a monomial")
        f = f.lm
    f = tuple(f)
    if not is_integral_over(f, J):
        raise NotIntegral(f"{R.monomial(f)} is not integral over {J}")
    n, factors = _integrality_degree(J, f)
    fpoly = R.monomial(f)
    an = -(fpoly ** n)
    equation = [R.zero] * (n - 1) + [an]
    rees = rees_presentation(J)
    zs = [g.lm for g in rees.generators]
    reports = []
    fn = tuple(n * a for a in f)
    for i in range(1, len(zs) + 1):
        ch_names = rees.base.variables + tuple(T for j, T in enumerate(rees.t_names, start=1) if j != i)
        cring = PolyRing(ch_names, MonomialOrder("grevlex"), R.modulus)
        # f^n = r * prod(z_j) with r a monomial of R
        r = list(fn)
        texp = [0] * (len(zs) - 1)
        for g in factors:
            j = zs.index(g)
            r = [a - b for a, b in zip(r, g)]
            if j != i - 1:
                texp[j if j < i - 1 else j - 1] += 1
        const = cring.monomial(tuple(r) + tuple(texp), -1)
        # Check: multiply by z_i^n after T_j -> z_j / z_i, i.e. r * prod(z_j) == f^n.
        back = R.monomial(tuple(r))
        for g in factors:
            back = back * R.monomial(g)
        reports.append(ChartEquation(i, const, back == fpoly ** n and all(a >= 0 for a in r)))
    return IntegralChartReport(n, fpoly, equation, reports)


# -- relative canonical divisor -----------------------------------------------------


def _det(matrix: list, ring: PolyRing) -> Polynomial:
    n = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> Polynomial:
        if row == n:
            return ring.one
        total = ring.zero
        for sign_pos, c in enumerate(sorted(cols)):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            term = entry * minor(row + 1, cols - {c})
            total = total - term if sign_pos % 2 else total + term
        return total

    return minor(0, frozenset(range(n)))


def blowup_chart_map(d: int):
    """Chart 1 of the blowup of (x_1..x_d): x_1 = u, x_j = u v_j."""
    names = ("u",) + tuple(f"v{j}" for j in range(2, d + 1))
    ring = PolyRing(names)
    u = ring.var("u")
    images = [u] + [u * ring.var(f"v{j}") for j in range(2, d + 1)]
    return ring, images


def relative_canonical_maxideal(d: int) -> int:
    """Order of vanishing along E = {u = 0} of the Jacobian of the chart map."""
    if not 1 <= d <= 8:
        raise SympowError("dimension must be in 1..8")
    ring, images = blowup_chart_map(d)
    jac = [[img.derivative(k) for k in range(d)] for img in images]
    det = _det(jac, ring)
    if det.is_zero():
        raise SympowError("chart map is not birational")  # pragma: no cover
    return min(e[0] for e in det.terms)


def twisted_sections_maxideal(d: int, k: int, h: int, ring: PolyRing | None = None) -> MonomialIdeal:
    """Sections of O_Y(kE - hE) on the maximal-ideal blowup: ord_m(f) >= h - k."""
    if ring is None:
        ring = PolyRing(tuple(f"x{i}" for i in range(1, d + 1)))
    if ring.ngens != d:
        raise SympowError("ring dimension mismatch")
    need = max(0, h - k)
    maximal = MonomialIdeal(ring, [tuple(int(i == j) for j in range(d)) for i in range(d)])
    return maximal ** need
