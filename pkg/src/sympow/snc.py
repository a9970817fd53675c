"""Test ideals of SNC monomials p^a0 * x1^a1 * ... in the mixed-characteristic
monomial model, and checks of the formal properties (A)-(E) on them.

Only the stabilized ideal ``tau([f]^t) = tau^sharp([f]^(t + eps))`` is
computed.  Whether ``tau^sharp`` itself ever differs from it is unknown, so
nothing here models the unstabilized version beyond the trace route below,
which evaluates ``tau^sharp`` at exponents of the form ``b / p^e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Sequence

from .errors import ResourceLimit, SympowError
from .monomial import MonomialIdeal, multiplier_ideal_monomial
from .poly import PolyRing, _is_prime

MAX_DENOMINATOR = 10**9
MAX_E = 40


@dataclass(frozen=True)
class MixedModel:
    """Polynomial stand-in for W(k)[[x1..x_{d-1}]]: variable ``p`` first."""

    ring: PolyRing
    p_value: int = 2

    def __post_init__(self):
        if not self.ring.variables or self.ring.variables[0] != "p":
            raise SympowError("mixed model ring must have 'p' as its first variable")
        if not _is_prime(self.p_value):
            raise SympowError(f"p = {self.p_value} is not prime")

    @classmethod
    def create(cls, xnames: Sequence[str] = ("x",), p_value: int = 2) -> "MixedModel":
        return cls(PolyRing(("p",) + tuple(xnames)), p_value)

    @property
    def d(self) -> int:
        return self.ring.ngens

    @property
    def x_ring(self) -> PolyRing:
        """The ring after inverting p."""
        return PolyRing(self.ring.variables[1:], self.ring.order)

    def monomial(self, text: str) -> "SncMonomial":
        f = self.ring.parse(text)
        if not f.is_monomial():
            raise SympowError(f"{text!r} is not a monomial")
        if f.lc != 1:
            raise SympowError("SNC monomials are monic")
        return SncMonomial(f.lm)

    def format(self, f: "SncMonomial") -> str:
        return str(self.ring.monomial(f.exponents))


@dataclass(frozen=True)
class SncMonomial:
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))
        if any(a < 0 for a in self.exponents):
            raise SympowError("SNC exponents must be non-negative")

    def __mul__(self, other: "SncMonomial") -> "SncMonomial":
        return SncMonomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, n: int) -> "SncMonomial":
        return SncMonomial(tuple(a * n for a in self.exponents))

    def divides(self, other: "SncMonomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def is_unit(self) -> bool:
        return not any(self.exponents)


def _exponent(t) -> Fraction:
    t = Fraction(t)
    if t < 0:
        raise SympowError("formal exponents must be >= 0")
    if t.denominator > MAX_DENOMINATOR:
        raise ResourceLimit("formal exponent denominator above 10^9")
    return t


def _check(model: MixedModel, f: SncMonomial) -> None:
    if len(f.exponents) != model.d:
        raise SympowError(f"monomial has {len(f.exponents)} exponents, model has {model.d} variables")


def snc_test_ideal(model: MixedModel, f: SncMonomial, t) -> MonomialIdeal:
    """tau(A, [f]^t) = (p^floor(a0 t) * x1^floor(a1 t) * ...)."""
    _check(model, f)
    t = _exponent(t)
    return MonomialIdeal.principal(model.ring, [floor(a * t) for a in f.exponents])


def ceil_pe_exponent(t, e: int, p_value: int) -> int:
    """Exact ceil(t * p^e)."""
    t = _exponent(t)
    if e < 1:
        raise SympowError("e must be >= 1")
    if e > MAX_E:
        raise ResourceLimit(f"e = {e} exceeds the guardrail {MAX_E}")
    num = t.numerator * p_value**e
    return -(-num // t.denominator)


def trace_image_exponent(a: int, b: int, q: int) -> int:
    """Exponent of Phi(x^(a*b/q) * A') in one coordinate, found by scanning residues.

    ``Phi`` sends x^(k/q) to x^((k - q + 1)/q) when that is a non-negative
    integer power and to 0 otherwise; the image of the A'-module generated by
    x^(a b / q) is generated by the smallest surviving power.
    """
    best = None
    for c in range(q):
        k = a * b + c
        if (k + 1) % q == 0:
            val = (k + 1) // q - 1
            if val >= 0 and (best is None or val < best):
                best = val
    if best is None:  # pragma: no cover - some residue always survives
        raise SympowError("no surviving monomial")
    return best


def sharp_test_ideal_trace(model: MixedModel, f: SncMonomial, b: int, e: int) -> MonomialIdeal:
    """tau^sharp(A, [f]^(b/p^e)) computed as Phi(f^(b/p^e) A') over A' = A[x^(1/p^e)]."""
    _check(model, f)
    if e > MAX_E:
        raise ResourceLimit(f"e = {e} exceeds the guardrail {MAX_E}")
    q = model.p_value**e
    if q > 10**7:
        raise ResourceLimit("residue scan too large; lower e")
    return MonomialIdeal.principal(model.ring, [trace_image_exponent(a, b, q) for a in f.exponents])


def snc_test_ideal_via_trace(model: MixedModel, f: SncMonomial, t) -> MonomialIdeal:
    """Stabilized test ideal through the trace route at t + eps = (ceil(t p^e) + 1) / p^e.

    ``e`` is chosen so that eps < 1 / (max a * denominator(t)), which keeps
    every floor(a_i (t + eps)) equal to floor(a_i t).
    """
    t = _exponent(t)
    amax = max(f.exponents, default=0) or 1
    e = 1
    while model.p_value**e <= 2 * amax * t.denominator:
        e += 1
    b = ceil_pe_exponent(t, e, model.p_value) + 1
    return sharp_test_ideal_trace(model, f, b, e)


def jump_epsilon(f: SncMonomial, t) -> Fraction:
    """Largest eps such that tau([f]^t) = tau([f]^(t + eps')) for all eps' < eps."""
    t = _exponent(t)
    pos = [a for a in f.exponents if a > 0]
    if not pos:
        return Fraction(10**9)
    dist = min(floor(a * t) + 1 - a * t for a in pos)
    return Fraction(dist) / max(pos)


# -- property checks ------------------------------------------------------------------

PROPERTIES = ("A-containment", "A-exponent-monotone", "B-unambiguity", "C-not-too-small", "E-subadditivity")


@dataclass
class PropertyReport:
    prop: str
    passed: bool
    lhs: MonomialIdeal
    rhs: MonomialIdeal
    relation: str  # "subset" or "equal"
    witnesses: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def summary(self) -> str:
        rel = "==" if self.relation == "equal" else "<="
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.prop}: {self.lhs} {rel} {self.rhs}: {verdict}"


def _subset_report(prop, lhs, rhs, params) -> PropertyReport:
    missing = rhs.non_members(lhs)
    return PropertyReport(prop, not missing, lhs, rhs, "subset", missing, params)


def verify_property(model: MixedModel, prop: str, f: SncMonomial, g: SncMonomial | None = None,
                    **params) -> PropertyReport:
    """Evaluate both sides of a property with :func:`snc_test_ideal` and compare exactly.

    Parameters per property:

    * ``A-containment``: ``g`` with f | g, ``t``.  tau(g^t) <= tau(f^t).
    * ``A-exponent-monotone``: ``t <= t2``.  tau(f^t2) <= tau(f^t).
    * ``B-unambiguity``: ``n``, ``t``.  tau((f^n)^t) == tau(f^(nt)).
    * ``C-not-too-small``: (f) <= tau(f^1).
    * ``E-subadditivity``: ``s``, ``t``: tau(f^(s+t)) <= tau(f^s) tau(f^t);
      or ``n``, ``t``: tau(f^(nt)) <= tau(f^t)^n.
    """
    if prop not in PROPERTIES:
        raise SympowError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    ring = model.ring
    if prop == "A-containment":
        if g is None or not f.divides(g):
            raise SympowError("A-containment needs g with f | g")
        t = params["t"]
        return _subset_report(prop, snc_test_ideal(model, g, t), snc_test_ideal(model, f, t), params)
    if prop == "A-exponent-monotone":
        t, t2 = Fraction(params["t"]), Fraction(params["t2"])
        if t2 < t:
            raise SympowError("A-exponent-monotone needs t <= t2")
        return _subset_report(prop, snc_test_ideal(model, f, t2), snc_test_ideal(model, f, t), params)
    if prop == "B-unambiguity":
        n, t = int(params["n"]), Fraction(params["t"])
        if n < 1:
            raise SympowError("B-unambiguity needs n >= 1")
        lhs = snc_test_ideal(model, f**n, t)
        rhs = snc_test_ideal(model, f, n * t)
        witnesses = [] if lhs == rhs else sorted(lhs.exponents ^ rhs.exponents)
        return PropertyReport(prop, lhs == rhs, lhs, rhs, "equal", witnesses, params)
    if prop == "C-not-too-small":
        lhs = MonomialIdeal.principal(ring, f.exponents)
        return _subset_report(prop, lhs, snc_test_ideal(model, f, 1), params)
    # E-subadditivity
    t = Fraction(params["t"])
    if "n" in params:
        n = int(params["n"])
        lhs = snc_test_ideal(model, f, n * t)
        rhs = snc_test_ideal(model, f, t) ** n
    else:
        s = Fraction(params["s"])
        lhs = snc_test_ideal(model, f, s + t)
        rhs = snc_test_ideal(model, f, s) * snc_test_ideal(model, f, t)
    return _subset_report(prop, lhs, rhs, params)


def compare_with_multiplier(model: MixedModel, f: SncMonomial, t) -> PropertyReport:
    """tau(f^t) * A[1/p] <= J((f A[1/p])^t), with p set to 1 on both sides."""
    xr = model.x_ring
    tau = snc_test_ideal(model, f, t).drop_variables([0], xr)
    fx = MonomialIdeal.principal(xr, f.exponents[1:])
    J = multiplier_ideal_monomial(fx, t)
    return _subset_report("multiplier-comparison", tau, J, {"t": Fraction(t)})
