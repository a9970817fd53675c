import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import minimal_covers_brute, multiplier_member_lp, newton_member_lp
from sympow import MonomialIdeal, NotSquarefree, PolyRing, SympowError
from sympow.hull import minimal_points, newton_facets
from sympow.monomial import (big_height, height, integral_closure, is_integral_over, minimal_primes_squarefree,
                             minimal_vertex_covers, multiplier_ideal_monomial, newton_polyhedron)

R2 = PolyRing.from_spec("Q[x,y] grevlex")
R3 = PolyRing.from_spec("Q[x,y,z] grevlex")
R4 = PolyRing.from_spec("Q[x,y,z,w] grevlex")


def M(text, ring=R3):
    return MonomialIdeal.parse(ring, text)


def monomial_ideals(d, max_exp=4, max_gens=4):
    exp = st.tuples(*[st.integers(0, max_exp)] * d).filter(any)
    return st.lists(exp, min_size=1, max_size=max_gens).map(lambda es: MonomialIdeal(PolyRing.from_spec(
        f"Q[{','.join('xyzw'[:d])}] grevlex"), es))


def test_minimalize_and_arith():
    assert M("x^2, x^3*y, y") == M("x^2, y")
    assert (M("x") * M("y")) == M("x*y")
    assert (M("x, y") & M("y, z")) == M("y, x*z")
    assert M("x, y") ** 2 == M("x^2, x*y, y^2")
    assert M("x").contains(M("x*y"))
    assert not M("x*y").contains(M("x"))


def test_facets_of_staircase():
    # (x^2, y^2): one slanted facet u + v >= 2 plus the coordinate halfspaces
    facets = newton_facets([(2, 0), (0, 2)])
    assert ((1, 1), 2) in facets
    assert ((1, 0), 0) in facets and ((0, 1), 0) in facets


def test_facets_tight():
    gens = [(4, 0, 0), (0, 3, 0), (0, 0, 2), (1, 1, 1)]
    for w, b in newton_facets(gens):
        vals = [sum(a * c for a, c in zip(w, g)) for g in gens]
        assert min(vals) == b if b else min(vals) >= 0


def test_minimal_points():
    assert minimal_points([(1, 1), (2, 1), (0, 3), (1, 1)]) == [(1, 1), (0, 3)]


@given(monomial_ideals(3), st.tuples(*[st.integers(0, 5)] * 3))
@settings(max_examples=200)
def test_newton_membership_matches_lp(I, u):
    P = newton_polyhedron(I)
    assert P.contains(u) == newton_member_lp(u, sorted(I.exponents))


@given(monomial_ideals(3))
@settings(max_examples=100)
def test_every_slanted_facet_touches_a_generator(I):
    P = newton_polyhedron(I)
    for w, b in P.halfspaces:
        vals = [sum(a * c for a, c in zip(w, g)) for g in I.exponents]
        assert min(vals) >= b
        if b:
            assert min(vals) == b


def test_closure_examples():
    assert integral_closure(M("x^2, y^2", R2)) == M("x^2, x*y, y^2", R2)
    assert integral_closure(M("x^3, y^3", R2)) == M("x^3, x^2*y, x*y^2, y^3", R2)
    assert integral_closure(M("x^2, y^3", R2)) == M("x^2, x*y^2, y^3", R2)
    assert is_integral_over((1, 1), M("x^2, y^2", R2))
    assert not is_integral_over((1, 0), M("x^2, y^2", R2))


@given(monomial_ideals(3, max_exp=3))
@settings(max_examples=60)
def test_closure_idempotent_and_larger(I):
    C = integral_closure(I)
    assert C.contains(I)
    assert integral_closure(C) == C


def test_multiplier_examples():
    # J((x^a)^t) = (x^floor(a t)) in one variable
    R1 = PolyRing.from_spec("Q[x] grevlex")
    for a, t in [(3, Fraction(1, 2)), (2, Fraction(1)), (5, Fraction(2, 5)), (1, Fraction(7, 3))]:
        J = multiplier_ideal_monomial(MonomialIdeal(R1, [(a,)]), t)
        assert J == MonomialIdeal(R1, [(int(a * t),)])
    # (x,y)^t: lct 2
    assert multiplier_ideal_monomial(M("x, y", R2), Fraction(19, 10)).is_unit()
    assert multiplier_ideal_monomial(M("x, y", R2), 2) == M("x, y", R2)
    assert multiplier_ideal_monomial(M("x^2, y^3", R2), 1) == M("x, y", R2)
    assert multiplier_ideal_monomial(M("x^2, y^3", R2), Fraction(4, 5)).is_unit()
    assert multiplier_ideal_monomial(M("x^2, y^3", R2), Fraction(5, 6)) == M("x, y", R2)
    assert multiplier_ideal_monomial(M("x*y", R2), 0).is_unit()
    with pytest.raises(SympowError):
        multiplier_ideal_monomial(M("x*y", R2), -1)


@given(monomial_ideals(2), st.fractions(min_value=0, max_value=3, max_denominator=6),
       st.tuples(st.integers(0, 6), st.integers(0, 6)))
@settings(max_examples=200)
def test_multiplier_matches_lp(I, t, v):
    J = multiplier_ideal_monomial(I, t)
    assert J.contains_exponent(v) == multiplier_member_lp(v, sorted(I.exponents), t)


@given(monomial_ideals(3, max_exp=3, max_gens=3), st.fractions(min_value=0, max_value=2, max_denominator=4),
       st.fractions(min_value=0, max_value=2, max_denominator=4))
@settings(max_examples=200)
def test_multiplier_formal_properties(I, s, t):
    Js, Jt = multiplier_ideal_monomial(I, s), multiplier_ideal_monomial(I, t)
    lo, hi = sorted([s, t])
    assert multiplier_ideal_monomial(I, lo).contains(multiplier_ideal_monomial(I, hi))
    assert (Js * Jt).contains(multiplier_ideal_monomial(I, s + t))
    assert multiplier_ideal_monomial(I, 1).contains(I)
    assert multiplier_ideal_monomial(I ** 2, t) == multiplier_ideal_monomial(I, 2 * t)


def test_minimal_primes_examples():
    tri = M("x*y, x*z, y*z")
    assert minimal_primes_squarefree(tri) == [("x", "y"), ("x", "z"), ("y", "z")]
    assert height(tri) == big_height(tri) == 2
    mixed = M("x*y, x*z, x*w", R4)
    assert minimal_primes_squarefree(mixed) == [("x",), ("y", "z", "w")]
    assert height(mixed) == 1 and big_height(mixed) == 3
    with pytest.raises(NotSquarefree):
        minimal_primes_squarefree(M("x^2"))


@given(st.lists(st.frozensets(st.integers(0, 3), min_size=1, max_size=3), min_size=1, max_size=4))
@settings(max_examples=200)
def test_vertex_covers_match_brute_force(supports):
    exps = {tuple(int(i in s) for i in range(4)) for s in supports}
    I = MonomialIdeal(R4, exps)
    got = sorted((frozenset(c) for c in minimal_vertex_covers(I)), key=sorted)
    reduced = [frozenset(i for i, a in enumerate(e) if a) for e in I.exponents]
    assert got == minimal_covers_brute(reduced, 4)


def test_exhaustive_small_squarefree():
    # all squarefree ideals in 3 variables: height <= big height <= number of variables
    subsets = [s for k in range(1, 4) for s in itertools.combinations(range(3), k)]
    for r in range(1, 4):
        for gens in itertools.combinations(subsets, r):
            I = MonomialIdeal(R3, [tuple(int(i in g) for i in range(3)) for g in gens])
            assert 1 <= height(I) <= big_height(I) <= 3
