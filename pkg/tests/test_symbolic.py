import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympow import (Ideal, InexactSymbolicPower, MonomialIdeal, PolyRing, SympowError, check_main_theorem,
                    kernel_of_map, symbolic_power_prime, symbolic_power_squarefree)
from sympow.ideal import contains, equals, ideal_power, intersect
from sympow.symbolic import symbolic_power_monomial, symbolic_power_squarefree_gb

R3 = PolyRing.from_spec("Q[x,y,z] grevlex")
R4 = PolyRing.from_spec("Q[x,y,z,w] grevlex")
TRI = MonomialIdeal.parse(R3, "x*y, x*z, y*z")
CURVE = "y^2 - x*z, x^3 - y*z, z^2 - x^2*y"


def curve_prime():
    return Ideal.parse(R3, CURVE, declared_height=2, primality="asserted-prime")


def squarefree_ideals():
    subsets = [frozenset(s) for k in range(1, 5) for s in itertools.combinations(range(4), k)]
    return st.lists(st.sampled_from(subsets), min_size=1, max_size=4).map(
        lambda gs: MonomialIdeal(R4, [tuple(int(i in g) for i in range(4)) for g in gs]))


def test_triangle_second_symbolic_power():
    res = symbolic_power_squarefree(TRI, 2)
    assert res.exact
    assert R3.parse("x*y*z") in res.ideal
    assert R3.parse("x*y*z") not in ideal_power(TRI.to_ideal(), 2)
    pieces = [ideal_power(Ideal.parse(R3, g), 2) for g in ("x, y", "x, z", "y, z")]
    assert equals(res.ideal, intersect(intersect(pieces[0], pieces[1]), pieces[2]))


def test_trivial_cases():
    assert symbolic_power_squarefree(TRI, 1).monomial == TRI
    x = MonomialIdeal.parse(R3, "x")
    for n in range(1, 5):
        assert symbolic_power_squarefree(x, n).monomial == MonomialIdeal.parse(R3, f"x^{n}")
    assert symbolic_power_monomial(TRI, 0).is_unit()
    with pytest.raises(SympowError):
        symbolic_power_squarefree(MonomialIdeal.parse(R3, "x^2"), 2)


def test_curve_is_the_kernel():
    T = PolyRing.from_spec("Q[t] grevlex")
    t = T.parse("t")
    ker = kernel_of_map(("x", "y", "z"), T, [t**3, t**4, t**5])
    got = Ideal(ker.ring, ker.generators)
    assert equals(got, Ideal.parse(ker.ring, CURVE))


def test_curve_symbolic_square_is_bigger():
    Q = curve_prime()
    Q2 = ideal_power(Q, 2)
    sym = symbolic_power_prime(Q, 2, R3.parse("x"), exact=True)
    assert sym.exact
    assert contains(sym.ideal, Q2) and not contains(Q2, sym.ideal)
    sym4 = symbolic_power_prime(Q, 4, R3.parse("x"))
    assert sym4.certainty == "lower-bound"
    assert contains(Q2, sym4.ideal)


def test_complete_intersection_prime():
    Q = Ideal.parse(R3, "x, y", primality="asserted-prime", declared_height=2)
    for n in (1, 2, 3):
        assert equals(symbolic_power_prime(Q, n, R3.parse("z")).ideal, ideal_power(Q, n))


def test_prime_preconditions():
    with pytest.raises(SympowError):
        symbolic_power_prime(Ideal.parse(R3, "x, y"), 2, R3.parse("z"))
    with pytest.raises(SympowError):
        symbolic_power_prime(curve_prime(), 2, R3.parse("y^2 - x*z"))


def test_main_theorem_examples():
    assert check_main_theorem(TRI, 2).holds
    rep = check_main_theorem(TRI, 1)
    assert rep.holds and rep.h == 2
    # with h = 1 the containment I^(2) <= I^2 fails and xyz is the witness
    sharp = check_main_theorem(TRI, 2, h=1)
    assert not sharp.holds
    assert R3.parse("x*y*z") in sharp.witnesses
    x = MonomialIdeal.parse(R3, "x")
    assert all(check_main_theorem(x, m).holds for m in (1, 2, 3))


def test_main_theorem_on_prime():
    assert check_main_theorem(curve_prime(), 1, witness=R3.parse("x"), exact=True).holds
    with pytest.raises(InexactSymbolicPower):
        check_main_theorem(curve_prime(), 1, witness=R3.parse("x"))
    assert check_main_theorem(curve_prime(), 1, witness=R3.parse("x"), allow_inexact=True).certainty == \
        "lower-bound"


@given(squarefree_ideals(), st.integers(1, 3))
@settings(max_examples=60)
def test_ordinary_inside_symbolic(I, n):
    sym = symbolic_power_squarefree(I, n).monomial
    assert sym.contains(I ** n)


@given(squarefree_ideals(), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=60)
def test_graded_axiom(I, a, b):
    sa, sb, sab = (symbolic_power_squarefree(I, k).monomial for k in (a, b, a + b))
    assert sab.contains(sa * sb)


@given(squarefree_ideals(), st.integers(1, 3), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_prime_order_invariance(I, n, rnd):
    from sympow.monomial import minimal_primes_squarefree

    order = list(range(len(minimal_primes_squarefree(I))))
    rnd.shuffle(order)
    assert symbolic_power_monomial(I, n, order) == symbolic_power_monomial(I, n)


@given(squarefree_ideals(), st.integers(1, 2))
@settings(max_examples=25)
def test_groebner_route_agrees(I, n):
    assert equals(symbolic_power_squarefree_gb(I, n), symbolic_power_squarefree(I, n).ideal)


@given(squarefree_ideals(), st.integers(1, 3))
@settings(max_examples=60)
def test_main_theorem_holds(I, m):
    assert check_main_theorem(I, m).holds
