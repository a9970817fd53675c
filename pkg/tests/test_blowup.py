import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympow import Ideal, MonomialIdeal, NotIntegral, Polynomial, PolyRing, SympowError
from sympow.blowup import (chart, integral_extension_chart, relative_canonical_maxideal, rees_presentation,
                           twisted_sections_maxideal)
from sympow.ideal import equals
from sympow.monomial import is_integral_over

R2 = PolyRing.from_spec("Q[x,y] grevlex")
R3 = PolyRing.from_spec("Q[x,y,z] grevlex")


def test_rees_principal_is_free():
    rees = rees_presentation(Ideal.parse(R2, "x"))
    assert rees.t_names == ("T1",)
    assert not rees.ideal.generators


def test_rees_maximal_ideal_plane():
    rees = rees_presentation(Ideal.parse(R2, "x, y"))
    assert equals(Ideal(rees.ring, rees.ideal.generators), Ideal.parse(rees.ring, "x*T2 - y*T1"))
    assert rees.is_t_homogeneous() and rees.substitution_vanishes()


def test_rees_maximal_ideal_space_is_minors():
    rees = rees_presentation(Ideal.parse(R3, "x, y, z"))
    minors = Ideal.parse(rees.ring, "x*T2 - y*T1, x*T3 - z*T1, y*T3 - z*T2")
    assert equals(Ideal(rees.ring, rees.ideal.generators), minors)
    assert rees.is_t_homogeneous() and rees.substitution_vanishes()


@pytest.mark.parametrize("gens", ["x^2, y", "x*y, y*z, x*z", "x^2 - y, z", "x^3, x*y, y^2"])
def test_rees_invariants(gens):
    rees = rees_presentation(Ideal.parse(R3, gens))
    assert rees.is_t_homogeneous() and rees.substitution_vanishes()


def test_rees_zero_raises():
    with pytest.raises(SympowError):
        rees_presentation(Ideal(R2, []))


def test_charts_of_maximal_ideals():
    plane = rees_presentation(Ideal.parse(R2, "x, y"))
    c1 = chart(plane, 1)
    assert c1.ring.variables == ("x", "y", "T2")
    assert equals(c1.ideal, Ideal.parse(c1.ring, "y - x*T2"))
    assert c1.relations_hold()
    space = rees_presentation(Ideal.parse(R3, "x, y, z"))
    c = chart(space, 1)
    assert equals(c.ideal, Ideal.parse(c.ring, "y - x*T2, z - x*T3"))
    assert c.relations_hold()
    with pytest.raises(SympowError):
        chart(space, 4)


def test_chart_of_principal_is_base():
    c = chart(rees_presentation(Ideal.parse(R2, "x*y")), 1)
    assert c.ring.variables == R2.variables and not c.generators


def test_plane_charts_glue():
    # on the overlap T1 = 1 / T2; clearing denominators each relation lands in the other chart
    rees = rees_presentation(Ideal.parse(R2, "x, y"))
    c1, c2 = chart(rees, 1), chart(rees, 2)
    for g in c2.generators:
        # g(x, y, T1) with T1 -> 1/T2, times T2^deg
        deg = max(e[2] for e in g.terms)
        terms = {(e[0], e[1], deg - e[2]): c for e, c in g.terms.items()}
        assert Polynomial(c1.ring, terms) in c1.ideal
    for g in c1.generators:
        deg = max(e[2] for e in g.terms)
        terms = {(e[0], e[1], deg - e[2]): c for e, c in g.terms.items()}
        assert Polynomial(c2.ring, terms) in c2.ideal


def test_integral_examples():
    J = MonomialIdeal.parse(R2, "x^2, y^2")
    rep = integral_extension_chart(J, (1, 1))
    assert rep.degree == 2 and rep.verified
    assert rep.equation[-1] == R2.parse("-x^2*y^2")
    assert [str(c.constant_term) for c in rep.charts] == ["-T2", "-T1"]
    assert integral_extension_chart(J, (2, 0)).degree == 1
    rep3 = integral_extension_chart(MonomialIdeal.parse(R2, "x^3, y^3"), R2.parse("x^2*y"))
    assert rep3.degree == 3 and rep3.verified
    assert rep3.equation[-1] == R2.parse("-x^6*y^3")


def test_integral_rejects_outside():
    with pytest.raises(NotIntegral):
        integral_extension_chart(MonomialIdeal.parse(R2, "x^2, y^2"), (1, 0))
    with pytest.raises(NotIntegral):
        integral_extension_chart(MonomialIdeal.parse(R2, "x^3, y^3"), (1, 1))


monomial_ideals = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any), min_size=1, max_size=3)


@given(monomial_ideals, st.tuples(st.integers(0, 5), st.integers(0, 5)))
@settings(max_examples=100)
def test_integral_random(exps, f):
    J = MonomialIdeal(R2, exps)
    if not is_integral_over(f, J):
        with pytest.raises(NotIntegral):
            integral_extension_chart(J, f)
        return
    rep = integral_extension_chart(J, f)
    assert rep.verified
    (an_exp,) = [e for e in rep.equation[-1].terms]
    assert (J ** rep.degree).contains_exponent(an_exp)


@pytest.mark.parametrize("d", range(1, 9))
def test_relative_canonical(d):
    assert relative_canonical_maxideal(d) == d - 1


def test_relative_canonical_range():
    for d in (0, 9):
        with pytest.raises(SympowError):
            relative_canonical_maxideal(d)


def test_twisted_sections():
    m2 = MonomialIdeal(PolyRing.from_spec("Q[x1,x2] grevlex"), [(1, 0), (0, 1)])
    assert twisted_sections_maxideal(2, 1, 2) == m2
    assert twisted_sections_maxideal(3, 2, 2).is_unit()
    assert twisted_sections_maxideal(3, 2, 3).gens() == MonomialIdeal(
        PolyRing.from_spec("Q[x1,x2,x3] grevlex"), [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).gens()
    for d in range(1, 6):
        # K = (d - 1) E and h >= d: sections lie in the maximal ideal
        assert not twisted_sections_maxideal(d, relative_canonical_maxideal(d), d).is_unit()
