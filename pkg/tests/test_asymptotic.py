import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympow import AxiomViolation, MonomialIdeal, PolyRing, SympowError, check_main_theorem
from sympow.asymptotic import (GradedSequence, asymptotic_ideal, build_generating_sets, main_theorem_pipeline,
                               verify_asymptotic_subadditivity)
from sympow.monomial import multiplier_ideal_monomial
from sympow.symbolic import symbolic_power_monomial

R2 = PolyRing.from_spec("Q[x,y] grevlex")
R3 = PolyRing.from_spec("Q[x,y,z] grevlex")
R4 = PolyRing.from_spec("Q[x,y,z,w] grevlex")
TRI = MonomialIdeal.parse(R3, "x*y, x*z, y*z")


def test_level_one_is_fresh_only():
    seq = build_generating_sets(GradedSequence.powers(MonomialIdeal.parse(R2, "x, y")), 2)
    assert all(g.is_fresh for g in seq.generating_sets[1])
    assert len(seq.generating_sets[1]) == 2


def test_products_of_powers():
    seq = build_generating_sets(GradedSequence.powers(MonomialIdeal.parse(R2, "x, y")), 2)
    products = [g.exponent for g in seq.generating_sets[2] if not g.is_fresh]
    # x*x, x*y, y*x, y*y with duplicates kept
    assert sorted(products) == [(0, 2), (1, 1), (1, 1), (2, 0)]
    assert seq.ideal_of_set(2) == seq.level(2)


def test_symbolic_level_two_has_fresh_xyz():
    seq = build_generating_sets(GradedSequence.symbolic_powers(TRI), 2)
    fresh = [g.exponent for g in seq.generating_sets[2] if g.is_fresh]
    products = {g.exponent for g in seq.generating_sets[2] if not g.is_fresh}
    assert (1, 1, 1) in fresh and (1, 1, 1) not in products


def test_axiom_violation():
    bad = GradedSequence(R2, lambda n: MonomialIdeal(R2, [(n * n, 0)]), "bad")
    with pytest.raises(AxiomViolation):
        build_generating_sets(bad, 3)
    # x * x is not in a_2 = (x^4)
    assert bad.check_axiom(1, 1) == [(2, 0)]
    assert GradedSequence.powers(TRI).check_axiom(1, 2) == []


def test_level_guardrail():
    with pytest.raises(SympowError):
        build_generating_sets(GradedSequence.powers(TRI), 13)


@given(st.integers(0, 10**6))
@settings(max_examples=20)
def test_shuffle_invariance(seed):
    plain = build_generating_sets(GradedSequence.symbolic_powers(TRI), 4)
    shuffled = build_generating_sets(GradedSequence.symbolic_powers(TRI), 4, shuffle_seed=seed)
    for m in range(1, 5):
        assert plain.ideal_of_set(m) == shuffled.ideal_of_set(m)
        tags = [g.tag[0] for g in shuffled.generating_sets[m]]
        assert set(tags) <= {"fresh", "product"}


monomial_ideals = st.lists(st.tuples(*[st.integers(0, 3)] * 3).filter(any), min_size=1, max_size=3).map(
    lambda es: MonomialIdeal(R3, es))


@given(monomial_ideals, st.integers(1, 3))
@settings(max_examples=40)
def test_powers_stabilize_at_once(M, n):
    res = asymptotic_ideal(GradedSequence.powers(M), n)
    assert res.l_star == 1
    assert res.ideal == multiplier_ideal_monomial(M ** n, 1)


def test_unit_sequence():
    res = asymptotic_ideal(GradedSequence.constant_unit(R3), 3)
    assert res.ideal.is_unit() and res.l_star == 1


def test_symbolic_asymptotic_contains_level():
    res = asymptotic_ideal(GradedSequence.symbolic_powers(TRI), 2)
    assert res.ideal.contains(symbolic_power_monomial(TRI, 2))


def test_snc_oracle_principal_only():
    ring = PolyRing.from_spec("Q[p,x] grevlex")
    f = MonomialIdeal.parse(ring, "p^2*x^3")
    res = asymptotic_ideal(GradedSequence.powers(f), 1, oracle="snc-test")
    assert res.ideal == f
    with pytest.raises(SympowError):
        asymptotic_ideal(GradedSequence.powers(MonomialIdeal.parse(ring, "p, x")), 1, oracle="snc-test")
    with pytest.raises(SympowError):
        asymptotic_ideal(GradedSequence.powers(f), 1, oracle="nope")


def test_subadditivity_examples():
    assert verify_asymptotic_subadditivity(GradedSequence.powers(MonomialIdeal.parse(R2, "x, y")), 1, 3).passed
    assert verify_asymptotic_subadditivity(GradedSequence.symbolic_powers(TRI), 1, 2).passed
    rep = verify_asymptotic_subadditivity(GradedSequence.symbolic_powers(TRI), 2, 1)
    assert rep.passed and rep.lhs == rep.rhs


@given(monomial_ideals, st.integers(1, 2), st.integers(1, 3))
@settings(max_examples=30)
def test_subadditivity_random(M, n, m):
    assert verify_asymptotic_subadditivity(GradedSequence.powers(M), n, m).passed


@pytest.mark.parametrize("m", [1, 2, 3])
def test_pipeline_triangle(m):
    rep = main_theorem_pipeline(TRI, m)
    assert rep.h == 2 and rep.holds
    assert [link.level for link in rep.links][-1] == "endpoint-exact"
    assert all(link.level == "oracle-level" for link in rep.links[:-1])


def test_pipeline_other_examples():
    assert main_theorem_pipeline(MonomialIdeal.parse(R4, "x*y, z*w"), 2).holds
    principal = main_theorem_pipeline(MonomialIdeal.parse(R3, "x"), 2)
    assert principal.h == 1 and principal.holds
    assert principal.links[-1].lhs == principal.links[-1].rhs


@pytest.mark.parametrize("gens", ["x*y, x*z, y*z", "x*y*z", "x, y*z", "x*y, z*w", "x*y, y*z, z*w"])
def test_pipeline_endpoint_matches_direct_check(gens):
    ring = R4 if "w" in gens else R3
    I = MonomialIdeal.parse(ring, gens)
    for m in (1, 2):
        assert main_theorem_pipeline(I, m).links[-1].passed == check_main_theorem(I, m).holds
