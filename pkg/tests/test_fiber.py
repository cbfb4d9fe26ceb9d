from fractions import Fraction as F
from math import gcd

import numpy as np
import pytest

from conjpi1.datum import QuotientDatum, TorusPoint, extend_tau, family_datum
from conjpi1.fiber import (
    FiberElement,
    SemidirectZPresentation,
    SpecializationError,
    d1_section,
    fiber_product,
    presentation_abelianization,
    specialize_d1,
    verify_exactness,
)
from conjpi1.groups import cyclic_group, direct_product, metacyclic_pair, symmetric_group

from oracles import smith_torsion_oracle


def pt(*xs):
    return TorusPoint(tuple(F(x) for x in xs))


@pytest.fixture(scope="module")
def fp4():
    return fiber_product(family_datum(11, 4, 5))


def d2_datum():
    g = direct_product(cyclic_group(6), symmetric_group(3))
    gens = {6: pt("1/2", "1/3")}
    gens.update({j: pt(0, 0) for j in symmetric_group(3).minimal_generating_set()})
    return QuotientDatum(g, 2, extend_tau(g, 2, gens))


def test_family_generators(fp4):
    gens = fp4.generators()
    lattice_gen, kernel_gen = gens
    assert lattice_gen.ell == (F(1, 5),)
    assert fp4.datum.tau_of(lattice_gen.g) == pt("1/5")
    assert kernel_gen.ell == (0,)
    a, b = metacyclic_pair(fp4.gamma, kernel_gen.g)
    assert b == 1 and a != 0
    assert all(fp4.contains(x) for x in gens)


def test_membership(fp4):
    lift = fp4.lift(pt("1/5"))
    assert fp4.contains(FiberElement((F(1, 5),), lift))
    assert fp4.contains(FiberElement((F(6, 5),), lift))
    assert not fp4.contains(FiberElement((F(2, 5),), lift))
    assert not fp4.contains(FiberElement((F(1, 3),), lift))
    with pytest.raises(ValueError):
        fp4.element([F(2, 5)], lift)


def test_trivial_lambda_is_direct_product():
    g = symmetric_group(3)
    fp = fiber_product(QuotientDatum(g, 2, tuple(pt(0, 0) for _ in range(6))))
    assert fp.lattice.index == 1
    for x in range(6):
        assert fp.contains(FiberElement((F(3), F(-2)), x))
        assert not fp.contains(FiberElement((F(1, 2), F(0)), x))
    assert verify_exactness(fp).kernel_order == 6


@pytest.mark.parametrize("datum", [family_datum(11, 4, 5), d2_datum(), family_datum(13, 3)],
                         ids=["family-11-4", "d2", "family-13-3"])
def test_fiber_condition_closed_under_products(datum):
    fp = fiber_product(datum)
    rng = np.random.default_rng(1)
    for _ in range(1000):
        x, y = fp.random_element(rng), fp.random_element(rng)
        assert fp.contains(x) and fp.contains(y)
        assert fp.contains(fp.multiply(x, y))
        assert fp.contains(fp.inverse(x))
        assert fp.multiply(x, fp.inverse(x)) == fp.identity()


def test_specialize_examples():
    assert specialize_d1(fiber_product(family_datum(11, 4, 5))) == SemidirectZPresentation(11, 4)
    assert specialize_d1(fiber_product(family_datum(11, 9, 5))) == SemidirectZPresentation(11, 9)


def test_specialize_trivial_action_central_lambda():
    # Γ = Z/7 × Z/3 with Λ = Z/3 read off the central factor
    g = direct_product(cyclic_group(7), cyclic_group(3))
    D = QuotientDatum(g, 1, extend_tau(g, 1, {3: pt(0), 1: pt("1/3")}))
    p = specialize_d1(fiber_product(D))
    assert (p.m, p.b) == (7, 1)
    assert p.text() == "Z/7 × Z"


def test_specialize_errors():
    with pytest.raises(SpecializationError, match="d ≠ 1"):
        specialize_d1(fiber_product(d2_datum()))
    g = direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(3))
    # generators: (1,0,0)=6, (0,1,0)=3, (0,0,1)=1
    D = QuotientDatum(g, 1, extend_tau(g, 1, {6: pt(0), 3: pt(0), 1: pt("1/3")}))
    with pytest.raises(SpecializationError, match="kernel not cyclic"):
        specialize_d1(fiber_product(D))


@pytest.mark.parametrize("m,b", [(11, 4), (11, 9), (7, 2), (13, 3), (29, 2), (25, 6), (9, 2)])
def test_action_relation_in_fiber_product(m, b):
    fp = fiber_product(family_datum(m, b))
    p = specialize_d1(fp)
    r = fp.lam.order
    a_hat = FiberElement((F(0),), p.meta["kernel_generator"])
    t_hat = FiberElement((F(1, r),), p.meta["lift"])
    assert fp.conjugate(t_hat, a_hat) == fp.power(a_hat, p.b)
    assert p.b == b % m


@pytest.mark.parametrize("m,b", [(11, 4), (13, 3), (7, 2)])
def test_b_independent_of_lift(m, b):
    from conjpi1.fiber import action_exponent
    fp = fiber_product(family_datum(m, b))
    p = specialize_d1(fp)
    r = fp.lam.order
    lifts = fp.lifts(pt(F(1, r)))
    assert len(lifts) == m
    assert {action_exponent(fp, p.meta["kernel_generator"], g) for g in lifts} == {p.b}


@pytest.mark.parametrize("m,b", [(11, 4), (11, 9), (7, 3)])
def test_d1_section_is_hom(m, b):
    fp = fiber_product(family_datum(m, b))
    gamma0 = specialize_d1(fp).meta["lift"]
    r = fp.lam.order
    s = d1_section(fp, gamma0)
    rng = np.random.default_rng(7)
    for _ in range(100):
        l1, l2 = (F(int(x), r) for x in rng.integers(-40, 40, size=2))
        assert fp.contains(s(l1))
        assert fp.multiply(s(l1), s(l2)) == s(l1 + l2)


def test_presentation_abelianization_examples():
    assert presentation_abelianization(SemidirectZPresentation(11, 4)) == (1, [])
    assert presentation_abelianization(SemidirectZPresentation(11, 9)) == (1, [])
    assert presentation_abelianization(SemidirectZPresentation(9, 1)) == (1, [9])


def test_presentation_abelianization_random():
    rng = np.random.default_rng(3)
    seen = 0
    while seen < 20:
        m = int(rng.integers(2, 60))
        b = int(rng.integers(1, m))
        if gcd(b, m) != 1:
            continue
        seen += 1
        rank, torsion = presentation_abelianization(SemidirectZPresentation(m, b))
        assert rank == 1
        assert torsion == smith_torsion_oracle(m, b)


def test_verify_exactness_examples(fp4):
    rep = verify_exactness(fp4)
    assert rep.exact and rep.kernel_order == 11
    rep2 = verify_exactness(fiber_product(d2_datum()))
    assert rep2.exact and rep2.kernel_order == 6 and rep2.surjective


def test_presentation_rendering():
    p = SemidirectZPresentation(11, 4)
    assert p.text() == "⟨ a, t | a^11 = 1, t a t^-1 = a^4 ⟩"
    assert p.to_json() == {"m": 11, "b": 4}
    assert SemidirectZPresentation.from_json({"m": 11, "b": 15}) == p
    with pytest.raises(ValueError):
        SemidirectZPresentation(12, 4)
