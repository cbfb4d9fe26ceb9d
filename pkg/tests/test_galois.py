from fractions import Fraction as F
from math import gcd

import pytest

from conjpi1.datum import DatumError, QuotientDatum, TorusPoint, family_datum
from conjpi1.fiber import fiber_product, specialize_d1
from conjpi1.galois import CharacterEmbedding, GaloisRestriction, conjugate_datum, twist_character
from conjpi1.groups import cyclic_group
from conjpi1.modular import cyclic_subgroup

from oracles import twist_by_evaluation


def twisted_b(m, b, k):
    B = cyclic_subgroup(m, b)
    return twist_character(CharacterEmbedding(B, b), GaloisRestriction(B.order, k)).marked_generator


@pytest.mark.parametrize("k,expected", [(1, 4), (2, 9), (3, 5), (4, 3)])
def test_twist_examples(k, expected):
    assert twisted_b(11, 4, k) == expected


def test_k_not_coprime():
    with pytest.raises(ValueError, match="k = 5 is not coprime"):
        GaloisRestriction(5, 5)


def test_embedding_requires_generator():
    with pytest.raises(ValueError):
        CharacterEmbedding(cyclic_subgroup(11, 4), 1)


def test_character_values():
    phi = CharacterEmbedding(cyclic_subgroup(11, 4), 4)
    assert [phi(x) for x in (1, 4, 5, 9, 3)] == [F(j, 5) for j in range(5)]


def test_conjugate_datum_example():
    D = family_datum(11, 4, 5)
    Dt = conjugate_datum(D, GaloisRestriction(5, 2))
    assert Dt.family.b == 9 and Dt.gamma == D.gamma
    assert Dt.meta["alpha"] == "sigma[k=2]∘alpha"
    assert specialize_d1(fiber_product(Dt)).b == 9
    # the twisted τ is σ∘τ on the shared Γ
    sigma = GaloisRestriction(5, 2)
    assert all(Dt.tau[x] == TorusPoint((sigma(D.tau[x].coords[0]),)) for x in range(D.gamma.order))
    assert conjugate_datum(D, GaloisRestriction(5, 1)).meta["alpha"] == "alpha"


def test_twist_requires_family():
    g = cyclic_group(3)
    D = QuotientDatum(g, 1, tuple(TorusPoint((F(j, 3),)) for j in range(3)))
    with pytest.raises(DatumError, match="twist requires family datum"):
        conjugate_datum(D, GaloisRestriction(3, 2))


CASES = [(11, 4), (11, 3), (7, 2), (13, 3), (13, 9), (29, 7), (31, 2)]


@pytest.mark.parametrize("m,b", CASES)
def test_defining_property_and_oracle(m, b):
    B = cyclic_subgroup(m, b)
    r = B.order
    phi = CharacterEmbedding(B, b)
    for k in (k for k in range(1, r) if gcd(k, r) == 1):
        sigma = GaloisRestriction(r, k)
        bt = twist_character(phi, sigma).marked_generator
        assert sigma(phi(bt)) == F(1, r)
        assert twist_by_evaluation(m, B.elements, b, k, r) == [bt]


@pytest.mark.parametrize("m,b", CASES)
def test_composition_and_inverse(m, b):
    r = cyclic_subgroup(m, b).order
    ks = [k for k in range(1, r) if gcd(k, r) == 1]
    for k1 in ks:
        for k2 in ks:
            assert twisted_b(m, twisted_b(m, b, k1), k2) == twisted_b(m, b, k1 * k2)
        kinv = pow(k1, -1, r) if r > 1 else 0
        assert twisted_b(m, twisted_b(m, b, k1), kinv) == b % m


@pytest.mark.parametrize("m,b", CASES)
def test_orbit_is_generator_set(m, b):
    B = cyclic_subgroup(m, b)
    r = B.order
    orbit = {twisted_b(m, b, k) for k in range(1, r) if gcd(k, r) == 1}
    assert orbit == set(B.generators())
    assert twisted_b(m, b, r - 1) == pow(b, -1, m)


@pytest.mark.parametrize("b", [3, 4, 5, 9])
def test_pipeline_matches_twist_for_m11(b):
    D = family_datum(11, b, 5)
    for k in range(1, 5):
        Dt = conjugate_datum(D, GaloisRestriction(5, k))
        assert specialize_d1(fiber_product(Dt)).b == twisted_b(11, b, k)
