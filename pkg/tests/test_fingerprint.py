from math import gcd

import numpy as np
import pytest

from conjpi1.fiber import SemidirectZPresentation as P
from conjpi1.fingerprint import (
    CatalogVersionError,
    Fingerprint,
    catalog,
    compare_fingerprints,
    fingerprint,
    hom_count,
)
from conjpi1.groups import (
    FiniteGroupTable,
    MetacyclicDatum,
    OracleScaleError,
    cyclic_group,
    dihedral_group,
    direct_product,
    make_metacyclic,
    symmetric_group,
)
from conjpi1.modular import cyclic_subgroup

from oracles import hom_count_metacyclic_pairs, hom_count_table


def test_catalog_contents():
    c = catalog("v1")
    names = c.names()
    assert names[:30] == [f"Z/{n}" for n in range(1, 31)]
    assert "D10" in names and "S5" in names and "H(11,<4>)" in names and "Z/11xZ/5" in names
    assert c["S5"].order == 120 and c["D4"].order == 4 and c["H(11,<4>)"].order == 55
    assert catalog("v1") is c
    with pytest.raises(CatalogVersionError):
        catalog("v2")
    with pytest.raises(KeyError):
        c["A5"]


def test_count_examples():
    assert hom_count(P(11, 4), cyclic_group(1)) == 1
    assert hom_count(P(11, 4), cyclic_group(5)) == 5
    assert hom_count(P(11, 4), symmetric_group(5)) == 120
    H = catalog()["H(11,<4>)"]
    assert hom_count(P(11, 4), H) == hom_count_metacyclic_pairs(11, 4, 11, [1, 4, 5, 9, 3]) == 165
    assert hom_count(P(11, 9), H) == 165


@pytest.mark.parametrize("m,b", [(11, 4), (11, 9), (7, 2), (9, 4), (13, 1), (5, 4)])
@pytest.mark.parametrize("n", [1, 2, 6, 11, 12, 22, 30])
def test_cyclic_targets_closed_form(m, b, n):
    # into abelian K: y is free and x must lie in K[gcd(m, b - 1)]
    assert hom_count(P(m, b), cyclic_group(n)) == n * gcd(n, gcd(m, b - 1))


@pytest.mark.parametrize("name", ["D6", "D10", "D22", "S3", "S4", "Z/11xZ/5", "H(11,<4>)"])
@pytest.mark.parametrize("m,b", [(11, 4), (11, 9), (11, 2), (5, 4), (3, 2)])
def test_against_table_oracle(name, m, b):
    K = catalog()[name]
    assert hom_count(P(m, b), K) == hom_count_table(m, b, K.table.tolist(), K.identity)


@pytest.mark.parametrize("K1,K2", [
    (cyclic_group(11), cyclic_group(5)),
    (symmetric_group(3), cyclic_group(4)),
    (dihedral_group(5), cyclic_group(2)),
    (make_metacyclic(MetacyclicDatum(11, cyclic_subgroup(11, 4))), cyclic_group(2)),
])
def test_multiplicative_on_products(K1, K2):
    for p in (P(11, 4), P(11, 9), P(5, 4), P(10, 3)):
        assert hom_count(p, direct_product(K1, K2)) == hom_count(p, K1) * hom_count(p, K2)


def test_catalog_product_entry_multiplicative():
    c = catalog()
    for p in (P(11, 4), P(11, 2), P(7, 3)):
        assert hom_count(p, c["Z/11xZ/5"]) == hom_count(p, c["Z/11"]) * hom_count(p, c["Z/5"])


def test_independent_of_B_generator():
    H4 = make_metacyclic(MetacyclicDatum(11, cyclic_subgroup(11, 4)))
    H3 = make_metacyclic(MetacyclicDatum(11, cyclic_subgroup(11, 3)))
    for p in (P(11, 4), P(11, 9), P(11, 2), P(5, 4)):
        assert hom_count(p, H4) == hom_count(p, H3)


def test_lower_bound_order():
    c = catalog()
    f = fingerprint(P(11, 4), c)
    for name, K in c.entries:
        assert f.counts[name] >= K.order


def test_m11_pair_equal():
    c = catalog()
    f4, f9 = fingerprint(P(11, 4), c), fingerprint(P(11, 9), c)
    cmp = compare_fingerprints(f4, f9)
    assert cmp.equal and cmp.diffs == {}
    assert cmp.to_json()["verdict"] == "indistinguishable up to catalog version v1"
    assert f4.counts == f9.counts


@pytest.mark.parametrize("m,b", [(11, 2), (13, 3), (7, 2)])
def test_distinguished_pairs(m, b):
    cmp = compare_fingerprints(fingerprint(P(11, 4)), fingerprint(P(m, b)))
    assert not cmp.equal
    assert cmp.to_json()["verdict"] == "distinguished"
    assert "H(11,<4>)" in cmp.diffs and cmp.diffs["H(11,<4>)"][0] == 165


def test_version_mismatch():
    f = fingerprint(P(11, 4))
    other = Fingerprint((11, 9), "v0", dict(f.counts))
    with pytest.raises(CatalogVersionError, match="catalog version mismatch"):
        compare_fingerprints(f, other)


def test_size_cap():
    with pytest.raises(OracleScaleError):
        hom_count(P(11, 4), cyclic_group(2001))


def test_json_shape():
    j = fingerprint(P(11, 4)).to_json()
    assert j["presentation"] == {"m": 11, "b": 4} and j["catalog_version"] == "v1"
    assert list(j["counts"]) == catalog().names()
    assert all(isinstance(v, int) for v in j["counts"].values())
    assert np.all(np.array(list(j["counts"].values())) > 0)


@pytest.mark.parametrize("name", ["D10", "S4", "H(11,<4>)"])
def test_count_invariant_under_relabeling(name):
    K = catalog()[name]
    perm = np.random.default_rng(11).permutation(K.order)
    inv = np.argsort(perm)
    # element i of K becomes perm[i]
    t = np.empty_like(K.table)
    t[np.ix_(perm, perm)] = perm[K.table]
    relabeled = FiniteGroupTable(t)
    assert relabeled.identity == perm[K.identity] and inv[relabeled.identity] == K.identity
    for p in (P(11, 4), P(11, 9), P(5, 4)):
        assert hom_count(p, relabeled) == hom_count(p, K)
