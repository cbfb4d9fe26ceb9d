"""Homomorphism counts into a fixed catalog of finite groups.

A homomorphism from ⟨a, t | a^m, t a t⁻¹ a^(-b)⟩ to K is a pair (x, y) in
K² with x^m = e and y x y⁻¹ = x^b, so the count is a finite sum. Equal
count vectors mean the two groups cannot be told apart by any catalog
quotient; it says nothing beyond the catalog.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fiber import SemidirectZPresentation
from .groups import (
    ORACLE_CAP,
    FiniteGroupTable,
    OracleScaleError,
    _metacyclic,
    cyclic_group,
    dihedral_group,
    direct_product,
    symmetric_group,
)

CATALOG_VERSIONS = ("v1",)
DEFAULT_CATALOG = "v1"


class CatalogVersionError(ValueError):
    pass


@dataclass(frozen=True)
class TestGroupCatalog:
    version: str
    entries: tuple  # (name, FiniteGroupTable) pairs, fixed order

    __test__ = False  # not a pytest class

    def names(self):
        return [n for n, _ in self.entries]

    def __getitem__(self, name):
        for n, g in self.entries:
            if n == name:
                return g
        raise KeyError(name)


@lru_cache(maxsize=None)
def catalog(version=DEFAULT_CATALOG) -> TestGroupCatalog:
    if version != "v1":
        raise CatalogVersionError(f"unknown catalog version {version!r}")
    entries = [(f"Z/{n}", cyclic_group(n)) for n in range(1, 31)]
    # dihedral groups of order 2n for n = 2..12 (order 4 is the Klein group)
    entries += [(f"D{2 * n}", dihedral_group(n)) for n in range(2, 13)]
    entries += [(f"S{k}", symmetric_group(k)) for k in range(1, 6)]
    entries.append(("H(11,<4>)", _metacyclic(11, 4)))
    entries.append(("Z/11xZ/5", direct_product(cyclic_group(11), cyclic_group(5), name="Z/11xZ/5")))
    return TestGroupCatalog("v1", tuple(entries))


def hom_count(p: SemidirectZPresentation, K: FiniteGroupTable) -> int:
    if K.order > ORACLE_CAP:
        raise OracleScaleError("oracle scale exceeded")
    n, e = K.order, K.identity
    xs = np.flatnonzero(K.power_map(p.m) == e)
    xb = K.power_map(p.b)[xs]
    y = np.arange(n)[:, None]
    conj = K.table[K.table[y, xs[None, :]], K.inverses[y]]  # y x y⁻¹, shape (n, |xs|)
    return int(np.count_nonzero(conj == xb[None, :]))


@dataclass(frozen=True)
class Fingerprint:
    presentation: tuple  # (m, b)
    catalog_version: str
    counts: dict = field(hash=False)

    def to_json(self):
        m, b = self.presentation
        return {"presentation": {"m": m, "b": b}, "catalog_version": self.catalog_version,
                "counts": dict(self.counts)}

    def dumps(self):
        return json.dumps(self.to_json(), ensure_ascii=False)


def fingerprint(p: SemidirectZPresentation, c: TestGroupCatalog | None = None) -> Fingerprint:
    c = c or catalog()
    counts = {name: hom_count(p, g) for name, g in c.entries}
    return Fingerprint((p.m, p.b), c.version, counts)


@dataclass
class FingerprintComparison:
    equal: bool
    catalog_version: str
    diffs: dict  # name -> (count1, count2)

    def to_json(self):
        return {
            "equal": self.equal,
            "catalog_version": self.catalog_version,
            "verdict": (f"indistinguishable up to catalog version {self.catalog_version}"
                        if self.equal else "distinguished"),
            "diffs": {k: list(v) for k, v in self.diffs.items()},
        }


def compare_fingerprints(f1: Fingerprint, f2: Fingerprint) -> FingerprintComparison:
    if f1.catalog_version != f2.catalog_version:
        raise CatalogVersionError(f"catalog version mismatch: {f1.catalog_version} vs {f2.catalog_version}")
    names = list(f1.counts)
    diffs = {n: (f1.counts[n], f2.counts.get(n)) for n in names if f1.counts[n] != f2.counts.get(n)}
    return FingerprintComparison(not diffs, f1.catalog_version, diffs)
