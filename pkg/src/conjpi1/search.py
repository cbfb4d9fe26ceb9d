"""Exhaustive search for conjugate pairs with non-isomorphic π₁."""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .modular import cyclic_subgroup, element_order, inverse_mod, units, UnitResidue


@dataclass(frozen=True, order=True)
class ExampleRecord:
    m: int
    b: int
    k: int
    B_generator: int  # smallest generator of ⟨b⟩
    r: int
    b_twisted: int

    def to_json(self):
        return {"m": self.m, "B_generator": self.B_generator, "r": self.r,
                "k": self.k, "b": self.b, "b_twisted": self.b_twisted}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def enumerate_examples(m_max: int):
    """All (m, b, k) with b ≠ 1 and b^(k⁻¹ mod r) ∉ {b, b⁻¹}, sorted by (m, b, k)."""
    out = []
    for m in range(3, m_max + 1):
        for b in units(m):
            if b == 1:
                continue
            r = element_order(UnitResidue(b, m))
            b_inv = inverse_mod(b, m)
            gen = cyclic_subgroup(m, b).generators()[0]
            for k in range(1, r):
                if gcd(k, r) != 1:
                    continue
                bt = pow(b, inverse_mod(k, r), m)
                if bt not in (b, b_inv):
                    out.append(ExampleRecord(m, b, k, gen, r, bt))
    return sorted(out)


def escaping_exponents(r: int):
    """Units j mod r outside {1, r-1}: twists that can leave the iso class of ⋊_b."""
    if r <= 2:
        return []
    return [j for j in range(1, r) if gcd(j, r) == 1 and j not in (1, r - 1)]


def order_constraint_report(m_max: int):
    """Which subgroup orders r allow a non-isomorphic twist, checked by enumeration.

    For each r, twisting b by k replaces it with b^j, j = k⁻¹ mod r; the iso
    class changes only if j ∉ {1, r-1}. The report covers every r ≤ 5 and every
    order occurring among units mod m ≤ m_max.
    """
    orders = set(range(1, 6))
    for m in range(2, m_max + 1):
        orders.update(element_order(UnitResidue(b, m)) for b in units(m))
    rows = {}
    for r in sorted(orders):
        rows[r] = {"escaping": escaping_exponents(r), "possible": bool(escaping_exponents(r))}
    small = [r for r in rows if r <= 4]
    bound = min(r for r, v in rows.items() if v["possible"])
    return {
        "orders": rows,
        "no_example_for": small if not any(rows[r]["possible"] for r in small) else [],
        "minimal_r": bound,
    }
