"""Field automorphisms of C acting on the family datum through roots of unity.

Only the restriction ``σ(ζ) = ζ^k`` on μ_r matters for π₁, so σ is modeled
by the unit ``k mod r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .datum import DatumError, QuotientDatum, family_datum
from .modular import CyclicUnitSubgroup, UnitResidue, discrete_log, inverse_mod


@dataclass(frozen=True)
class CharacterEmbedding:
    """φ_b: B -> C* sending the marked generator ``b`` to ζ = exp(2πi/r)."""

    B: CyclicUnitSubgroup
    marked_generator: int

    def __post_init__(self):
        b = self.marked_generator % self.B.modulus
        object.__setattr__(self, "marked_generator", b)
        if b not in self.B.generators():
            raise ValueError(f"{b} does not generate the subgroup")

    @property
    def r(self):
        return self.B.order

    def __call__(self, beta) -> Fraction:
        """φ_b(β) as a point of Q/Z."""
        marked = CyclicUnitSubgroup(self.B.modulus, UnitResidue(self.marked_generator, self.B.modulus),
                                    self.r, self.B.elements)
        return Fraction(discrete_log(marked, beta), self.r)


@dataclass(frozen=True)
class GaloisRestriction:
    r: int
    k: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if gcd(self.k, self.r) != 1:
            raise ValueError(f"k = {self.k} is not coprime to r = {self.r}")
        object.__setattr__(self, "k", self.k % self.r)

    def __call__(self, q: Fraction) -> Fraction:
        """σ on μ_r, written additively: ζ^j -> ζ^(kj)."""
        return (self.k * q) % 1

    def to_json(self):
        return {"r": self.r, "k": self.k}


def twist_character(phi: CharacterEmbedding, sigma: GaloisRestriction) -> CharacterEmbedding:
    """σ∘φ_b = φ_b' with ``b' = b^(k⁻¹ mod r)``."""
    if sigma.r != phi.r:
        raise ValueError(f"order mismatch: σ acts on μ_{sigma.r}, B has order {phi.r}")
    m = phi.B.modulus
    j = inverse_mod(sigma.k, sigma.r) if sigma.r > 1 else 0
    return CharacterEmbedding(phi.B, pow(phi.marked_generator, j, m))


def conjugate_datum(datum: QuotientDatum, sigma: GaloisRestriction) -> QuotientDatum:
    """Datum of σX_{α,b} = X_{σ∘α, b'}: same Γ, τ rebuilt from the twisted character."""
    fam = datum.family
    if fam is None:
        raise DatumError("twist requires family datum")
    phi = twist_character(CharacterEmbedding(fam.B, fam.b), sigma)
    alpha = datum.meta.get("alpha", "alpha")
    new_alpha = alpha if sigma.k == 1 % sigma.r else f"sigma[k={sigma.k}]∘{alpha}"
    return family_datum(fam.m, phi.marked_generator, fam.r,
                        sl_degree_witness=datum.sl_degree_witness, alpha=new_alpha)
