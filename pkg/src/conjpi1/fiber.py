"""π₁(G/Γ) as the fiber product π₁(T/Λ) ×_Λ Γ, and its d = 1 form (Z/m) ⋊_b Z."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from .datum import (
    PreimageLattice,
    QuotientDatum,
    TorusPoint,
    connecting_map,
    format_rational,
    lambda_group,
    preimage_lattice,
)
from .groups import kernel


class SpecializationError(ValueError):
    pass


@dataclass(frozen=True)
class FiberElement:
    ell: tuple  # lattice vector, Fractions
    g: int      # index into Γ

    def to_json(self, gamma=None):
        return {"ell": [format_rational(x) for x in self.ell],
                "g": self.g if gamma is None else gamma.label(self.g)}


class FiberProductGroup:
    """Pairs ``(ℓ, γ)`` with ``ℓ ∈ L``, ``γ ∈ Γ`` and ``ℓ mod 1 = τ(γ)``."""

    def __init__(self, datum: QuotientDatum):
        self.datum = datum
        self.gamma = datum.gamma
        self.d = datum.d
        self.lam, self.tau_to_lambda, self.lambda_points = lambda_group(datum)
        self.lattice: PreimageLattice = preimage_lattice(self.lambda_points, self.d)
        self.tau_kernel, self.tau_kernel_incl = kernel(self.tau_to_lambda)
        self._fibers = {}
        for x, p in enumerate(datum.tau):
            self._fibers.setdefault(p, []).append(x)

    # group law
    def identity(self):
        return FiberElement((Fraction(0),) * self.d, self.gamma.identity)

    def multiply(self, x: FiberElement, y: FiberElement) -> FiberElement:
        return FiberElement(tuple(a + b for a, b in zip(x.ell, y.ell)), self.gamma.mul(x.g, y.g))

    def inverse(self, x: FiberElement) -> FiberElement:
        return FiberElement(tuple(-a for a in x.ell), self.gamma.inv(x.g))

    def power(self, x: FiberElement, e: int) -> FiberElement:
        return FiberElement(tuple(e * a for a in x.ell), self.gamma.power(x.g, e))

    def conjugate(self, x, y):
        """``x y x⁻¹``."""
        return self.multiply(self.multiply(x, y), self.inverse(x))

    def contains(self, x: FiberElement) -> bool:
        if len(x.ell) != self.d or not 0 <= x.g < self.gamma.order:
            return False
        if not self.lattice.contains(x.ell):
            return False
        return connecting_map(self.lattice, x.ell) == self.datum.tau_of(x.g)

    def element(self, ell, g) -> FiberElement:
        x = FiberElement(tuple(Fraction(v) for v in ell), int(g))
        if not self.contains(x):
            raise ValueError(f"({ell}, {g}) violates the fiber condition")
        return x

    # structure
    def lifts(self, point: TorusPoint):
        """All γ with τ(γ) = point, in index order."""
        return list(self._fibers.get(point, ()))

    def lift(self, point: TorusPoint):
        hits = self.lifts(point)
        return hits[0] if hits else None

    def kernel_generators(self):
        """Generators of ker(τ) as Γ indices."""
        sub_gens = self.tau_kernel.minimal_generating_set()
        return [self.tau_kernel_incl(x) for x in sub_gens]

    def generators(self):
        gens = []
        for row in self.lattice.basis:
            g = self.lift(connecting_map(self.lattice, row))
            gens.append(FiberElement(tuple(row), g))
        zero = (Fraction(0),) * self.d
        gens += [FiberElement(zero, k) for k in self.kernel_generators()]
        return gens

    def random_element(self, rng, spread=5):
        coeffs = rng.integers(-spread, spread + 1, size=self.d)
        ell = [Fraction(0)] * self.d
        for c, row in zip(coeffs, self.lattice.basis):
            ell = [a + int(c) * b for a, b in zip(ell, row)]
        choices = self.lifts(connecting_map(self.lattice, ell))
        return FiberElement(tuple(ell), choices[int(rng.integers(len(choices)))])

    def summary(self):
        return {
            "d": self.d,
            "gamma_order": self.gamma.order,
            "lambda_order": self.lam.order,
            "lattice": self.lattice.to_json(),
            "lattice_index": self.lattice.index,
            "kernel_order": self.tau_kernel.order,
            "generators": [x.to_json(self.gamma) for x in self.generators()],
        }


def fiber_product(datum: QuotientDatum) -> FiberProductGroup:
    return FiberProductGroup(datum)


@dataclass(frozen=True)
class SemidirectZPresentation:
    """``⟨a, t | a^m = 1, t a t⁻¹ = a^b⟩`` with ``gcd(b, m) = 1``."""

    m: int
    b: int
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        object.__setattr__(self, "b", self.b % self.m)
        if gcd(self.b, self.m) != 1:
            raise ValueError(f"b = {self.b} is not a unit mod {self.m}")

    @property
    def b_inverse(self):
        return pow(self.b, -1, self.m) if self.m > 1 else 0

    def text(self):
        if self.b == 1 % self.m:
            return f"Z/{self.m} × Z"
        return f"⟨ a, t | a^{self.m} = 1, t a t^-1 = a^{self.b} ⟩"

    def to_json(self):
        return {"m": self.m, "b": self.b}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["m"]), int(d["b"]))


def specialize_d1(fp: FiberProductGroup) -> SemidirectZPresentation:
    """Read ``(m, b)`` off a d = 1 fiber product with cyclic ker(τ).

    The splitting lift of the lattice generator ``1/r`` is ``(1/r, γ₀)`` with
    γ₀ the smallest-index element with τ(γ₀) = 1/r; ``b`` is the exponent of
    conjugation by γ₀ on the kernel generator of smallest index.
    """
    if fp.d != 1:
        raise SpecializationError("d ≠ 1")
    r = fp.lam.order
    K, incl = fp.tau_kernel, fp.tau_kernel_incl
    m = K.order
    k_orders = K.element_orders()
    kgens = [incl(x) for x in range(m) if k_orders[x] == m]
    if not kgens:
        raise SpecializationError("kernel not cyclic")
    kgen = min(kgens)
    gamma0 = fp.lift(TorusPoint((Fraction(1, r),)))
    if gamma0 is None:
        raise SpecializationError("no lift exists")
    u = action_exponent(fp, kgen, gamma0)
    return SemidirectZPresentation(m, u, meta={
        "kernel_generator": kgen,
        "kernel_generator_label": fp.gamma.label(kgen),
        "lift": gamma0,
        "lift_label": fp.gamma.label(gamma0),
        "r": r,
        "note": "b is relative to the kernel generator; another generator choice gives b^u, same iso class",
    })


def action_exponent(fp: FiberProductGroup, kgen: int, lift: int) -> int:
    """Exponent ``u`` with ``lift · kgen · lift⁻¹ = kgen^u`` in Γ."""
    g = fp.gamma
    conj = g.mul(g.mul(lift, kgen), g.inv(lift))
    x = g.identity
    for u in range(g.order):
        if x == conj:
            return u
        x = g.mul(x, kgen)
    raise SpecializationError("conjugate is not a power of the kernel generator")


def presentation_abelianization(p: SemidirectZPresentation):
    """``(free rank, torsion invariant factors)`` via the Smith form of the relation matrix.

    Abelianizing gives relations ``m·a = 0`` and ``(b - 1)·a = 0`` on the
    generators ``(a, t)``.
    """
    rel = Matrix([[p.m, 0], [p.b - 1, 0]])
    diag = [int(x) for x in invariant_factors(rel)]
    nonzero = [x for x in diag if x != 0]
    rank = 2 - len(nonzero)
    torsion = [abs(x) for x in nonzero if abs(x) > 1]
    return rank, torsion


@dataclass
class ExactnessReport:
    surjective: bool
    basis_lifts: list
    kernel_is_tau_kernel: bool
    kernel_order: int
    lattice_index_ok: bool
    failures: list

    @property
    def exact(self):
        return self.surjective and self.kernel_is_tau_kernel and self.lattice_index_ok and not self.failures


def verify_exactness(fp: FiberProductGroup) -> ExactnessReport:
    """Check that projection to L is onto with kernel exactly {0} × ker(τ).

    The kernel is found two ways: elements γ for which ``(0, γ)`` satisfies
    the fiber condition, against the kernel of the Γ -> Λ hom.
    """
    failures = []
    lifts = []
    for row in fp.lattice.basis:
        g = fp.lift(connecting_map(fp.lattice, row))
        lifts.append((row, g))
        if g is None:
            failures.append(("basis vector without lift", row))
    surjective = all(g is not None for _, g in lifts)
    zero = (Fraction(0),) * fp.d
    by_fiber = {x for x in range(fp.gamma.order) if fp.contains(FiberElement(zero, x))}
    by_hom = {fp.tau_kernel_incl(x) for x in range(fp.tau_kernel.order)}
    if by_fiber != by_hom:
        failures.append(("kernel mismatch", sorted(by_fiber ^ by_hom)))
    index_ok = fp.lattice.index == fp.lam.order
    if not index_ok:
        failures.append(("lattice index", fp.lattice.index, fp.lam.order))
    return ExactnessReport(surjective, lifts, by_fiber == by_hom, len(by_fiber), index_ok, failures)


def d1_section(fp: FiberProductGroup, gamma0: int):
    """The set-theoretic section ``ℓ ↦ (ℓ, γ₀^(rℓ))`` of the projection to (1/r)Z."""
    r = fp.lam.order

    def section(ell):
        n = Fraction(ell) * r
        if n.denominator != 1:
            raise ValueError(f"{ell} is not in (1/{r})Z")
        return FiberElement((Fraction(ell),), fp.gamma.power(gamma0, int(n)))

    return section
