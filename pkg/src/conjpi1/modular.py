"""Residue arithmetic in Z/mZ and its unit group.

Everything here is exact integer arithmetic on small moduli. Values are
normalized into ``[0, m)`` on construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class NotInvertibleError(ValueError):
    pass


class NotInSubgroupError(ValueError):
    pass


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other):
        if not isinstance(other, Residue) or other.modulus != self.modulus:
            raise ValueError("arithmetic only between residues of equal modulus")

    def __add__(self, other):
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __mul__(self, other):
        self._check(other)
        return type(self)(self.value * other.value, self.modulus)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"


@dataclass(frozen=True, repr=False)
class UnitResidue(Residue):
    """A residue coprime to its modulus."""

    def __post_init__(self):
        super().__post_init__()
        if gcd(self.value, self.modulus) != 1:
            raise NotInvertibleError(f"{self.value} is not invertible mod {self.modulus}")


@dataclass(frozen=True)
class CyclicUnitSubgroup:
    modulus: int
    generator: UnitResidue
    order: int
    elements: tuple[int, ...]  # sorted

    def __contains__(self, x) -> bool:
        return int(x) % self.modulus in self.elements

    def powers(self) -> list[int]:
        """Elements listed as generator^0, generator^1, ..."""
        out, x = [], 1 % self.modulus
        for _ in range(self.order):
            out.append(x)
            x = x * self.generator.value % self.modulus
        return out

    def generators(self) -> list[int]:
        """All elements that generate the subgroup, sorted."""
        pw = self.powers()
        return sorted(pw[j] for j in range(self.order) if gcd(j, self.order) == 1)


def mod_pow(x: Residue, e: int) -> Residue:
    if e < 0:
        raise ValueError("exponent must be >= 0; invert first")
    m = x.modulus
    result, base = 1 % m, x.value
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return type(x)(result, m)


def mod_inverse(x) -> UnitResidue:
    if not isinstance(x, Residue):
        raise TypeError("expected a Residue")
    m = x.modulus
    if gcd(x.value, m) != 1:
        raise NotInvertibleError(f"{x.value} not invertible mod {m}")
    # extended Euclid
    old_r, r = x.value, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return UnitResidue(old_s, m)


def inverse_mod(a: int, m: int) -> int:
    """Integer convenience wrapper around :func:`mod_inverse`."""
    return mod_inverse(UnitResidue(a, m)).value


def element_order(x: UnitResidue) -> int:
    if gcd(x.value, x.modulus) != 1:
        raise NotInvertibleError(f"{x.value} not invertible mod {x.modulus}")
    m = x.modulus
    one = 1 % m
    y, r = x.value, 1
    while y != one:
        y = y * x.value % m
        r += 1
    return r


def totient(m: int) -> int:
    return sum(1 for a in range(m) if gcd(a, m) == 1) if m > 1 else 1


def units(m: int) -> list[int]:
    return [a for a in range(m) if gcd(a, m) == 1] if m > 1 else [0]


def cyclic_subgroup(m: int, g) -> CyclicUnitSubgroup:
    g = g if isinstance(g, UnitResidue) else UnitResidue(int(g), m)
    if g.modulus != m:
        raise ValueError(f"generator has modulus {g.modulus}, expected {m}")
    r = element_order(g)
    sub = CyclicUnitSubgroup(m, g, r, ())
    return CyclicUnitSubgroup(m, g, r, tuple(sorted(sub.powers())))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def quadratic_residue_subgroup(p: int) -> CyclicUnitSubgroup:
    """Subgroup of nonzero squares mod an odd prime ``p``.

    The generator is the smallest square that generates the whole subgroup,
    which keeps the output deterministic.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    squares = sorted({x * x % p for x in range(1, p)})
    for g in squares:
        sub = cyclic_subgroup(p, g)
        if sub.order == len(squares):
            return sub
    raise AssertionError("unit group of a prime modulus is cyclic")  # pragma: no cover


def discrete_log(B: CyclicUnitSubgroup, x) -> int:
    """Smallest ``j >= 0`` with ``B.generator**j == x`` (linear scan)."""
    target = int(x) % B.modulus
    for j, y in enumerate(B.powers()):
        if y == target:
            return j
    raise NotInSubgroupError(f"{target} not in subgroup generated by {B.generator.value} mod {B.modulus}")
