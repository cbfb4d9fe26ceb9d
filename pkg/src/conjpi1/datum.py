"""Combinatorial data of a quotient G/Γ: Γ, τ: Γ -> (Q/Z)^d, and the lattice ε⁻¹(Λ).

Torsion points of a d-dimensional torus are stored as vectors of exact
rationals in [0, 1); the point ``q`` stands for the root of unity
``exp(2πiq)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .groups import FiniteGroupTable, GroupHom, HomomorphismError, _metacyclic
from .modular import CyclicUnitSubgroup, UnitResidue, cyclic_subgroup


class DatumError(ValueError):
    pass


class LatticeError(ValueError):
    pass


def parse_rational(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise DatumError(f"expected a rational string 'p/q', got {s!r}")
    num, _, den = s.partition("/")
    try:
        p, q = int(num), int(den or 1)
    except ValueError:
        raise DatumError(f"malformed rational {s!r}") from None
    if q <= 0:
        raise DatumError(f"denominator must be positive in {s!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(parse_rational(c) % 1 for c in self.coords))

    @classmethod
    def zero(cls, d):
        return cls((0,) * d)

    @property
    def d(self):
        return len(self.coords)

    def __add__(self, other):
        if other.d != self.d:
            raise DatumError("torus dimension mismatch")
        return TorusPoint(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return TorusPoint(tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        return TorusPoint(tuple(k * x for x in self.coords))

    def is_zero(self):
        return all(x == 0 for x in self.coords)

    def to_json(self):
        return [format_rational(x) for x in self.coords]

    def __repr__(self):
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


# integer Hermite normal form ------------------------------------------

def hnf(rows, d):
    """Row Hermite normal form of the integer lattice spanned by ``rows``.

    Returns the nonzero rows: upper triangular, positive pivots, entries
    above each pivot reduced into ``[0, pivot)``.
    """
    M = [list(map(int, r)) for r in rows if any(r)]
    out = []
    col = 0
    while M and col < d:
        # gcd-eliminate column ``col`` among the remaining rows
        while True:
            nz = [r for r in M if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(d):
                    r[j] -= q * piv[j]
            M = [r for r in M if any(r)]
        nz = [r for r in M if r[col] != 0]
        if nz:
            piv = nz[0]
            M.remove(piv)
            if piv[col] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        col += 1
    # reduce above pivots
    for i, row in enumerate(out):
        c = next(j for j in range(d) if row[j])
        for k in range(i):
            q = out[k][c] // row[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


@dataclass(frozen=True)
class PreimageLattice:
    """A lattice ``Z^d ⊆ L ⊂ Q^d`` with an HNF row basis."""

    d: int
    basis: tuple  # tuple of rows, each a tuple of Fractions

    @property
    def index(self) -> int:
        """``[L : Z^d]``, the reciprocal of the basis determinant."""
        det = Fraction(1)
        for i, row in enumerate(self.basis):
            det *= row[i]
        return int(1 / det)

    def coordinates(self, ell):
        """Integer coordinates of ``ell`` in the basis; raise if ``ell`` is not in L."""
        ell = [parse_rational(x) for x in ell]
        if len(ell) != self.d:
            raise LatticeError("dimension mismatch")
        coeffs = []
        rest = list(ell)
        for i, row in enumerate(self.basis):
            c = rest[i] / row[i]
            if c.denominator != 1:
                raise LatticeError(f"not a lattice element: {tuple(ell)}")
            coeffs.append(int(c))
            rest = [x - c * y for x, y in zip(rest, row)]
        return coeffs

    def contains(self, ell) -> bool:
        try:
            self.coordinates(ell)
        except LatticeError:
            return False
        return True

    def to_json(self):
        return {"d": self.d, "basis": [[format_rational(x) for x in row] for row in self.basis]}


def preimage_lattice(points, d) -> PreimageLattice:
    """Lattice generated by ``Z^d`` and rational lifts of the finite subgroup ``points``."""
    pts = {p if isinstance(p, TorusPoint) else TorusPoint(tuple(p)) for p in points}
    if any(p.d != d for p in pts):
        raise DatumError("point dimension does not match d")
    if TorusPoint.zero(d) not in pts:
        raise DatumError("point set is not closed: missing 0")
    den = lcm(1, *(x.denominator for p in pts for x in p.coords))
    ints = {tuple(int(x * den) for x in p.coords): p for p in pts}
    for u, p in ints.items():
        for v, q in ints.items():
            if tuple((x + y) % den for x, y in zip(u, v)) not in ints:
                raise DatumError(f"point set is not closed under addition: {p} + {q}")
    gens = [[den if i == j else 0 for j in range(d)] for i in range(d)]
    gens += [[int(x * den) for x in p.coords] for p in pts]
    H = hnf(gens, d)
    basis = tuple(tuple(Fraction(x, den) for x in row) for row in H)
    L = PreimageLattice(d, basis)
    if L.index != len(pts):
        raise LatticeError(f"index check failed: [L:Z^d] = {L.index} but |Λ| = {len(pts)}")
    return L


def connecting_map(L: PreimageLattice, ell) -> TorusPoint:
    """ε restricted to L: reduce a lattice vector mod 1."""
    L.coordinates(ell)
    return TorusPoint(tuple(ell))


# the datum ---------------------------------------------------------------

@dataclass(frozen=True)
class FamilyParams:
    """Parameters of the metacyclic family: Γ = Z/m ⋊ B with τ from φ_b."""

    m: int
    B: CyclicUnitSubgroup
    b: int  # marked generator, sent to ζ = exp(2πi/r)

    @property
    def r(self):
        return self.B.order


@dataclass(frozen=True, eq=False)
class QuotientDatum:
    gamma: FiniteGroupTable
    d: int
    tau: tuple  # TorusPoint per element index
    simply_connected_S: bool = True
    sl_degree_witness: int | None = None
    family: FamilyParams | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.simply_connected_S:
            raise DatumError("only data with simply connected derived group are modeled")
        if self.d < 0:
            raise DatumError("torus dimension must be >= 0")
        tau = tuple(p if isinstance(p, TorusPoint) else TorusPoint(tuple(p)) for p in self.tau)
        if len(tau) != self.gamma.order or any(p.d != self.d for p in tau):
            raise DatumError("tau must give one d-dimensional point per element")
        object.__setattr__(self, "tau", tau)
        if self.family is not None and self.sl_degree_witness is not None and self.sl_degree_witness < 5:
            raise DatumError("the metacyclic family needs SL(n) with n >= 5")
        _check_tau_hom(self.gamma, tau, self.d)

    def tau_of(self, x) -> TorusPoint:
        return self.tau[x]


def _tau_numerators(tau, d):
    den = lcm(1, *(x.denominator for p in tau for x in p.coords))
    num = np.array([[int(x * den) for x in p.coords] for p in tau], dtype=np.int64).reshape(len(tau), d)
    return num, den


def _check_tau_hom(g, tau, d):
    num, den = _tau_numerators(tau, d)
    lhs = num[g.table]  # tau(xy)
    rhs = (num[:, None, :] + num[None, :, :]) % den
    if not np.array_equal(lhs, rhs):
        x, y = np.argwhere((lhs != rhs).any(axis=-1))[0]
        raise HomomorphismError("tau violates homomorphism law", (int(x), int(y)))


def extend_tau(gamma: FiniteGroupTable, d, gen_points: dict):
    """Extend τ from generators to all of Γ by closure, checking consistency."""
    tau = {gamma.identity: TorusPoint.zero(d)}
    frontier = [gamma.identity]
    gens = [(int(g), p if isinstance(p, TorusPoint) else TorusPoint(tuple(p))) for g, p in gen_points.items()]
    while frontier:
        nxt = []
        for x in frontier:
            for g, p in gens:
                y = gamma.mul(x, g)
                q = tau[x] + p
                if y in tau:
                    if tau[y] != q:
                        raise HomomorphismError("tau violates homomorphism law", (x, g))
                else:
                    tau[y] = q
                    nxt.append(y)
        frontier = nxt
    if len(tau) != gamma.order:
        raise DatumError("tau generators do not generate the group")
    return tuple(tau[x] for x in range(gamma.order))


def lambda_group(datum: QuotientDatum):
    """The image Λ = τ(Γ) as a table, the epimorphism Γ -> Λ, and Λ's points.

    Λ's elements are its points sorted lexicographically; index 0 is 0.
    """
    points = sorted(set(datum.tau), key=lambda p: p.coords)
    pos = {p: i for i, p in enumerate(points)}
    den = lcm(1, *(x.denominator for p in points for x in p.coords))
    ints = [tuple(int(x * den) for x in p.coords) for p in points]
    ipos = {u: i for i, u in enumerate(ints)}
    table = [[ipos[tuple((x + y) % den for x, y in zip(u, v))] for v in ints] for u in ints]
    lam = FiniteGroupTable(table, name="Lambda")
    hom = GroupHom(datum.gamma, lam, np.array([pos[p] for p in datum.tau]))
    return lam, hom, points


# the metacyclic family ---------------------------------------------------

def family_datum(m, b, r=None, sl_degree_witness=5, alpha="alpha") -> QuotientDatum:
    """Datum of X_{α,b}: Γ = Z/m ⋊ ⟨b⟩, d = 1, τ(a, β) = dlog_b(β)/r.

    The table of Γ is built from the smallest generator of ⟨b⟩, so data that
    differ only in the marked generator share the same Γ.
    """
    B = cyclic_subgroup(m, UnitResidue(b, m))
    if r is not None and r != B.order:
        raise DatumError(f"{b} has order {B.order} mod {m}, not {r}")
    r = B.order
    canonical = B.generators()[0]
    gamma = _metacyclic(m, canonical)
    Bc = cyclic_subgroup(m, canonical)
    marked = CyclicUnitSubgroup(m, UnitResidue(b, m), r, Bc.elements)
    powers = Bc.powers()
    dlog = {beta: j for j, beta in enumerate(marked.powers())}
    points = [TorusPoint((Fraction(dlog[beta], r),)) for beta in powers]
    tau = [points[x % r] for x in range(gamma.order)]
    return QuotientDatum(
        gamma, 1, tuple(tau),
        sl_degree_witness=sl_degree_witness,
        family=FamilyParams(m, marked, b % m),
        meta={"alpha": alpha},
    )


# JSON -------------------------------------------------------------------

def _resolve_gen(gamma, gen):
    if isinstance(gen, int):
        if not 0 <= gen < gamma.order:
            raise DatumError(f"generator index {gen} out of range")
        return gen
    try:
        return gamma.index_of_label(gen)
    except (KeyError, ValueError):
        raise DatumError(f"unknown generator label {gen!r}") from None


def datum_from_json(obj) -> QuotientDatum:
    """Read ``{group, d, tau: [{gen, point}], sl_degree_witness?}``.

    ``group`` is either a table object ``{order, table, identity, labels?}``
    or ``{"metacyclic": {"m": m, "generator": g}}``.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        gspec = obj["group"]
        d = int(obj["d"])
        tau_spec = obj["tau"]
    except (KeyError, TypeError) as exc:
        raise DatumError(f"datum missing field {exc}") from None
    if "metacyclic" in gspec:
        mc = gspec["metacyclic"]
        gamma = _metacyclic(int(mc["m"]), int(mc["generator"]))
    else:
        gamma = FiniteGroupTable.from_json(gspec)
    gens = {}
    for entry in tau_spec:
        pt = TorusPoint(tuple(parse_rational(x) for x in entry["point"]))
        if pt.d != d:
            raise DatumError("tau point dimension does not match d")
        gens[_resolve_gen(gamma, entry["gen"])] = pt
    tau = extend_tau(gamma, d, gens)
    return QuotientDatum(gamma, d, tau, sl_degree_witness=obj.get("sl_degree_witness"))


def datum_to_json(datum: QuotientDatum):
    gens = datum.gamma.minimal_generating_set()
    out = {
        "group": datum.gamma.to_json(),
        "d": datum.d,
        "tau": [{"gen": g, "point": datum.tau[g].to_json()} for g in gens],
    }
    if datum.sl_degree_witness is not None:
        out["sl_degree_witness"] = datum.sl_degree_witness
    return out
