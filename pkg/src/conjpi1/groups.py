"""Finite groups given by multiplication tables.

Elements are dense indices ``0..n-1``; ``table[i, j]`` is the index of the
product ``i * j``. Optional string labels ride along for readability (the
metacyclic builder stores ``"(a,b)"`` pairs there).
"""
from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .modular import CyclicUnitSubgroup, cyclic_subgroup

ASSOC_FULL_CAP = 512
ASSOC_SAMPLES = 10**6
ORACLE_CAP = 2000


class GroupAxiomError(ValueError):
    """Raised when a table fails a group axiom; ``witness`` names the culprit."""

    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else f"{msg}: witness {witness}")
        self.witness = witness


class HomomorphismError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else f"{msg}: witness {witness}")
        self.witness = witness


class OracleScaleError(ValueError):
    pass


class FiniteGroupTable:
    """A finite group as a validated Cayley table."""

    def __init__(self, table, labels=None, name=None, validate=True):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupAxiomError("table must be a nonempty square array")
        self.order = t.shape[0]
        self.name = name
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self.order:
            raise ValueError("labels length does not match order")
        t.setflags(write=False)
        self.table = t
        self.identity, self.inverses = _identity_and_inverses(t)
        if validate:
            validate_table(self)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroupTable(order={self.order}, name={self.name!r})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroupTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def mul(self, x, y):
        return int(self.table[x, y])

    def inv(self, x):
        return int(self.inverses[x])

    def power(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        result = self.identity
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def power_map(self, e):
        """Array ``p`` with ``p[x] = x**e`` for every element."""
        n = self.order
        if e < 0:
            return self.power_map(-e)[self.inverses]
        result = np.full(n, self.identity, dtype=np.int64)
        base = np.arange(n, dtype=np.int64)
        while e:
            if e & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            e >>= 1
        return result

    def element_orders(self):
        return _element_orders(self)

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, x):
        return self.labels[x] if self.labels is not None else str(x)

    def index_of_label(self, label):
        if self.labels is None:
            raise KeyError("group has no labels")
        return self.labels.index(label)

    def generated_subgroup(self, gens):
        """Sorted list of indices in the subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def minimal_generating_set(self):
        """Greedy generating set: highest element orders first, ties by index."""
        orders = self.element_orders()
        candidates = sorted(range(self.order), key=lambda x: (-orders[x], x))
        gens, span = [], {self.identity}
        for x in candidates:
            if len(span) == self.order:
                break
            if x not in span:
                gens.append(x)
                span = set(self.generated_subgroup(gens))
        return gens

    def to_json(self):
        d = {"order": self.order, "table": self.table.tolist(), "identity": self.identity}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.name is not None:
            d["name"] = self.name
        return d

    @classmethod
    def from_json(cls, d):
        if isinstance(d, str):
            d = json.loads(d)
        g = cls(d["table"], labels=d.get("labels"), name=d.get("name"))
        if "order" in d and d["order"] != g.order:
            raise GroupAxiomError("declared order does not match table")
        if "identity" in d and d["identity"] != g.identity:
            raise GroupAxiomError("declared identity is not the identity", d["identity"])
        return g


def _identity_and_inverses(t):
    n = t.shape[0]
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ids:
        raise GroupAxiomError("no identity")
    e = ids[0]
    inverses = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        hits = np.flatnonzero(t[i] == e)
        if len(hits) == 0 or t[hits[0], i] != e:
            raise GroupAxiomError("missing inverse", i)
        inverses[i] = hits[0]
    inverses.setflags(write=False)
    return e, inverses


def _element_orders(g):
    n = g.order
    orders = np.zeros(n, dtype=np.int64)
    cur = np.arange(n, dtype=np.int64)
    k = 1
    pending = np.ones(n, dtype=bool)
    while pending.any():
        done = pending & (cur == g.identity)
        orders[done] = k
        pending &= ~done
        cur = g.table[cur, np.arange(n)]
        k += 1
    return orders


def validate_table(g: FiniteGroupTable) -> FiniteGroupTable:
    """Check the group axioms; associativity in full up to ``ASSOC_FULL_CAP``.

    Above the cap the Latin-square property is checked exactly and
    associativity on ``ASSOC_SAMPLES`` triples drawn with a fixed seed.
    """
    t = g.table
    n = g.order
    if t.min() < 0 or t.max() >= n:
        raise GroupAxiomError("entry out of range")
    ar = np.arange(n)
    e = g.identity
    if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
        raise GroupAxiomError("no identity")
    for i in range(n):
        if t[i, g.inverses[i]] != e:
            raise GroupAxiomError("missing inverse", i)
    if n <= ASSOC_FULL_CAP:
        for a in range(n):
            lhs = t[t[a]]  # (ab)c over all b, c
            rhs = t[a][t]  # a(bc)
            if not np.array_equal(lhs, rhs):
                b, c = np.argwhere(lhs != rhs)[0]
                raise GroupAxiomError("not associative", (a, int(b), int(c)))
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
        bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
        if len(bad):
            k = bad[0]
            raise GroupAxiomError("not associative", (int(a[k]), int(b[k]), int(c[k])))
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), ar):
            raise GroupAxiomError("not a Latin square (row)", i)
        if not np.array_equal(np.sort(t[:, i]), ar):
            raise GroupAxiomError("not a Latin square (column)", i)
    return g


@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: FiniteGroupTable
    codomain: FiniteGroupTable
    images: np.ndarray = field(repr=False)

    def __post_init__(self):
        im = np.array(self.images, dtype=np.int64)
        if im.shape != (self.domain.order,):
            raise HomomorphismError("images must have one entry per domain element")
        im.setflags(write=False)
        object.__setattr__(self, "images", im)

    def __call__(self, x):
        return int(self.images[x])

    def check(self):
        """Raise :class:`HomomorphismError` unless the map respects products."""
        dt, ct, im = self.domain.table, self.codomain.table, self.images
        if im[self.domain.identity] != self.codomain.identity:
            raise HomomorphismError("identity not sent to identity")
        bad = np.argwhere(im[dt] != ct[im[:, None], im[None, :]])
        if len(bad):
            x, y = bad[0]
            raise HomomorphismError("not a homomorphism", (int(x), int(y)))
        return self

    def is_bijective(self):
        return self.domain.order == self.codomain.order and len(set(self.images.tolist())) == self.domain.order

    def inverse(self):
        inv = np.empty(self.codomain.order, dtype=np.int64)
        inv[self.images] = np.arange(self.domain.order)
        return GroupHom(self.codomain, self.domain, inv)


def identity_hom(g):
    return GroupHom(g, g, np.arange(g.order))


def trivial_hom(g, h):
    return GroupHom(g, h, np.full(g.order, h.identity))


def subgroup(g: FiniteGroupTable, elements, name=None):
    """Table of the subgroup on ``elements`` (sorted) plus its inclusion."""
    elems = sorted(int(x) for x in elements)
    pos = {x: i for i, x in enumerate(elems)}
    sub = g.table[np.ix_(elems, elems)]
    try:
        relabelled = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
    except KeyError as exc:
        raise GroupAxiomError("subset not closed under multiplication", exc.args[0]) from None
    labels = [g.label(x) for x in elems] if g.labels is not None else None
    h = FiniteGroupTable(relabelled, labels=labels, name=name, validate=False)
    return h, GroupHom(h, g, np.array(elems))


def kernel(h: GroupHom):
    elems = np.flatnonzero(h.images == h.codomain.identity)
    return subgroup(h.domain, elems, name="ker")


def image(h: GroupHom):
    elems = np.unique(h.images)
    return subgroup(h.codomain, elems, name="im")


# builders --------------------------------------------------------------

@dataclass(frozen=True)
class MetacyclicDatum:
    m: int
    B: CyclicUnitSubgroup

    def __post_init__(self):
        if self.B.modulus != self.m:
            raise ValueError("B must be a subgroup of (Z/mZ)* for the same m")


def make_metacyclic(d: MetacyclicDatum) -> FiniteGroupTable:
    """``A ⋊ B`` with ``A = Z/m`` and ``B`` acting by multiplication.

    Element ``(a, g**j)`` gets index ``a * r + j`` where ``g`` is the
    generator stored in ``B``; so different generators of the same ``B``
    give differently indexed (but isomorphic) tables.
    """
    return _metacyclic(d.m, d.B.generator.value)


@lru_cache(maxsize=256)
def _metacyclic(m, gen):
    B = cyclic_subgroup(m, gen)
    r = B.order
    powers = B.powers()
    a = np.arange(m)[:, None, None, None]
    j1 = np.arange(r)[None, :, None, None]
    a2 = np.arange(m)[None, None, :, None]
    j2 = np.arange(r)[None, None, None, :]
    pw = np.array(powers, dtype=np.int64)
    prod_a = (a + pw[j1] * a2) % m
    prod_j = (j1 + j2) % r
    table = (prod_a * r + prod_j).reshape(m * r, m * r)
    labels = [f"({x},{powers[j]})" for x in range(m) for j in range(r)]
    return FiniteGroupTable(table, labels=labels, name=f"H({m},<{gen}>)")


def metacyclic_pair(g: FiniteGroupTable, x: int):
    """Recover ``(a, b)`` from a metacyclic element label."""
    a, b = g.label(x).strip("()").split(",")
    return int(a), int(b)


def cyclic_group(n):
    ar = np.arange(n)
    return FiniteGroupTable((ar[:, None] + ar[None, :]) % n, name=f"Z/{n}")


def dihedral_group(n):
    """Dihedral group of order ``2n``: index ``s*n + k`` stands for ``r^k s^s``."""
    k1 = np.arange(n)[:, None, None, None]
    s1 = np.arange(2)[None, :, None, None]
    k2 = np.arange(n)[None, None, :, None]
    s2 = np.arange(2)[None, None, None, :]
    # r^k1 s^s1 r^k2 s^s2 = r^(k1 + (-1)^s1 k2) s^(s1+s2)
    k = (k1 + np.where(s1 == 0, k2, -k2)) % n
    s = (s1 + s2) % 2
    idx = s * n + k  # shape (n, 2, n, 2)
    table = idx.transpose(1, 0, 3, 2).reshape(2 * n, 2 * n)
    return FiniteGroupTable(table, name=f"D{2 * n}")


def symmetric_group(k):
    perms = list(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # (p*q)(x) = p(q(x))
            table[i, j] = pos[tuple(p[q[x]] for x in range(k))]
    return FiniteGroupTable(table, labels=[str(p) for p in perms], name=f"S{k}")


def direct_product(g1, g2, name=None):
    n1, n2 = g1.order, g2.order
    t = (g1.table[:, None, :, None] * n2 + g2.table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = [f"({g1.label(i)},{g2.label(j)})" for i in range(n1) for j in range(n2)]
    return FiniteGroupTable(t, labels=labels, name=name or f"{g1.name}x{g2.name}")


# isomorphism oracle ----------------------------------------------------

def brute_force_isomorphic(g1: FiniteGroupTable, g2: FiniteGroupTable):
    """Search for an isomorphism ``g1 -> g2`` by backtracking on generator images.

    Returns a verified :class:`GroupHom` or ``None`` once the search space is
    exhausted. Branches are tried in increasing index order, so the witness
    is deterministic.
    """
    if max(g1.order, g2.order) > ORACLE_CAP:
        raise OracleScaleError("oracle scale exceeded")
    if g1.order != g2.order:
        return None
    o1, o2 = g1.element_orders(), g2.element_orders()
    if Counter(o1.tolist()) != Counter(o2.tolist()):
        return None
    if g1.is_abelian() != g2.is_abelian():
        return None
    gens = g1.minimal_generating_set()
    candidates = [[y for y in range(g2.order) if o2[y] == o1[x]] for x in gens]

    def extend(assign):
        # propagate phi(x*s) = phi(x)*phi(s) over the subgroup of the assigned gens
        k = len(assign)
        phi = {g1.identity: g2.identity}
        queue = deque([g1.identity])
        while queue:
            x = queue.popleft()
            for s, t in zip(gens[:k], assign):
                y = int(g1.table[x, s])
                img = int(g2.table[phi[x], t])
                if y in phi:
                    if phi[y] != img:
                        return None
                else:
                    phi[y] = img
                    queue.append(y)
        if len(set(phi.values())) != len(phi):
            return None
        return phi

    def search(assign):
        if len(assign) == len(gens):
            return extend(assign)
        for y in candidates[len(assign)]:
            if y in assign:
                continue
            nxt = assign + [y]
            if extend(nxt) is None:
                continue
            found = search(nxt)
            if found is not None:
                return found
        return None

    phi = search([])
    if phi is None or len(phi) != g1.order:
        return None
    hom = GroupHom(g1, g2, np.array([phi[x] for x in range(g1.order)])).check()
    if not hom.is_bijective():  # pragma: no cover - guarded by extend()
        return None
    return hom


# abelianization --------------------------------------------------------

def commutator_subgroup(g):
    t, inv = g.table, g.inverses
    n = g.order
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    comm = t[t[t[x, y], inv[x]], inv[y]]
    return g.generated_subgroup(np.unique(comm))


def quotient(g, normal):
    """Quotient table by a normal subgroup given as a list of indices."""
    normal = sorted(normal)
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if coset_of[x] < 0:
            coset_of[g.table[x, normal]] = len(reps)
            reps.append(x)
    reps = np.array(reps)
    table = coset_of[g.table[np.ix_(reps, reps)]]
    return FiniteGroupTable(table, name=f"{g.name}/N" if g.name else None), coset_of


def abelian_invariants(g: FiniteGroupTable):
    """Invariant factors ``d1 | d2 | ...`` of a finite abelian group.

    Uses the counts ``|{x : x^(p^j) = e}|`` to read off each p-primary part.
    """
    if not g.is_abelian():
        raise ValueError("group is not abelian")
    n = g.order
    primes, k = [], n
    p = 2
    while p * p <= k:
        if k % p == 0:
            primes.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        primes.append(k)
    prime_parts = []  # per prime: exponents sorted descending
    for p in primes:
        v = _vp(n, p)
        logs = [0]  # logs[j] = log_p |{x : x^(p^j) = e}|
        while logs[-1] < v:
            cnt = int(np.count_nonzero(g.power_map(p ** len(logs)) == g.identity))
            logs.append(_vp(cnt, p))
        ge = [logs[i] - logs[i - 1] for i in range(1, len(logs))]  # factors of order >= p^i
        ge.append(0)
        exps = []
        for i in range(1, len(ge)):
            exps += [i] * (ge[i - 1] - ge[i])
        prime_parts.append((p, sorted(exps, reverse=True)))
    width = max((len(e) for _, e in prime_parts), default=0)
    factors = []
    for i in range(width):
        f = 1
        for p, exps in prime_parts:
            if i < len(exps):
                f *= p ** exps[i]
        factors.append(f)
    return sorted(factors)


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def abelianization_table(g: FiniteGroupTable):
    if g.order > ORACLE_CAP:
        raise OracleScaleError("oracle scale exceeded")
    q, _ = quotient(g, commutator_subgroup(g))
    return abelian_invariants(q)
