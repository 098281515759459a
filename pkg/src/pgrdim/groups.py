"""Finite groups given by explicit multiplication tables.

Elements are the integers ``0 .. n-1``.  All structural queries (centre,
commutator subgroup, conjugacy classes, ...) are computed directly from the
table, which keeps them easy to audit against hand calculation.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .ffield import SizeGuardError

ORDER_CAP = 4096
EXHAUSTIVE_ASSOCIATIVITY = 512
ASSOCIATIVITY_SAMPLES = 10 ** 4
ISOCLINISM_CAP = 64

# Seed for the sampled checks; the CLI's --seed flag overrides it.
sampling_seed = 0


class GroupError(ValueError):
    pass


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, a)`` with ``n == p**a`` and ``p`` prime, or None.  ``1`` is not a prime power."""
    if n < 2:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return (p, a) if n == 1 else None


@dataclass(frozen=True, eq=False)
class GroupTable:
    mult: np.ndarray
    identity: int = 0
    labels: tuple[str, ...] | None = None
    name: str = ""
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = np.asarray(self.mult, dtype=np.int32)
        n = m.shape[0]
        if m.shape != (n, n) or n == 0:
            raise GroupError(f"multiplication table must be square, got {m.shape}")
        if n > ORDER_CAP:
            raise SizeGuardError(f"group order {n} exceeds cap {ORDER_CAP}")
        m.setflags(write=False)
        object.__setattr__(self, "mult", m)
        if self.validate:
            self.check_axioms()

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<GroupTable {self.name or '?'} of order {self.order}>"

    @cached_property
    def inv(self) -> np.ndarray:
        rows, cols = np.nonzero(self.mult == self.identity)
        inv = np.empty(self.order, dtype=np.int32)
        inv[rows] = cols
        return inv

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def power(self, g: int, k: int) -> int:
        x = self.identity
        for _ in range(k):
            x = self.mult[x, g]
        return int(x)

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        m, inv = self.mult, self.inv
        return int(m[m[inv[a], inv[b]], m[a, b]])

    def check_axioms(self) -> None:
        m, n, e = self.mult, self.order, self.identity
        full = np.arange(n)
        if not (np.array_equal(m[e], full) and np.array_equal(m[:, e], full)):
            raise GroupError("identity is not two-sided")
        srt = np.sort(m, axis=1)
        if not np.all(srt == full) or not np.all(np.sort(m, axis=0) == full[:, None]):
            raise GroupError("table is not a Latin square")
        if n <= EXHAUSTIVE_ASSOCIATIVITY:
            for a in range(n):
                if not np.array_equal(m[m[a]], m[a][m]):
                    raise GroupError(f"associativity fails for a={a}")
        else:
            rng = np.random.default_rng(sampling_seed)
            a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
            if not np.array_equal(m[m[a, b], c], m[a, m[b, c]]):
                raise GroupError("associativity fails on a sampled triple")
        inv = self.inv
        if not (np.all(m[full, inv] == e) and np.all(m[inv, full] == e)):
            raise GroupError("inverse table is inconsistent")

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        x = np.arange(n)
        k = 1
        while np.any(orders == 0):
            orders[(x == self.identity) & (orders == 0)] = k
            x = self.mult[x, np.arange(n)]
            k += 1
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in set(self.element_orders.tolist())))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: GroupTable
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(x) for x in self.members))))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return int(g) in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def issubset(self, other: Subgroup) -> bool:
        return self.member_set <= other.member_set

    def is_subgroup(self) -> bool:
        G = self.parent
        idx = np.array(self.members)
        if G.identity not in self:
            return False
        prods = G.mult[np.ix_(idx, idx)]
        return bool(np.all(np.isin(prods, idx)) and np.all(np.isin(G.inv[idx], idx)))

    def is_normal(self) -> bool:
        G = self.parent
        idx = np.array(self.members)
        conj = G.mult[G.mult[G.inv[:, None], idx[None, :]], np.arange(G.order)[:, None]]
        return bool(np.all(np.isin(conj, idx)))


def generated_subgroup(G: GroupTable, gens) -> Subgroup:
    """Closure of ``gens`` under multiplication (finite, so inverses come free)."""
    gens = [int(g) for g in gens]
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(G.mult[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, tuple(seen))


def center(G: GroupTable) -> Subgroup:
    m = G.mult
    return Subgroup(G, tuple(np.nonzero(np.all(m == m.T, axis=1))[0]))


def commutators(G: GroupTable) -> set[int]:
    m, inv = G.mult, G.inv
    a = np.arange(G.order)
    comm = m[m[inv[:, None], inv[None, :]], m[a[:, None], a[None, :]]]
    return set(np.unique(comm).tolist())


def commutator_subgroup(G: GroupTable) -> Subgroup:
    return generated_subgroup(G, commutators(G))


def p_of(G: GroupTable) -> int:
    pp = prime_power(G.order)
    if pp is None:
        raise GroupError(f"order {G.order} is not a prime power")
    return pp[0]


def omega1_of_center(G: GroupTable, p: int) -> tuple[Subgroup, int]:
    """Central elements with ``z^p = 1`` and the rank ``r = log_p`` of their number."""
    pp = prime_power(G.order)
    if G.order != 1 and (pp is None or pp[0] != p):
        raise GroupError(f"|G| = {G.order} is not a power of {p}")
    orders = G.element_orders
    om = Subgroup(G, tuple(z for z in center(G) if p % orders[z] == 0))
    r = 0
    while p ** r < om.order:
        r += 1
    return om, r


def omega1_basis(G: GroupTable, p: int) -> list[int]:
    """Greedy minimal-index basis of Omega_1(Z(G)) as an F_p vector space."""
    om, r = omega1_of_center(G, p)
    basis: list[int] = []
    span = generated_subgroup(G, [])
    for z in om:
        if z not in span:
            basis.append(z)
            span = generated_subgroup(G, basis)
        if len(basis) == r:
            break
    return basis


def conjugacy_classes(G: GroupTable) -> list[tuple[int, ...]]:
    """Orbits of conjugation, each sorted, ordered by smallest member."""
    m, inv = G.mult, G.inv
    a = np.arange(G.order)
    cls_of = np.full(G.order, -1)
    classes = []
    for x in range(G.order):
        if cls_of[x] >= 0:
            continue
        orbit = np.unique(m[m[inv, x], a])
        cls_of[orbit] = len(classes)
        classes.append(tuple(orbit.tolist()))
    return classes


def order_spectrum(G: GroupTable) -> dict[int, int]:
    return dict(sorted(Counter(G.element_orders.tolist()).items()))


def direct_product(A: GroupTable, B: GroupTable) -> GroupTable:
    """Component-wise product; element ``(a, b)`` has index ``a * |B| + b``."""
    na, nb = A.order, B.order
    if na * nb > ORDER_CAP:
        raise SizeGuardError(f"product order {na * nb} exceeds cap {ORDER_CAP}")
    mult = (A.mult.astype(np.int64)[:, None, :, None] * nb
            + B.mult.astype(np.int64)[None, :, None, :]).reshape(na * nb, na * nb)
    labels = None
    if A.labels or B.labels:
        labels = tuple(f"({A.label(a)},{B.label(b)})" for a in range(na) for b in range(nb))
    name = f"{A.name or '?'} x {B.name or '?'}"
    return GroupTable(mult, A.identity * nb + B.identity, labels, name)


def cyclic(n: int) -> GroupTable:
    a = np.arange(n)
    return GroupTable((a[:, None] + a[None, :]) % n, name=f"Z/{n}")


def elementary_abelian(p: int, n: int) -> GroupTable:
    out = cyclic(1) if n == 0 else cyclic(p)
    for _ in range(n - 1):
        out = direct_product(out, cyclic(p))
    return GroupTable(out.mult, name=f"(Z/{p})^{n}", validate=False)


def quotient(G: GroupTable, N: Subgroup) -> tuple[GroupTable, np.ndarray]:
    """``G/N`` for a normal subgroup ``N`` and the coset index of every element."""
    if not N.is_normal():
        raise GroupError("quotient by a non-normal subgroup")
    coset = np.full(G.order, -1)
    reps = []
    nidx = np.array(N.members)
    for g in range(G.order):
        if coset[g] < 0:
            coset[G.mult[g, nidx]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    qmult = coset[G.mult[np.ix_(reps, reps)]]
    return GroupTable(qmult, int(coset[G.identity]), name=f"{G.name}/N"), coset


def is_special(G: GroupTable) -> bool:
    """Z(G) = [G,G] and G/[G,G] elementary abelian.  Abelian input is rejected."""
    if G.is_abelian():
        raise GroupError("special groups are non-abelian by definition")
    p = p_of(G)
    Z, D = center(G), commutator_subgroup(G)
    if Z != D:
        return False
    pth = [G.power(g, p) for g in range(G.order)]
    return all(x in D for x in pth)


# -- isoclinism --------------------------------------------------------------

def _greedy_generators(G: GroupTable) -> list[int]:
    gens: list[int] = []
    span = generated_subgroup(G, [])
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = generated_subgroup(G, gens)
            if span.order == G.order:
                break
    return gens


def _extend_hom(S: GroupTable, T: GroupTable, gens, images) -> dict[int, int] | None:
    """Extend a generator assignment to a homomorphism S -> T, or None if inconsistent."""
    f = {S.identity: T.identity}
    queue = deque([S.identity])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y = int(S.mult[x, g])
            fy = int(T.mult[f[x], h])
            if y in f:
                if f[y] != fy:
                    return None
            else:
                f[y] = fy
                queue.append(y)
    return f


def _commutator_map(G: GroupTable, coset: np.ndarray, nq: int) -> np.ndarray:
    # commutators only depend on cosets of the centre
    reps = np.zeros(nq, dtype=np.int64)
    for g in range(G.order - 1, -1, -1):
        reps[coset[g]] = g
    out = np.empty((nq, nq), dtype=np.int64)
    for i, j in product(range(nq), repeat=2):
        out[i, j] = G.commutator(int(reps[i]), int(reps[j]))
    return out


def isoclinic(S: GroupTable, T: GroupTable, cap: int = ISOCLINISM_CAP) -> bool:
    """Brute-force isoclinism test.

    Searches isomorphisms ``f: S/Z(S) -> T/Z(T)`` by backtracking over images
    of a generating set, and for each one checks that ``[a,b] -> [f a, f b]``
    is a well-defined isomorphism ``[S,S] -> [T,T]``.
    """
    ZS, ZT = center(S), center(T)
    DS, DT = commutator_subgroup(S), commutator_subgroup(T)
    if S.order // ZS.order > cap or DS.order > cap:
        raise SizeGuardError(f"isoclinism search beyond cap {cap}")
    if S.order // ZS.order != T.order // ZT.order or DS.order != DT.order:
        return False
    QS, cs = quotient(S, ZS)
    QT, ct = quotient(T, ZT)
    comm_s = _commutator_map(S, cs, QS.order)
    comm_t = _commutator_map(T, ct, QT.order)
    gens = _greedy_generators(QS)
    candidates = [[h for h in range(QT.order) if QT.element_orders[h] == QS.element_orders[g]]
                  for g in gens]
    for images in product(*candidates):
        f = _extend_hom(QS, QT, gens, images)
        if f is None or len(set(f.values())) != QT.order:
            continue
        g_map: dict[int, int] = {}
        ok = True
        for a, b in product(range(QS.order), repeat=2):
            x, y = int(comm_s[a, b]), int(comm_t[f[a], f[b]])
            if g_map.setdefault(x, y) != y:
                ok = False
                break
        if not ok:
            continue
        cgens = sorted(g_map)
        full = _extend_hom(S, T, cgens, [g_map[c] for c in cgens])
        if full is not None and len(full) == DS.order and len(set(full.values())) == DT.order:
            return True
    return False

