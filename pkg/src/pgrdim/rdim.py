"""Minimal faithful representation dimension of p-groups, and the bounds around it.

A representation of a p-group is faithful iff its restriction to
Omega_1(Z(G)) is faithful, because every nontrivial normal subgroup meets
Omega_1(Z(G)).  Each irreducible acts on Omega_1(Z(G)) ~ F_p^r by a
character, recorded as a vector in F_p^r.  A sum of irreducibles is
therefore faithful iff its central vectors span F_p^r, and the cheapest
faithful sum is a minimum-weight basis of a linear matroid: greedy by
degree is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from itertools import combinations

import numpy as np

from .ffield import rank
from .groups import (
    GroupError,
    GroupTable,
    center,
    commutator_subgroup,
    omega1_of_center,
    prime_power,
)
from .reptheory import CharacterTable, central_vectors, character_table, kernel_mask

BRUTE_FORCE_CAP = 10 ** 6


class VerificationError(RuntimeError):
    pass


def f_p(n: int, p: int) -> int:
    """Largest value of the central-rank bound over r, in closed form."""
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2 == 0:
        return 2 * p ** ((n - 2) // 2)
    if p != 2:
        return p ** ((n - 1) // 2)
    if n == 1:
        return 1
    return 3 * 2 ** ((n - 3) // 2)


def rdim_upper_bound(n: int, r: int, p: int) -> int:
    """``r * p**floor((n - r) / 2)``: r irreducibles, each of degree <= sqrt[G:Z]."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    return r * p ** ((n - r) // 2)


def max_upper_bound(n: int, p: int) -> tuple[int, list[int]]:
    """Maximum of :func:`rdim_upper_bound` over r and the maximising r values."""
    vals = {r: rdim_upper_bound(n, r, p) for r in range(1, n + 1)}
    best = max(vals.values())
    return best, [r for r, v in vals.items() if v == best]


def _p_group(G: GroupTable, p: int | None) -> int:
    pp = prime_power(G.order)
    if G.order == 1:
        return p or 2
    if pp is None or (p is not None and pp[0] != p):
        raise GroupError(f"|G| = {G.order} is not a power of {p or 'a prime'}")
    return pp[0]


def largest_power_at_most(p: int, x: float) -> int:
    q = 1
    while q * p <= x:
        q *= p
    return q


def lemma31_bound_b(G: GroupTable, p: int | None = None) -> int | None:
    """``1 + (r-1) * sqrt[G:Z(G)]`` when Omega_1(Z(G)) is not inside [G,G], else None.

    The square root is replaced by the largest power of p not exceeding it,
    which is still an upper bound on irreducible degrees.
    """
    p = _p_group(G, p)
    om, r = omega1_of_center(G, p)
    if om.issubset(commutator_subgroup(G)):
        return None
    index = G.order // center(G).order
    return 1 + (r - 1) * largest_power_at_most(p, math.isqrt(index))


@dataclass(frozen=True)
class RdimResult:
    value: int
    witness: tuple[int, ...]
    witness_degrees: tuple[int, ...]
    central_vectors: tuple[tuple[int, ...], ...]
    method: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness)
        d["witness_degrees"] = list(self.witness_degrees)
        d["central_vectors"] = [list(v) for v in self.central_vectors]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _verify(table: CharacterTable, witness, p: int, r: int) -> None:
    G = table.group
    mask = (1 << G.order) - 1
    for chi in witness:
        mask &= kernel_mask(table, chi)
    if mask != 1 << G.identity:
        raise VerificationError(f"witness {witness} is not faithful")
    if len(witness) != r:
        raise VerificationError(f"witness has {len(witness)} summands, expected {r}")


def min_faithful_dim(G: GroupTable, p: int | None = None,
                     table: CharacterTable | None = None) -> RdimResult:
    p = _p_group(G, p)
    table = table if table is not None else character_table(G)
    _, r = omega1_of_center(G, p)
    if r == 0:
        return RdimResult(0, (), (), (), "greedy")
    _, vecs = central_vectors(table, p)
    degrees = table.degrees
    kept: list[int] = []
    for chi in sorted(range(table.n_irr), key=lambda i: (degrees[i], i)):
        trial = [vecs[i].vector for i in kept + [chi]]
        if rank(np.array(trial), p) == len(kept) + 1:
            kept.append(chi)
            if len(kept) == r:
                break
    else:
        raise VerificationError("central vectors do not span the dual of Omega_1(Z(G))")
    _verify(table, kept, p, r)
    return RdimResult(sum(degrees[i] for i in kept), tuple(kept),
                      tuple(degrees[i] for i in kept),
                      tuple(vecs[i].vector for i in kept), "greedy")


def min_faithful_dim_bruteforce(G: GroupTable, p: int | None = None,
                                table: CharacterTable | None = None,
                                cap: int = BRUTE_FORCE_CAP) -> RdimResult:
    """Exhaustive search over sums of at most r distinct irreducibles.

    Faithfulness is decided by intersecting kernels directly, so this does
    not rely on the central-vector reduction used by the greedy solver.
    """
    p = _p_group(G, p)
    table = table if table is not None else character_table(G)
    _, r = omega1_of_center(G, p)
    if r == 0:
        return RdimResult(0, (), (), (), "brute-force")
    h = table.n_irr
    total = sum(math.comb(h, s) for s in range(1, r + 1))
    if total > cap:
        raise VerificationError(f"{total} subsets exceed brute-force cap {cap}")
    degrees = table.degrees
    masks = [kernel_mask(table, i) for i in range(h)]
    full = (1 << G.order) - 1
    trivial = 1 << G.identity
    best: tuple[int, tuple[int, ...]] | None = None
    for s in range(1, r + 1):
        for subset in combinations(range(h), s):
            m = full
            for i in subset:
                m &= masks[i]
            if m == trivial:
                cost = sum(degrees[i] for i in subset)
                if best is None or (cost, subset) < best:
                    best = (cost, subset)
    if best is None:
        raise VerificationError("no faithful sum of at most r irreducibles")
    _, vecs = central_vectors(table, p)
    cost, subset = best
    return RdimResult(cost, subset, tuple(degrees[i] for i in subset),
                      tuple(vecs[i].vector for i in subset), "brute-force")


def abelian_rank(G: GroupTable, p: int) -> int:
    """Number of invariant factors of an abelian p-group: log_p |{g : g^p = 1}|."""
    count = int(np.sum(p % G.element_orders == 0))
    r = 0
    while p ** r < count:
        r += 1
    return r
