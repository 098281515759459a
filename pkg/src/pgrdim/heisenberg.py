"""The groups H(V, K, beta) on V x K* with (v,t)(v',t') = (v+v', t+t'+beta(v,v')).

Element ``(v, t)`` has index equal to the base-p integer whose digits are
``v_1 .. v_d, t_1 .. t_k`` (most significant first), so enumeration is
lexicographic in the digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .ffield import SizeGuardError
from .forms import BilinearMap, FormSpace, default_beta
from .groups import ORDER_CAP, GroupTable


@dataclass(frozen=True)
class HeisenbergSpec:
    K: FormSpace
    beta: BilinearMap

    def __post_init__(self):
        self.beta.check(self.K)

    @classmethod
    def with_default_beta(cls, K: FormSpace) -> HeisenbergSpec:
        return cls(K, default_beta(K))

    @property
    def order(self) -> int:
        return self.K.p ** (self.K.d + self.K.k)


def digit_vectors(p: int, length: int) -> np.ndarray:
    """All vectors of F_p^length in lexicographic order, one per row."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(p), repeat=length)), dtype=np.int64)


def encode(p: int, v, t) -> int:
    idx = 0
    for x in list(v) + list(t):
        idx = idx * p + int(x)
    return idx


def decode(spec: HeisenbergSpec, g: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    p, d, k = spec.K.p, spec.K.d, spec.K.k
    digits = []
    for _ in range(d + k):
        digits.append(g % p)
        g //= p
    digits.reverse()
    return tuple(digits[:d]), tuple(digits[d:])


def build_heisenberg(spec: HeisenbergSpec, name: str = "") -> GroupTable:
    p, d, k = spec.K.p, spec.K.d, spec.K.k
    n = spec.order
    if n > ORDER_CAP:
        raise SizeGuardError(f"H(V,K,beta) has order {n}, beyond cap {ORDER_CAP}")
    V = digit_vectors(p, d)
    nv, nt = p ** d, p ** k
    weights_v = p ** np.arange(d - 1, -1, -1)
    weights_t = p ** np.arange(k - 1, -1, -1)

    vsum = (V[:, None, :] + V[None, :, :]) % p
    vidx = vsum @ weights_v                                   # (nv, nv)
    bvals = np.einsum("ai,ijk,bj->abk", V, spec.beta.values, V) % p
    bidx = bvals @ weights_t                                  # (nv, nv), beta as a t-index

    T = digit_vectors(p, k)
    tsum = (T[:, None, :] + T[None, :, :]) % p
    # shifted t-addition: tadd[s, t1, t2] = index of t1 + t2 + (t-vector s)
    tadd = ((T[:, None, None, :] + tsum[None, :, :, :]) % p) @ weights_t

    mult = (vidx[:, None, :, None] * nt
            + tadd[bidx[:, None, :, None], np.arange(nt)[None, :, None, None],
                   np.arange(nt)[None, None, None, :]])
    mult = mult.reshape(n, n)
    labels = tuple(f"({''.join(map(str, v))},{''.join(map(str, t))})"
                   for v in product(range(p), repeat=d) for t in product(range(p), repeat=k))
    return GroupTable(mult, 0, labels, name or f"H(p={p},d={d},k={k})")


def inverse_formula(spec: HeisenbergSpec, g: int) -> int:
    """``(v, t)^-1 = (-v, -t + beta(v, v))``."""
    p = spec.K.p
    v, t = decode(spec, g)
    bv = spec.beta(np.array(v), np.array(v))
    return encode(p, [(-x) % p for x in v], [(-x + y) % p for x, y in zip(t, bv)])


def kernel_intersection_trivial(K: FormSpace) -> bool:
    """Whether no nonzero v lies in the radical of every form in K."""
    from .ffield import rank
    if K.k == 0:
        return K.d == 0
    stacked = np.concatenate([g.entries for g in K.generators], axis=0)
    return rank(stacked, K.p) == K.d
