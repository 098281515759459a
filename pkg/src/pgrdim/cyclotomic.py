"""Exact arithmetic in Z[zeta_e] via coefficient vectors.

A character value is stored as a vector ``m`` of length ``e`` meaning
``sum_j m[j] * zeta_e**j``.  Such vectors are not unique (the powers of
``zeta_e`` are linearly dependent), so comparisons go through reduction
modulo the cyclotomic polynomial, which gives a canonical form.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def _polydiv_exact(a: list[int], b: list[int]) -> list[int]:
    # integer polynomials, low degree first, b monic, b divides a
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, low degree first."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """``R`` with ``vec @ R`` the coordinates of ``vec`` in the basis 1, z, ..., z^(phi-1)."""
    phi = cyclotomic_poly(e)
    deg = len(phi) - 1
    R = np.zeros((e, deg), dtype=np.int64)
    cur = [1] + [0] * (deg - 1)
    for j in range(e):
        R[j] = cur
        # multiply by z and reduce with z^deg = -sum phi[i] z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        for i in range(deg):
            cur[i] -= top * phi[i]
    R.setflags(write=False)
    return R


def canonical(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=np.int64)
    return v @ reduction_matrix(v.shape[-1])


def is_zero(vec) -> bool:
    return not np.any(canonical(vec))


def equals_integer(vec, n: int) -> bool:
    c = canonical(vec)
    target = np.zeros_like(c)
    target[..., 0] = n
    return bool(np.array_equal(c, target))


def conjugate(vec) -> np.ndarray:
    """Complex conjugation: zeta^j -> zeta^-j along the last axis."""
    v = np.asarray(vec)
    e = v.shape[-1]
    return v[..., (-np.arange(e)) % e]


def multiply(a, b) -> np.ndarray:
    """Product in Z[x]/(x^e - 1)."""
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    e = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for j in range(e):
        out += a[..., j:j + 1] * np.roll(b, j, axis=-1)
    return out


def to_complex(vec) -> complex:
    v = np.asarray(vec)
    e = v.shape[-1]
    return complex(np.sum(v * np.exp(2j * np.pi * np.arange(e) / e), axis=-1))


def render(vec) -> str:
    """``m0,m1,...|e``."""
    v = np.asarray(vec).tolist()
    return ",".join(str(x) for x in v) + f"|{len(v)}"
