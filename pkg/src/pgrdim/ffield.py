"""Exact linear algebra over prime fields and small extension fields.

Matrices are numpy integer arrays with entries reduced into ``[0, p)``.
Everything here is deterministic; no routine falls back to floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

MAX_PRIME = 31
MAX_EXTENSION_DEGREE = 6


class SizeGuardError(ValueError):
    """An input exceeds one of the configured desk-scale caps."""


class DimensionError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int, cap: int | None = MAX_PRIME) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if cap is not None and p > cap:
        raise SizeGuardError(f"prime {p} exceeds cap {cap}")


@dataclass(frozen=True)
class FqMatrix:
    """Dense matrix over F_p, entries stored fully reduced."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2 or 0 in a.shape:
            raise DimensionError(f"expected a non-empty 2-d array, got shape {a.shape}")
        a = a % self.p
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @classmethod
    def identity(cls, n: int, p: int) -> FqMatrix:
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> FqMatrix:
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    def __add__(self, other: FqMatrix) -> FqMatrix:
        return FqMatrix(self.p, self.entries + other.entries)

    def __sub__(self, other: FqMatrix) -> FqMatrix:
        return FqMatrix(self.p, self.entries - other.entries)

    def __neg__(self) -> FqMatrix:
        return FqMatrix(self.p, -self.entries)

    def __matmul__(self, other: FqMatrix) -> FqMatrix:
        return FqMatrix(self.p, self.entries @ other.entries)

    def scale(self, c: int) -> FqMatrix:
        return FqMatrix(self.p, c * self.entries)

    @property
    def T(self) -> FqMatrix:
        return FqMatrix(self.p, self.entries.T)

    def __eq__(self, other):
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.p, self.entries.shape, self.entries.tobytes()))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def _as_array(m, p: int) -> np.ndarray:
    if isinstance(m, FqMatrix):
        return m.entries.copy()
    return np.array(m, dtype=np.int64) % p


def row_reduce(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p. Returns ``(rref, pivot_columns)``."""
    a = _as_array(a, p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, p: int | None = None) -> int:
    if p is None:
        p = m.p
    a = _as_array(m, p)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def det(m, p: int | None = None) -> int:
    """Determinant over F_p by Gaussian elimination."""
    if p is None:
        p = m.p
    a = _as_array(m, p)
    n, cols = a.shape
    if n != cols:
        raise DimensionError(f"determinant of a non-square {n}x{cols} matrix")
    result = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + nz[0]
        if k != c:
            a[[c, k]] = a[[k, c]]
            result = -result
        piv = int(a[c, c])
        result = result * piv % p
        inv = pow(piv, -1, p)
        factors = a[c + 1:, c] * inv % p
        a[c + 1:] = (a[c + 1:] - np.outer(factors, a[c])) % p
    return result % p


def nullspace(m, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : m @ x = 0}`` over F_p."""
    a = _as_array(m, p)
    cols = a.shape[1]
    rref, pivots = row_reduce(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(pivots):
            basis[i, c] = -rref[r, f] % p
    return basis


# -- polynomials over F_p, coefficient lists low degree first ---------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _poly_trim(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db:
        coef = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _poly_trim(a)
    return a


@dataclass(frozen=True)
class IrreduciblePoly:
    p: int
    coefficients: tuple[int, ...]  # low degree first, monic

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c != 1 and i > 0:
                mono = f"{c}*{mono}"
            elif i == 0:
                mono = str(c)
            terms.append(mono)
        return " + ".join(terms)


def _monic_polys(p: int, m: int):
    # ascending by sum(c_i p^i) over the non-leading coefficients
    for n in range(p ** m):
        coeffs = []
        for _ in range(m):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def is_irreducible(coeffs, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= m/2."""
    coeffs = list(coeffs)
    m = len(coeffs) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for f in _monic_polys(p, d):
            if not poly_mod(coeffs, f, p):
                return False
    return True


def find_irreducible(p: int, m: int, cap: int = MAX_EXTENSION_DEGREE) -> IrreduciblePoly:
    """Lexicographically smallest monic irreducible polynomial of degree m over F_p."""
    check_prime(p)
    if m < 1:
        raise ValueError("degree must be positive")
    if m > cap:
        raise SizeGuardError(f"extension degree {m} exceeds cap {cap}")
    for coeffs in _monic_polys(p, m):
        if is_irreducible(coeffs, p):
            return IrreduciblePoly(p, tuple(coeffs))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def regular_embedding(poly: IrreduciblePoly) -> list[FqMatrix]:
    """Matrices of multiplication by 1, x, ..., x^(m-1) on F_p[x]/(poly).

    Column j of the i-th matrix holds the coordinates of x^i * x^j in the
    basis 1, x, ..., x^(m-1).
    """
    p, m = poly.p, poly.degree
    mats = []
    for i in range(m):
        a = np.zeros((m, m), dtype=np.int64)
        for j in range(m):
            mono = [0] * (i + j) + [1]
            red = poly_mod(mono, list(poly.coefficients), p)
            a[: len(red), j] = red
        mats.append(FqMatrix(p, a))
    return mats


def nonzero_combinations(mats: list[FqMatrix]):
    """Yield ``(coeffs, sum coeffs[i] * mats[i])`` for every nonzero coefficient vector."""
    p = mats[0].p
    stack = np.stack([m.entries for m in mats])
    for c in product(range(p), repeat=len(mats)):
        if any(c):
            yield c, FqMatrix(p, np.tensordot(np.array(c), stack, axes=1))
