"""Exact character tables by the modular class-algebra (Dixon) method.

Outline of :func:`character_table`:

1. Conjugacy classes, exponent ``e``, and the smallest prime ``l = 1 mod e``
   with ``l > 2 sqrt|G|``.
2. Class-multiplication matrices ``M_i[j, k] = #{x in C_i : x^-1 g_k in C_j}``.
   Every irreducible character gives a common eigenvector ``w`` with
   ``w_k = |C_k| chi(g_k) / chi(1)``.
3. Common eigenspaces over F_l are split one matrix at a time until each is
   a line; the degree is recovered from the normalisation
   ``chi(1)^2 * sum_k w_k w_{k'} / |C_k| = |G|``.
4. Each value is lifted to an eigenvalue multiplicity vector by a discrete
   Fourier inversion along the powers of a class representative, using the
   smallest primitive e-th root of unity mod l for zeta_e.

The result is checked against row orthogonality in exact cyclotomic
arithmetic before it is returned.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import cyclotomic
from .ffield import SizeGuardError, is_prime, nullspace, row_reduce
from .groups import (
    ORDER_CAP,
    GroupError,
    GroupTable,
    Subgroup,
    center,
    conjugacy_classes,
    omega1_basis,
    omega1_of_center,
    prime_power,
)


class CharacterTableError(RuntimeError):
    """The computed table failed an internal consistency check."""


def choose_modulus(order: int, exponent: int) -> int:
    ell = exponent + 1
    while not (is_prime(ell) and ell * ell > 4 * order):
        ell += exponent
    return ell


def primitive_root_of_unity(e: int, ell: int) -> int:
    """Smallest primitive e-th root of unity mod ``ell``."""
    if e == 1:
        return 1
    qs = [q for q in range(2, e + 1) if e % q == 0 and is_prime(q)]
    for z in range(2, ell):
        if pow(z, e, ell) == 1 and all(pow(z, e // q, ell) != 1 for q in qs):
            return z
    raise ValueError(f"no primitive {e}-th root of unity mod {ell}")


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    size: int
    order: int
    members: tuple[int, ...] = field(repr=False)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: GroupTable
    classes: tuple[ConjugacyClass, ...]
    exponent: int
    modulus: int
    root: int
    values: np.ndarray  # (irreducibles, classes, exponent) multiplicity vectors

    @property
    def degrees(self) -> list[int]:
        return self.values[:, 0, :].sum(axis=1).tolist()

    @property
    def n_irr(self) -> int:
        return self.values.shape[0]

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.group.order, dtype=np.int64)
        for i, c in enumerate(self.classes):
            out[list(c.members)] = i
        return out

    def value(self, chi: int, g: int) -> np.ndarray:
        return self.values[chi, self.class_of[g]]

    def complex_values(self) -> np.ndarray:
        e = self.exponent
        z = np.exp(2j * np.pi * np.arange(e) / e)
        return self.values @ z

    def to_rows(self) -> list[list[str]]:
        return [[cyclotomic.render(v) for v in row] for row in self.values]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["irreducible", "degree"] + [f"class{i}:rep{c.representative}:size{c.size}"
                                                for i, c in enumerate(self.classes)])
        for i, (row, d) in enumerate(zip(self.to_rows(), self.degrees)):
            w.writerow([i, d] + row)
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "order": self.group.order,
            "exponent": self.exponent,
            "modulus": self.modulus,
            "root_of_unity_mod_l": self.root,
            "classes": [{"index": i, "representative": c.representative, "size": c.size,
                         "element_order": c.order} for i, c in enumerate(self.classes)],
            "characters": [{"index": i, "degree": d, "values": self.values[i].tolist()}
                           for i, d in enumerate(self.degrees)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# -- the algorithm ----------------------------------------------------------

class _ClassAlgebra:
    def __init__(self, G: GroupTable, classes, class_of, ell: int):
        self.G, self.classes, self.class_of, self.ell = G, classes, class_of, ell
        self.reps = np.array([c[0] for c in classes])
        self._cache: dict[int, np.ndarray] = {}

    def matrix(self, i: int) -> np.ndarray:
        if i not in self._cache:
            G, h = self.G, len(self.classes)
            xs = np.array(self.classes[i])
            prods = G.mult[G.inv[xs][:, None], self.reps[None, :]]
            M = np.zeros((h, h), dtype=np.int64)
            np.add.at(M, (self.class_of[prods], np.broadcast_to(np.arange(h), prods.shape)), 1)
            self._cache[i] = M % self.ell
        return self._cache[i]


def _krylov_roots(A: np.ndarray, ell: int, x: np.ndarray) -> list[int]:
    """Roots in F_ell of the minimal polynomial of ``x`` under A."""
    s = A.shape[0]
    cols = [x]
    for _ in range(s):
        cols.append(A @ cols[-1] % ell)
    rref, piv = row_reduce(np.stack(cols, axis=1), ell)
    j = len(piv)                                     # first dependent power
    coeffs = np.zeros(j + 1, dtype=np.int64)         # low degree first, monic
    coeffs[:j] = -rref[:j, j] % ell
    coeffs[j] = 1
    lam = np.arange(ell, dtype=np.int64)
    val = np.zeros(ell, dtype=np.int64)
    for c in coeffs[::-1]:
        val = (val * lam + c) % ell
    return np.nonzero(val == 0)[0].tolist()


def _eigenspaces(A: np.ndarray, ell: int) -> list[np.ndarray]:
    """Eigenspaces of ``A`` over F_ell; raises if A is not diagonalisable over F_ell."""
    s = A.shape[0]
    eye = np.eye(s, dtype=np.int64)
    spaces: dict[int, np.ndarray] = {}
    found = 0
    probes = np.random.default_rng(s).integers(0, ell, size=(3, s))
    roots = [r for x in probes for r in _krylov_roots(A, ell, x)]
    # the scan over every scalar only runs if all probes missed an eigenspace
    for lam in roots + list(range(ell)):
        if lam in spaces:
            continue
        ns = nullspace((A - lam * eye) % ell, ell)
        spaces[lam] = ns
        found += len(ns)
        if found == s:
            return [spaces[k] for k in sorted(spaces) if len(spaces[k])]
    raise CharacterTableError("class matrix is not diagonalisable over F_l")


def _split(alg: _ClassAlgebra, h: int) -> list[np.ndarray]:
    ell = alg.ell
    done: list[np.ndarray] = []
    # (basis rows in reduced echelon form, first class matrix index to try)
    stack = [(np.eye(h, dtype=np.int64), 0)]
    while stack:
        basis, start = stack.pop(0)
        if basis.shape[0] == 1:
            done.append(basis[0])
            continue
        rref, piv = row_reduce(basis, ell)
        B = rref.T                                  # columns span the space
        for i in range(start, h):
            A = (alg.matrix(i) @ B % ell)[piv, :]   # restricted operator, since B[piv] = I
            if np.array_equal(A, A[0, 0] * np.eye(len(piv), dtype=np.int64)):
                continue
            for ns in _eigenspaces(A, ell):
                stack.append(((ns @ B.T) % ell, i + 1))
            break
        else:
            raise CharacterTableError("eigenspace of dimension > 1 could not be split")
    return done


def character_table(G: GroupTable, order_cap: int = ORDER_CAP) -> CharacterTable:
    if G.order > order_cap:
        raise SizeGuardError(f"group order {G.order} exceeds cap {order_cap}")
    n = G.order
    classes = conjugacy_classes(G)
    h = len(classes)
    class_of = np.empty(n, dtype=np.int64)
    for i, c in enumerate(classes):
        class_of[list(c)] = i
    sizes = np.array([len(c) for c in classes], dtype=np.int64)
    e = G.exponent
    ell = choose_modulus(n, e)
    z = primitive_root_of_unity(e, ell)

    alg = _ClassAlgebra(G, classes, class_of, ell)
    vectors = _split(alg, h)

    inv_class = class_of[G.inv[alg.reps]]
    size_inv = np.array([pow(int(s), -1, ell) for s in sizes], dtype=np.int64)
    bound = math.isqrt(n)

    # class of g_k^t for t = 0 .. e-1
    powers = np.empty((h, e), dtype=np.int64)
    x = np.full(h, G.identity)
    for t in range(e):
        powers[:, t] = class_of[x]
        x = G.mult[x, alg.reps]
    orders = G.element_orders[alg.reps]

    # multiplicity of zeta_o^j in chi(g) is (1/o) sum_t chi(g^t) zeta_o^(-jt)
    lift = {}
    for o in sorted(set(orders.tolist())):
        zo = pow(z, e // o, ell)
        inv_o = pow(o, -1, ell)
        fourier = np.array([[inv_o * pow(zo, (-j * t) % o, ell) % ell for j in range(o)]
                            for t in range(o)], dtype=np.int64)
        lift[o] = (np.nonzero(orders == o)[0], fourier)

    rows = []
    for w in vectors:
        w = w * pow(int(w[0]), -1, ell) % ell
        s = int(np.sum(w * w[inv_class] % ell * size_inv % ell) % ell)
        if s == 0:
            raise CharacterTableError("degenerate normalisation")
        target = n * pow(s, -1, ell) % ell
        deg = next((d for d in range(1, bound + 1) if d * d % ell == target), None)
        if deg is None:
            raise CharacterTableError("no admissible degree for eigenvector")
        chi = deg * w % ell * size_inv % ell               # chi(g_k) mod l

        vals = np.zeros((h, e), dtype=np.int64)
        for o, (idx, fourier) in lift.items():
            m = chi[powers[idx, :o]] @ fourier % ell     # (classes, o)
            if np.any(m > deg):
                raise CharacterTableError("multiplicity out of range in lift")
            vals[np.ix_(idx, np.arange(o) * (e // o))] = m
        if np.any(vals.sum(axis=1) != deg):
            raise CharacterTableError("lifted multiplicities do not sum to the degree")
        rows.append((deg, vals))

    # trivial character first, then by degree; splitting order breaks ties
    trivial = [i for i, (d, v) in enumerate(rows) if d == 1 and np.all(v[:, 0] == 1)]
    order = sorted(range(len(rows)), key=lambda i: (i not in trivial, rows[i][0], i))
    values = np.stack([rows[i][1] for i in order])
    values.setflags(write=False)

    cc = tuple(ConjugacyClass(c[0], len(c), int(G.element_orders[c[0]]), tuple(c))
               for c in classes)
    table = CharacterTable(G, cc, e, ell, z, values)
    if values.shape[0] != h:
        raise CharacterTableError("number of irreducibles differs from number of classes")
    if sum(d * d for d in table.degrees) != n:
        raise CharacterTableError("sum of squared degrees differs from |G|")
    if not row_orthogonality(table):
        raise CharacterTableError("row orthogonality fails")
    return table


# -- exact verification -----------------------------------------------------

def _inner_products(a: np.ndarray, b: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``out[x, y] = sum_c weights[c] * a[x, c] * conj(b[y, c])`` in Z[x]/(x^e - 1)."""
    e = a.shape[-1]
    aw = a * weights[None, :, None]
    bc = cyclotomic.conjugate(b)
    out = np.zeros((a.shape[0], b.shape[0], e), dtype=np.int64)
    idx = np.arange(e)
    for r in range(e):
        shifted = bc[:, :, (r - idx) % e]         # shifted[y, c, a] = bc[y, c, r - a]
        out[:, :, r] = np.einsum("xca,yca->xy", aw, shifted)
    return out


def row_orthogonality(table: CharacterTable) -> bool:
    sizes = np.array([c.size for c in table.classes], dtype=np.int64)
    ip = cyclotomic.canonical(_inner_products(table.values, table.values, sizes))
    expected = np.zeros_like(ip)
    expected[:, :, 0] = table.group.order * np.eye(table.n_irr, dtype=np.int64)
    return bool(np.array_equal(ip, expected))


def column_orthogonality(table: CharacterTable) -> bool:
    cols = np.transpose(table.values, (1, 0, 2))
    ip = cyclotomic.canonical(_inner_products(cols, cols, np.ones(table.n_irr, dtype=np.int64)))
    centralisers = np.array([table.group.order // c.size for c in table.classes])
    expected = np.zeros_like(ip)
    expected[:, :, 0] = np.diag(centralisers)
    return bool(np.array_equal(ip, expected))


# -- derived data -------------------------------------------------------------

def kernel_of(table: CharacterTable, chi: int) -> Subgroup:
    """Elements acting trivially: all eigenvalue mass on zeta^0."""
    deg = table.degrees[chi]
    row = table.values[chi]
    good = [i for i in range(len(table.classes)) if row[i, 0] == deg]
    members = [g for i in good for g in table.classes[i].members]
    K = Subgroup(table.group, tuple(members))
    if not (K.is_subgroup() and K.is_normal()):
        raise CharacterTableError(f"kernel of character {chi} is not a normal subgroup")
    return K


def kernel_mask(table: CharacterTable, chi: int) -> int:
    """Kernel of ``chi`` as a bitmask over element indices."""
    mask = 0
    for g in kernel_of(table, chi):
        mask |= 1 << g
    return mask


@dataclass(frozen=True)
class CentralVector:
    irreducible: int
    vector: tuple[int, ...]


def central_vector(table: CharacterTable, chi: int, basis: list[int], p: int) -> CentralVector:
    """Exponents ``a_i`` with ``basis[i]`` acting on ``chi`` by ``zeta_p**a_i``."""
    G = table.group
    Z = center(G)
    e = table.exponent
    deg = table.degrees[chi]
    out = []
    for zb in basis:
        if zb not in Z:
            raise GroupError(f"basis element {zb} is not central")
        v = table.value(chi, zb)
        j = int(np.argmax(v))
        if v[j] != deg or (e // p) == 0 or j % (e // p):
            raise CharacterTableError(f"central element {zb} is not scalar of order p on {chi}")
        out.append(j // (e // p))
    return CentralVector(chi, tuple(out))


def central_vectors(table: CharacterTable, p: int | None = None) -> tuple[list[int], list[CentralVector]]:
    """Canonical Omega_1(Z(G)) basis and the central vector of every irreducible."""
    G = table.group
    if p is None:
        pp = prime_power(G.order)
        if pp is None:
            raise GroupError("central vectors need a p-group")
        p = pp[0]
    basis = omega1_basis(G, p)
    return basis, [central_vector(table, i, basis, p) for i in range(table.n_irr)]


def degree_census(table: CharacterTable) -> dict[int, int]:
    return dict(sorted(Counter(table.degrees).items()))


def vanishes(table: CharacterTable, chi: int, cls: int) -> bool:
    return cyclotomic.is_zero(table.values[chi, cls])


def degree_bound_holds(table: CharacterTable) -> bool:
    """Every degree d satisfies d^2 <= [G : Z(G)]."""
    index = table.group.order // center(table.group).order
    return all(d * d <= index for d in table.degrees)

