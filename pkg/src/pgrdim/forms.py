"""Spaces of alternating bilinear forms and the maps they induce.

A :class:`FormSpace` is a list of ``k`` linearly independent alternating
``d x d`` matrices over F_p.  Elements of the dual space ``K*`` are handled
as coordinate vectors in the basis dual to those generators, so the
commutator pairing ``omega(v, w)`` is simply ``(v^T M_1 w, ..., v^T M_k w)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .ffield import (
    DimensionError,
    FqMatrix,
    SizeGuardError,
    check_prime,
    det,
    find_irreducible,
    nonzero_combinations,
    rank,
    regular_embedding,
)

CENSUS_CAP = 10 ** 5


class FormError(ValueError):
    pass


def is_alternating(m: FqMatrix) -> bool:
    a = m.entries
    if a.shape[0] != a.shape[1]:
        return False
    # skew-symmetry alone is too weak in characteristic 2
    return bool(np.all(np.diag(a) == 0) and np.all((a + a.T) % m.p == 0))


@dataclass(frozen=True)
class FormSpace:
    p: int
    d: int
    generators: tuple[FqMatrix, ...]

    def __post_init__(self):
        check_prime(self.p)
        gens = tuple(g if isinstance(g, FqMatrix) else FqMatrix(self.p, g)
                     for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for i, g in enumerate(gens):
            if g.p != self.p or g.entries.shape != (self.d, self.d):
                raise FormError(f"generator {i} is not a {self.d}x{self.d} matrix over F_{self.p}")
            if not is_alternating(g):
                raise FormError(f"generator {i} is not alternating")
        if gens:
            flat = np.stack([g.entries.ravel() for g in gens])
            if rank(flat, self.p) != len(gens):
                raise FormError("generators are linearly dependent")

    @property
    def k(self) -> int:
        return len(self.generators)

    def stacked(self) -> np.ndarray:
        """Generators as a ``(k, d, d)`` integer array."""
        return np.stack([g.entries for g in self.generators])

    def subspace(self, k: int) -> FormSpace:
        """The span of the first ``k`` generators."""
        return FormSpace(self.p, self.d, self.generators[:k])


def omega_eval(K: FormSpace, v, w) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    if v.shape != (K.d,) or w.shape != (K.d,):
        raise DimensionError(f"vectors must have length {K.d}")
    return np.einsum("i,kij,j->k", v, K.stacked(), w) % K.p


def degenerate_census(K: FormSpace, cap: int = CENSUS_CAP) -> int:
    """Number of nonzero combinations of the generators with zero determinant."""
    if K.p ** K.k > cap:
        raise SizeGuardError(f"{K.p}^{K.k} combinations exceed cap {cap}")
    return sum(1 for _, m in nonzero_combinations(list(K.generators)) if det(m) == 0)


def is_symplectic(K: FormSpace, cap: int = CENSUS_CAP) -> bool:
    return degenerate_census(K, cap) == 0


def build_symplectic(p: int, m: int) -> FormSpace:
    """An m-dimensional symplectic subspace of alternating 2m x 2m forms.

    Each generator is the block matrix ``[[0, W], [-W^T, 0]]`` where ``W``
    runs over the left-multiplication matrices of a degree-m extension of F_p.
    Every nonzero ``W`` in their span is invertible, hence so is every nonzero
    form in the span of the blocks.
    """
    ws = regular_embedding(find_irreducible(p, m))
    gens = []
    for w in ws:
        a = np.zeros((2 * m, 2 * m), dtype=np.int64)
        a[:m, m:] = w.entries
        a[m:, :m] = -w.entries.T
        gens.append(FqMatrix(p, a))
    return FormSpace(p, 2 * m, tuple(gens))


@dataclass(frozen=True)
class BilinearMap:
    """A bilinear map V x V -> K* stored as its table on basis pairs.

    ``values[i, j]`` is the coordinate vector of beta(e_i, e_j).
    """

    p: int
    values: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.values, dtype=np.int64) % self.p
        if a.ndim != 3 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"beta table must have shape (d, d, k), got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "values", a)

    @property
    def d(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[2]

    def __call__(self, v, w) -> np.ndarray:
        return np.einsum("i,ijk,j->k", np.asarray(v), self.values, np.asarray(w)) % self.p

    def residual(self, K: FormSpace) -> np.ndarray:
        """``beta(e_i,e_j) - beta(e_j,e_i) - omega(e_i,e_j)`` for all basis pairs."""
        omega = np.transpose(K.stacked(), (1, 2, 0))
        return (self.values - np.transpose(self.values, (1, 0, 2)) - omega) % self.p

    def check(self, K: FormSpace) -> None:
        if (self.p, self.d, self.k) != (K.p, K.d, K.k):
            raise FormError(
                f"beta has shape p={self.p}, d={self.d}, k={self.k}; "
                f"form space has p={K.p}, d={K.d}, k={K.k}")
        if np.any(self.residual(K)):
            raise FormError("beta(v,w) - beta(w,v) does not reproduce omega")


def default_beta(K: FormSpace) -> BilinearMap:
    """Strictly lower-triangular beta: beta(e_i, e_j) = omega(e_i, e_j) for i > j."""
    omega = np.transpose(K.stacked(), (1, 2, 0))
    mask = np.tril(np.ones((K.d, K.d), dtype=np.int64), -1)
    return BilinearMap(K.p, omega * mask[:, :, None])


def upper_beta(K: FormSpace) -> BilinearMap:
    """Strictly upper-triangular beta: beta(e_i, e_j) = omega(e_i, e_j) for i < j."""
    omega = np.transpose(K.stacked(), (1, 2, 0))
    mask = np.triu(np.ones((K.d, K.d), dtype=np.int64), 1)
    return BilinearMap(K.p, omega * mask[:, :, None])


def half_beta(K: FormSpace) -> BilinearMap:
    """beta = omega / 2; only defined in odd characteristic."""
    if K.p == 2:
        raise FormError("omega/2 needs odd characteristic")
    omega = np.transpose(K.stacked(), (1, 2, 0))
    return BilinearMap(K.p, omega * pow(2, -1, K.p))


def beta_from_matrix(K: FormSpace, m) -> BilinearMap:
    """Beta for a one-dimensional K given as a plain d x d matrix."""
    if K.k != 1:
        raise FormError("a single matrix only describes beta when dim K = 1")
    return BilinearMap(K.p, np.asarray(m)[:, :, None])


# -- text formats -----------------------------------------------------------

def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def parse_forms(text: str) -> FormSpace:
    """Parse the generator-matrix format.

    First line ``p d k``; then ``k`` blocks of ``d`` lines, each holding ``d``
    space-separated entries in ``[0, p)``.  Blank lines and ``#`` comments are
    ignored.
    """
    lines = _content_lines(text)
    if not lines:
        raise FormError("empty generator file")
    try:
        p, d, k = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormError(f"bad header line {lines[0]!r}; expected 'p d k'") from None
    body = lines[1:]
    if len(body) != k * d:
        raise FormError(f"expected {k * d} matrix rows, found {len(body)}")
    gens = []
    for b in range(k):
        rows = []
        for line in body[b * d:(b + 1) * d]:
            entries = [int(x) for x in line.split()]
            if len(entries) != d or any(not 0 <= x < p for x in entries):
                raise FormError(f"bad matrix row {line!r}")
            rows.append(entries)
        gens.append(FqMatrix(p, rows))
    return FormSpace(p, d, tuple(gens))


def format_forms(K: FormSpace) -> str:
    out = [f"{K.p} {K.d} {K.k}"]
    for g in K.generators:
        out.append("")
        out.extend(" ".join(str(x) for x in row) for row in g.tolist())
    return "\n".join(out) + "\n"


def parse_beta(text: str, K: FormSpace) -> BilinearMap:
    """Parse a beta table: ``d`` lines of ``d`` entries, each a length-k digit string.

    For p > 10 an entry may instead be a comma-separated list of k integers.
    The table is validated against ``K``.
    """
    lines = _content_lines(text)
    if len(lines) != K.d:
        raise FormError(f"expected {K.d} beta rows, found {len(lines)}")
    values = np.zeros((K.d, K.d, K.k), dtype=np.int64)
    for i, line in enumerate(lines):
        entries = line.split()
        if len(entries) != K.d:
            raise FormError(f"beta row {i} has {len(entries)} entries, expected {K.d}")
        for j, e in enumerate(entries):
            coords = [int(x) for x in e.split(",")] if "," in e else [int(c) for c in e]
            if len(coords) != K.k or any(not 0 <= x < K.p for x in coords):
                raise FormError(f"bad beta entry {e!r} at ({i}, {j})")
            values[i, j] = coords
    beta = BilinearMap(K.p, values)
    beta.check(K)
    return beta


def format_beta(beta: BilinearMap) -> str:
    sep = "," if beta.p > 10 else ""
    return "\n".join(
        " ".join(sep.join(str(x) for x in beta.values[i, j]) for j in range(beta.d))
        for i in range(beta.d)) + "\n"


def load_forms(path) -> FormSpace:
    return parse_forms(Path(path).read_text())


def load_beta(path, K: FormSpace) -> BilinearMap:
    return parse_beta(Path(path).read_text(), K)
