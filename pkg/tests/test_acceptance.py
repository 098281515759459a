"""Acceptance suite.

Each test carries a ``criterion`` label; the terminal summary prints one
PASS/FAIL line per label.
"""

import numpy as np

from conftest import CATALOG_SPECS, group, table
from pgrdim.catalog import exceptional128_forms, heisenberg_forms
from pgrdim.ffield import FqMatrix, det
from pgrdim.forms import build_symplectic, degenerate_census
from pgrdim.groups import (
    center,
    commutator_subgroup,
    conjugacy_classes,
    is_special,
    isoclinic,
    omega1_of_center,
    order_spectrum,
    prime_power,
)
from pgrdim.heisenberg import HeisenbergSpec, decode
from pgrdim.rdim import (
    f_p,
    lemma31_bound_b,
    max_upper_bound,
    min_faithful_dim,
    min_faithful_dim_bruteforce,
    rdim_upper_bound,
)
from pgrdim.reptheory import (
    central_vectors,
    degree_census,
    kernel_mask,
    row_orthogonality,
    vanishes,
)

HEISENBERG = [(2, 2, 1), (2, 4, 2), (2, 4, 1), (3, 2, 1), (3, 4, 1), (5, 2, 1)]


def criterion(label):
    def mark(fn):
        fn.criterion = label
        return fn
    return mark


def heis(p, d, k):
    spec = f"heisenberg({p}, {d}, {k})"
    return spec, HeisenbergSpec.with_default_beta(heisenberg_forms(p, d, k))


def functional_of(hs, basis, vector):
    """The functional on K whose central character has the given central vector."""
    p, k = hs.K.p, hs.K.k
    T = np.array([decode(hs, z)[1] for z in basis])
    sols = [lam for lam in np.ndindex(*(p,) * k) if tuple(T @ np.array(lam) % p) == vector]
    assert len(sols) == 1
    return np.array(sols[0])


def nondegenerate(K, lam) -> bool:
    form = np.tensordot(lam, K.stacked(), axes=1) % K.p
    return det(FqMatrix(K.p, form)) != 0


@criterion("AC 1")
def test_fp_table_values():
    """f_p table values match exactly"""
    expected = {(2, 1): 1, (2, 5): 6, (2, 6): 8, (2, 7): 12, (3, 3): 3, (3, 5): 9, (5, 4): 10}
    assert {(p, n): f_p(n, p) for p, n in expected} == expected


@criterion("AC 2")
def test_symplectic_existence():
    """build_symplectic has no degenerate nonzero form, checked exhaustively"""
    for p, m in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]:
        assert degenerate_census(build_symplectic(p, m)) == 0, (p, m)


@criterion("AC 3")
def test_heisenberg_rdim():
    """rdim of H(V,K,beta) equals dim K * sqrt|V| via character tables"""
    for p, d, k in HEISENBERG:
        spec = f"heisenberg({p}, {d}, {k})"
        assert min_faithful_dim(group(spec), table=table(spec)).value == k * p ** (d // 2)


@criterion("AC 4")
def test_degree_censuses():
    """degree censuses of Heis27 and heisenberg(2,4,2)"""
    assert degree_census(table("heisenberg(3, 2, 1)")) == {1: 9, 3: 2}
    assert degree_census(table("heisenberg(2, 4, 2)")) == {1: 16, 4: 3}


@criterion("AC 5")
def test_nondegenerate_characters():
    """nondegenerate central character: degree sqrt|V| and zero off the centre"""
    for p, d, k in HEISENBERG:
        spec, hs = heis(p, d, k)
        t = table(spec)
        basis, cvs = central_vectors(t)
        central = {i for i, c in enumerate(t.classes) if c.members[0] in center(t.group)}
        checked = 0
        for cv, deg in zip(cvs, t.degrees):
            lam = functional_of(hs, basis, cv.vector)
            if not lam.any() or not nondegenerate(hs.K, lam):
                continue
            checked += 1
            assert deg == p ** (d // 2)
            assert all(vanishes(t, cv.irreducible, c)
                       for c in range(len(t.classes)) if c not in central)
        assert checked == p ** k - 1


@criterion("AC 6")
def test_stone_von_neumann():
    """one irreducible per nontrivial central character, failing for exceptional128"""
    for p, d, k in HEISENBERG:
        spec = f"heisenberg({p}, {d}, {k})"
        _, cvs = central_vectors(table(spec))
        counts = {}
        for cv in cvs:
            counts[cv.vector] = counts.get(cv.vector, 0) + 1
        nontrivial = {v: c for v, c in counts.items() if any(v)}
        assert len(nontrivial) == p ** k - 1
        assert set(nontrivial.values()) == {1}
    t = table("exceptional128")
    hs = HeisenbergSpec.with_default_beta(exceptional128_forms())
    basis, cvs = central_vectors(t)
    counts = {}
    for cv in cvs:
        counts.setdefault(cv.vector, []).append(cv.irreducible)
    shared = [v for v, chis in counts.items() if any(v) and len(chis) > 1]
    assert len(shared) == 1 and len(counts[shared[0]]) == 4
    assert not nondegenerate(hs.K, functional_of(hs, basis, shared[0]))


@criterion("AC 7")
def test_exceptional_values():
    """rdim 4, 5, 10 for the three exceptional witnesses"""
    spec = "product(cyclic(3), heisenberg(3, 2, 1))"
    assert min_faithful_dim(group(spec), table=table(spec)).value == 4
    assert min_faithful_dim(group("elementary(2, 5)"), table=table("elementary(2, 5)")).value == 5
    res = min_faithful_dim(group("exceptional128"), table=table("exceptional128"))
    assert res.value == 10
    assert sorted(res.witness_degrees) == [2, 4, 4]


@criterion("AC 8")
def test_exceptional128_structure():
    """order 128, Z = [G,G] of order 8, census, 26 classes, special"""
    G = group("exceptional128")
    assert G.order == 128
    Z, D = center(G), commutator_subgroup(G)
    assert Z == D and Z.order == 8
    assert degree_census(table("exceptional128")) == {1: 16, 2: 4, 4: 6}
    assert len(conjugacy_classes(G)) == 26
    assert is_special(G)


@criterion("AC 9")
def test_beta_pair_over_f2():
    """the two beta choices give Q8 and D8, isoclinic, both rdim 2"""
    Q, D = group("q8"), group("d8")
    assert order_spectrum(Q) == {1: 1, 2: 1, 4: 6}
    assert order_spectrum(D) == {1: 1, 2: 5, 4: 2}
    assert isoclinic(Q, D)
    assert min_faithful_dim(Q).value == min_faithful_dim(D).value == 2


@criterion("AC 10")
def test_greedy_matches_brute_force():
    """greedy equals brute force; witness faithful with exactly r summands"""
    for spec in CATALOG_SPECS:
        G, t = group(spec), table(spec)
        p = prime_power(G.order)[0]
        _, r = omega1_of_center(G, p)
        g = min_faithful_dim(G, p, t)
        assert g.value == min_faithful_dim_bruteforce(G, p, t).value, spec
        assert len(g.witness) == r
        mask = (1 << G.order) - 1
        for chi in g.witness:
            mask &= kernel_mask(t, chi)
        assert mask == 1 << G.identity, spec


@criterion("AC 11")
def test_bound_consistency():
    """rdim within both upper bounds; max over r of the rank bound is f_p"""
    for spec in CATALOG_SPECS:
        G = group(spec)
        p, n = prime_power(G.order)
        _, r = omega1_of_center(G, p)
        value = min_faithful_dim(G, p, table(spec)).value
        assert value <= rdim_upper_bound(n, r, p), spec
        b = lemma31_bound_b(G, p)
        assert b is None or value <= b, spec
    for p in (2, 3, 5):
        for n in range(1, 13):
            assert max_upper_bound(n, p)[0] == f_p(n, p), (p, n)


@criterion("AC 12")
def test_character_table_integrity():
    """sum of d^2 = |G|, class count, row orthogonality, degree bound"""
    for spec in CATALOG_SPECS:
        t = table(spec)
        G = t.group
        assert sum(d * d for d in t.degrees) == G.order, spec
        assert len(t.classes) == t.n_irr, spec
        assert row_orthogonality(t), spec
        index = G.order // center(G).order
        assert all(d * d <= index for d in t.degrees), spec
