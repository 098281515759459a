import csv
import io
import json
from itertools import product

import numpy as np
import pytest

from conftest import CATALOG_SPECS, group, table
from pgrdim import cyclotomic
from pgrdim.catalog import exceptional128_forms, heisenberg_forms
from pgrdim.ffield import FqMatrix, det
from pgrdim.groups import center, cyclic
from pgrdim.heisenberg import HeisenbergSpec, decode
from pgrdim.reptheory import (
    CharacterTableError,
    central_vectors,
    character_table,
    choose_modulus,
    column_orthogonality,
    degree_bound_holds,
    degree_census,
    kernel_of,
    primitive_root_of_unity,
    row_orthogonality,
    vanishes,
)

HEISENBERG_CASES = {
    "heisenberg(2, 2, 1)": (2, 2, 1),
    "heisenberg(2, 4, 1)": (2, 4, 1),
    "heisenberg(2, 4, 2)": (2, 4, 2),
    "heisenberg(3, 2, 1)": (3, 2, 1),
    "heisenberg(3, 4, 1)": (3, 4, 1),
    "heisenberg(5, 2, 1)": (5, 2, 1),
}


def heis_spec(spec: str) -> HeisenbergSpec:
    if spec == "exceptional128":
        return HeisenbergSpec.with_default_beta(exceptional128_forms())
    return HeisenbergSpec.with_default_beta(heisenberg_forms(*HEISENBERG_CASES[spec]))


def abelian_rows(moduli):
    """Characters of Z/m_1 x ... x Z/m_s as multiplicity vectors, element-indexed."""
    e = int(np.lcm.reduce(moduli))
    elements = list(product(*[range(m) for m in moduli]))
    rows = set()
    for j in elements:
        row = []
        for g in elements:
            k = sum(a * b * (e // m) for a, b, m in zip(j, g, moduli)) % e
            row.append(tuple(int(i == k) for i in range(e)))
        rows.add(tuple(row))
    return rows


def as_rows(t):
    return {tuple(tuple(int(x) for x in t.values[i, c]) for c in range(len(t.classes)))
            for i in range(t.n_irr)}


def test_modulus_and_root():
    assert choose_modulus(27, 3) == 13
    assert primitive_root_of_unity(3, 13) == 3
    assert primitive_root_of_unity(1, 13) == 1
    assert choose_modulus(128, 4) == 29


@pytest.mark.parametrize("spec,moduli", [("cyclic(3)", (3,)),
                                         ("elementary(3, 2)", (3, 3)),
                                         ("product(cyclic(4), cyclic(2))", (4, 2))])
def test_abelian_tables_are_dual_group(spec, moduli):
    t = table(spec)
    # classes are singletons in element order
    assert [c.members for c in t.classes] == [(g,) for g in range(group(spec).order)]
    assert as_rows(t) == abelian_rows(moduli)


def test_trivial_character_first():
    for spec in CATALOG_SPECS:
        t = table(spec)
        assert np.all(t.values[0, :, 0] == 1) and t.values[0, :, 1:].sum() == 0
        assert t.degrees == sorted(t.degrees)


def test_degree_censuses(heis27, ex128):
    assert degree_census(table("heisenberg(3, 2, 1)")) == {1: 9, 3: 2}
    assert degree_census(table("exceptional128")) == {1: 16, 2: 4, 4: 6}
    assert degree_census(table("elementary(2, 5)")) == {1: 32}
    assert degree_census(table("q8")) == degree_census(table("d8")) == {1: 4, 2: 1}
    assert degree_census(table("heisenberg(2, 4, 2)")) == {1: 16, 4: 3}
    assert degree_census(table("heisenberg(3, 4, 1)")) == {1: 81, 9: 2}


@pytest.mark.parametrize("spec", CATALOG_SPECS)
def test_table_invariants(spec):
    t = table(spec)
    G = t.group
    assert t.n_irr == len(t.classes)
    assert sum(d * d for d in t.degrees) == G.order
    assert row_orthogonality(t)
    assert column_orthogonality(t)
    assert degree_bound_holds(t)


@pytest.mark.parametrize("spec", CATALOG_SPECS)
def test_floating_point_orthogonality(spec):
    # same relations, checked numerically from the complex values
    t = table(spec)
    X = t.complex_values()
    sizes = np.array([c.size for c in t.classes])
    gram = (X * sizes) @ X.conj().T
    assert np.allclose(gram, t.group.order * np.eye(t.n_irr), atol=1e-8)


@pytest.mark.parametrize("spec", ["heisenberg(3, 2, 1)", "q8", "exceptional128"])
def test_values_on_powers_are_galois_images(spec):
    t = table(spec)
    G = t.group
    e = t.exponent
    for chi in range(t.n_irr):
        for c in t.classes:
            g = c.representative
            v = t.value(chi, g)
            for j in range(1, e):
                w = np.zeros(e, dtype=np.int64)
                np.add.at(w, (np.arange(e) * j) % e, v)
                assert np.array_equal(t.value(chi, G.power(g, j)), w)


def test_rejects_oversized_group():
    with pytest.raises(ValueError):
        character_table(group("heisenberg(3, 4, 1)"), order_cap=100)


def test_deterministic():
    a = character_table(group("exceptional128"))
    b = character_table(group("exceptional128"))
    assert np.array_equal(a.values, b.values)
    assert a.to_csv() == b.to_csv()


def test_kernels():
    t = table("q8")
    assert kernel_of(t, 0).order == 8
    two_dim = t.degrees.index(2)
    assert kernel_of(t, two_dim).order == 1
    tx = table("exceptional128")
    Z = center(tx.group)
    for chi, d in enumerate(tx.degrees):
        if d == 1:
            assert Z.issubset(kernel_of(tx, chi))


def test_heis27_central_vectors():
    basis, cvs = central_vectors(table("heisenberg(3, 2, 1)"))
    assert len(basis) == 1
    big = {cv.vector for cv, d in zip(cvs, table("heisenberg(3, 2, 1)").degrees) if d == 3}
    assert big == {(1,), (2,)}


@pytest.mark.parametrize("spec", list(HEISENBERG_CASES) + ["exceptional128"])
def test_central_character_correspondence(spec):
    """Each nonzero functional on the centre pairs with the forms; nondegenerate
    functionals carry exactly one irreducible, of degree p^(d/2), vanishing off the centre."""
    t = table(spec)
    hs = heis_spec(spec)
    K = hs.K
    p, d, k = K.p, K.d, K.k
    basis, cvs = central_vectors(t)
    # coordinates of the basis elements in the centre (0, t)
    T = np.array([decode(hs, z)[1] for z in basis])
    assert not np.any([decode(hs, z)[0] for z in basis])
    assert det(FqMatrix(p, T)) != 0
    by_lambda = {}
    for cv, deg in zip(cvs, t.degrees):
        # solve lambda . t_j = a_j for the functional lambda
        lam = next(np.array(l) for l in product(range(p), repeat=k)
                   if tuple(T @ np.array(l) % p) == cv.vector)
        by_lambda.setdefault(tuple(lam), []).append((cv.irreducible, deg))
    Zc = {i for i, c in enumerate(t.classes) if c.size == 1}
    for lam, chars in by_lambda.items():
        if not any(lam):
            assert all(deg == 1 for _, deg in chars)
            assert len(chars) == p ** d
            continue
        form = FqMatrix(p, sum(l * g for l, g in zip(lam, K.stacked())) % p)
        if det(form) != 0:
            assert len(chars) == 1
            chi, deg = chars[0]
            assert deg == p ** (d // 2)
            assert all(vanishes(t, chi, c) for c in range(len(t.classes)) if c not in Zc)
        else:
            assert all(deg < p ** (d // 2) for _, deg in chars)


def test_degenerate_functional_on_exceptional_group():
    # one nonzero functional is degenerate; it carries four irreducibles of degree 2
    t = table("exceptional128")
    basis, cvs = central_vectors(t)
    groups = {}
    for cv, deg in zip(cvs, t.degrees):
        groups.setdefault(cv.vector, []).append(deg)
    nonzero = {v: ds for v, ds in groups.items() if any(v)}
    assert len(nonzero) == 7
    assert sorted(map(tuple, nonzero.values())) == [(2, 2, 2, 2)] + [(4,)] * 6


def test_csv_export():
    t = table("heisenberg(3, 2, 1)")
    rows = list(csv.reader(io.StringIO(t.to_csv())))
    assert rows[0][:3] == ["irreducible", "degree", "class0:rep0:size1"]
    assert rows[0][5] == "class3:rep3:size3"
    assert len(rows) == 12
    assert rows[10][1] == "3"
    assert rows[10][2] == "3,0,0|3"


def test_json_export():
    t = table("q8")
    data = json.loads(t.to_json())
    assert data["order"] == 8 and data["exponent"] == 4
    assert len(data["classes"]) == len(data["characters"]) == 5
    assert [c["degree"] for c in data["characters"]] == t.degrees
    assert data["classes"][0] == {"index": 0, "representative": 0, "size": 1, "element_order": 1}


def test_cyclotomic_helpers():
    # 1 + z + z^2 = 0 for e = 3
    assert cyclotomic.is_zero([1, 1, 1])
    assert cyclotomic.equals_integer([2, 1, 1], 1)
    assert cyclotomic.cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic.render(np.array([3, 0, 0])) == "3,0,0|3"


def test_character_table_of_trivial_group():
    t = character_table(cyclic(1))
    assert t.degrees == [1]


def test_table_error_type():
    assert issubclass(CharacterTableError, RuntimeError)
