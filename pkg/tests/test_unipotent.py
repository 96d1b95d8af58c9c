import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkmhess.exact_core import determinant, mat_inverse
from gkmhess.hessenberg import HessenbergFunction, all_hessenberg_functions, full_staircase
from gkmhess.unipotent import (
    HessSpace,
    PermMatrix,
    certificate,
    cofactor_entry,
    conjugate_elementary,
    construction_witness,
    elementary,
    find_witness,
    random_sl_matrix,
    sweep,
)

H = lambda *v: HessenbergFunction(v)


def transpose(m):
    return [list(r) for r in zip(*m)]


def test_identity_conjugation():
    g = PermMatrix((1, 2, 3, 4))
    for i in range(1, 5):
        for j in range(1, 5):
            if i != j:
                assert conjugate_elementary(g, i, j) == elementary(4, i, j)


def test_worked_conjugation():
    # ones at (1,1), (3,2), (2,3)
    g = PermMatrix((1, 3, 2))
    assert g.entries == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert conjugate_elementary(g, 2, 1) == [[0, 0, 0], [0, 0, 0], [1, 0, 0]]


def test_transpose_consistency():
    g = PermMatrix((3, 1, 4, 2))
    for i in range(1, 5):
        for j in range(1, 5):
            if i != j:
                a = conjugate_elementary(g, i, j)
                b = conjugate_elementary(g, j, i)
                assert transpose(a) == b


def test_rejects_diagonal():
    with pytest.raises(ValueError):
        conjugate_elementary(PermMatrix((1, 2)), 1, 1)
    with pytest.raises(ValueError):
        find_witness(H(2, 2), 2, 2)


def test_perm_matrix_inverse_is_transpose():
    g = PermMatrix((2, 4, 1, 3))
    assert g.inverse().entries == transpose(g.entries)


def test_witness_examples():
    g = find_witness(H(2, 3, 3), 2, 1)
    assert g is not None
    assert not HessSpace(H(2, 3, 3)).contains(conjugate_elementary(g, 2, 1))
    for i in range(1, 5):
        for j in range(1, 5):
            if i != j:
                assert find_witness(H(2, 3, 4, 4), i, j) is not None


@pytest.mark.parametrize("n", [2, 3, 4])
def test_full_staircase_has_no_witness(n):
    h = full_staircase(n)
    assert all(find_witness(h, i, j) is None
               for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_construction_witness_hits_corner(n):
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            g = construction_witness(n, i, j)
            m = g.entries
            assert m[j - 1][0] == 1 and m[i - 1][n - 1] == 1
            assert conjugate_elementary(g, i, j)[n - 1][0] == 1


def test_sweep_certificates():
    certs = sweep(3)
    # 4 non-full h for n = 3, 6 ordered pairs each
    assert len(certs) == 24
    for c in certs:
        assert c["witness"] is not None
        r, col = c["violating_entry"]
        assert r > c["h"][col - 1]
    assert certificate(full_staircase(3), 1, 2)["witness"] is None
    assert sweep(3, workers=2) == certs


def test_cofactor_identity_cases():
    ident = [[int(r == c) for c in range(4)] for r in range(4)]
    assert cofactor_entry(ident, 4, 1) == 1
    assert cofactor_entry(ident, 1, 2) == 0
    with pytest.raises(ZeroDivisionError):
        cofactor_entry([[1, 2], [2, 4]], 1, 2)


def test_random_matrices_have_det_one():
    rng = random.Random(3)
    for n in (3, 4, 5):
        for _ in range(20):
            assert determinant(random_sl_matrix(n, rng)) == 1


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 5), st.integers(0, 2**32 - 1))
def test_cofactor_formula(n, seed):
    g = random_sl_matrix(n, random.Random(seed))
    g_inv = mat_inverse(g)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                assert cofactor_entry(g, i, j) == conjugate_elementary(g, i, j, g_inv)[n - 1][0]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hess_space_monotone(n):
    hs = all_hessenberg_functions(n)
    for h in hs:
        for h2 in hs:
            if all(a <= b for a, b in zip(h.values, h2.values)):
                small, big = HessSpace(h), HessSpace(h2)
                assert all(big.allows(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
                           if small.allows(i, j))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_hess_space_membership_matches_definition(data):
    n = data.draw(st.integers(2, 5))
    h = data.draw(st.sampled_from(all_hessenberg_functions(n)))
    m = data.draw(st.lists(st.lists(st.integers(-1, 1), min_size=n, max_size=n),
                           min_size=n, max_size=n))
    expected = all(m[i - 1][j - 1] == 0 for i in range(1, n + 1) for j in range(1, n + 1)
                   if i > h(j))
    assert HessSpace(h).contains(m) == expected
