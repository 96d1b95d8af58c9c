"""
Non-invariance of Hess(S, h) under the root subgroups I + cE_ij.

Only permutation flags are examined: if some permutation matrix g has
g^{-1} E_ij g outside the Hessenberg space H(h), the subgroup U_ij does not
preserve Hess(S, h).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import determinant, mat_inverse, mat_mul
from .hessenberg import (
    HessenbergFunction,
    all_hessenberg_functions,
    all_permutations,
    inverse,
    perm_id,
)


@dataclass(frozen=True)
class HessSpace:
    """Matrices (b_ij) with b_ij = 0 whenever i > h(j)."""

    h: HessenbergFunction

    def allows(self, i, j) -> bool:
        return i <= self.h(j)

    def contains(self, matrix) -> bool:
        n = self.h.n
        return all(matrix[i - 1][j - 1] == 0
                   for j in range(1, n + 1) for i in range(self.h(j) + 1, n + 1))

    def violations(self, matrix) -> list:
        n = self.h.n
        return [(i, j) for j in range(1, n + 1) for i in range(self.h(j) + 1, n + 1)
                if matrix[i - 1][j - 1] != 0]


@dataclass(frozen=True)
class PermMatrix:
    """Permutation matrix with a 1 at (w(k), k) for every column k."""

    perm: tuple

    @property
    def n(self):
        return len(self.perm)

    @property
    def entries(self) -> list:
        n = self.n
        m = [[0] * n for _ in range(n)]
        for k, wk in enumerate(self.perm):
            m[wk - 1][k] = 1
        return m

    def inverse(self) -> "PermMatrix":
        return PermMatrix(inverse(self.perm))

    def __str__(self):
        return perm_id(self.perm)


def elementary(n, i, j) -> list:
    m = [[0] * n for _ in range(n)]
    m[i - 1][j - 1] = 1
    return m


def _matrix_of(g):
    return g.entries if isinstance(g, PermMatrix) else [list(r) for r in g]


def conjugate_elementary(g, i: int, j: int, g_inverse=None) -> list:
    """g^{-1} E_ij g, exactly (for a permutation matrix, a single 1).

    ``g_inverse`` may be passed to reuse an inverse across many (i, j).
    """
    if i == j:
        raise ValueError("E_ij needs i != j")
    a = _matrix_of(g)
    n = len(a)
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("indices out of range")
    if g_inverse is not None:
        ginv = g_inverse
    elif isinstance(g, PermMatrix):
        ginv = g.inverse().entries
    else:
        ginv = mat_inverse(a)
    out = mat_mul(mat_mul(ginv, elementary(n, i, j)), a)
    if isinstance(g, PermMatrix):
        return [[int(x) for x in row] for row in out]
    return out


def find_witness(h: HessenbergFunction, i: int, j: int):
    """First permutation matrix (lexicographic) with g^{-1} E_ij g outside H(h), or None."""
    if i == j:
        raise ValueError("E_ij needs i != j")
    space = HessSpace(h)
    for w in all_permutations(h.n):
        g = PermMatrix(w)
        if not space.contains(conjugate_elementary(g, i, j)):
            return g
    return None


def construction_witness(n: int, i: int, j: int) -> PermMatrix:
    """A permutation matrix whose (j,1) and (i,n) entries are both 1."""
    if i == j:
        raise ValueError("E_ij needs i != j")
    rest = [x for x in range(1, n + 1) if x not in (i, j)]
    return PermMatrix(tuple([j] + rest + [i]))


def cofactor(a, r: int, c: int) -> Fraction:
    """(-1)^{r+c} times the (r, c) minor, 1-based."""
    minor = [row[:c - 1] + row[c:] for k, row in enumerate(a) if k != r - 1]
    return (-1) ** (r + c) * determinant(minor)


def cofactor_entry(g, i: int, j: int) -> Fraction:
    """cofactor(a_in) * a_j1, which is the (n,1) entry of g^{-1} E_ij g when det g = 1."""
    a = _matrix_of(g)
    n = len(a)
    if determinant(a) == 0:
        raise ZeroDivisionError("singular matrix")
    return cofactor(a, i, n) * a[j - 1][0]


def random_sl_matrix(n: int, rng: random.Random, steps: int | None = None) -> list:
    """Product of elementary row operations row_a += c row_b, c in [-3, 3]; det is 1."""
    m = [[int(r == c) for c in range(n)] for r in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        a, b = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        m[a] = [x + c * y for x, y in zip(m[a], m[b])]
    return m


def certificate(h: HessenbergFunction, i: int, j: int) -> dict:
    g = find_witness(h, i, j)
    entry = None
    if g is not None:
        bad = HessSpace(h).violations(conjugate_elementary(g, i, j))
        entry = list(bad[0])
    return {"h": list(h.values), "i": i, "j": j,
            "witness": None if g is None else str(g), "violating_entry": entry}


def _certificates_for(h):
    n = h.n
    return [certificate(h, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def sweep(n: int, include_full: bool = False, workers: int = 1) -> list:
    """Certificates for every h (the full staircase only if asked) and every ordered (i, j)."""
    hs = [h for h in all_hessenberg_functions(n) if include_full or not h.is_full()]
    if workers > 1 and len(hs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_certificates_for, hs))
    else:
        chunks = [_certificates_for(h) for h in hs]
    return [c for chunk in chunks for c in chunk]
