"""Hessenberg functions and the GKM graph of the regular semisimple Hessenberg variety."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itperms
from typing import NamedTuple, Sequence

from .exact_core import LinearForm
from .gkm_graph import GkmGraph, OrientedEdge

GRAPH_MAX_N = 6


class InvalidHessenbergFunction(ValueError):
    pass


class SizeGuardError(ValueError):
    pass


# -- permutations in one-line notation (tuples of 1..n)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple:
    """S_n in lexicographic order."""
    return tuple(_itperms(range(1, n + 1)))


def perm_id(w: Sequence[int]) -> str:
    if len(w) > 9:
        raise ValueError("one-line vertex ids need n <= 9")
    return "".join(str(x) for x in w)


def parse_perm(s: str) -> tuple:
    w = tuple(int(c) for c in s)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError("%r is not a permutation in one-line notation" % s)
    return w


def compose(a, b) -> tuple:
    """(a b)(k) = a(b(k))."""
    return tuple(a[x - 1] for x in b)


def inverse(a) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a, 1):
        inv[x - 1] = i
    return tuple(inv)


def identity(n) -> tuple:
    return tuple(range(1, n + 1))


def longest_element(n) -> tuple:
    return tuple(range(n, 0, -1))


def right_transposition(w, i, j) -> tuple:
    """w (i j): swap the entries in positions i and j."""
    w = list(w)
    w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
    return tuple(w)


# -- Hessenberg functions


class StaircaseBox(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class HessenbergFunction:
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n == 0:
            raise InvalidHessenbergFunction("empty Hessenberg function")
        for j, v in enumerate(vals, 1):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidHessenbergFunction("entry h(%d)=%r is not an integer" % (j, v))
            if not 1 <= v <= n:
                raise InvalidHessenbergFunction("entry h(%d)=%d outside [1, %d]" % (j, v, n))
            if v < j:
                raise InvalidHessenbergFunction("h(%d)=%d < %d" % (j, v, j))
        for j in range(1, n):
            if vals[j] < vals[j - 1]:
                raise InvalidHessenbergFunction(
                    "non-monotone: h(%d)=%d > h(%d)=%d" % (j, vals[j - 1], j + 1, vals[j]))

    @property
    def n(self):
        return len(self.values)

    def __call__(self, j):
        return self.values[j - 1]

    def boxes(self) -> list:
        """Staircase {(i, j) : j < i <= h(j)}, column by column."""
        return [StaircaseBox(i, j) for j in range(1, self.n + 1)
                for i in range(j + 1, self(j) + 1)]

    def contains(self, i, j) -> bool:
        return j < i <= self(j)

    def is_full(self):
        return all(v == self.n for v in self.values)

    def __str__(self):
        return ",".join(str(v) for v in self.values)

    @classmethod
    def parse(cls, text: str) -> "HessenbergFunction":
        try:
            vals = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
        except ValueError as exc:
            raise InvalidHessenbergFunction("cannot parse %r" % text) from exc
        return validate_h(vals)


def validate_h(values: Sequence[int]) -> HessenbergFunction:
    return HessenbergFunction(tuple(values))


def all_hessenberg_functions(n: int) -> list:
    out = []

    def rec(prefix):
        j = len(prefix) + 1
        if j > n:
            out.append(HessenbergFunction(tuple(prefix)))
            return
        lo = max(j, prefix[-1] if prefix else 1)
        for v in range(lo, n + 1):
            rec(prefix + [v])

    rec([])
    return out


def connected_hessenberg_functions(n: int) -> list:
    return [h for h in all_hessenberg_functions(n) if is_connected(h)]


def full_staircase(n: int) -> HessenbergFunction:
    return HessenbergFunction((n,) * n)


def complex_dimension(h: HessenbergFunction) -> int:
    return sum(h(j) - j for j in range(1, h.n + 1))


def is_connected(h: HessenbergFunction) -> bool:
    return all(h(j) >= j + 1 for j in range(1, h.n))


def star_condition(h: HessenbergFunction) -> bool:
    """Staircase invariant under the anti-diagonal flip (i, j) -> (n+1-j, n+1-i)."""
    n = h.n
    boxes = set(h.boxes())
    return all(StaircaseBox(n + 1 - j, n + 1 - i) in boxes for i, j in boxes)


def star_condition_transposed(h: HessenbergFunction) -> bool:
    """Same condition via the flipped function: h(j) = n - #{i : h(i) < n+1-j}."""
    n = h.n
    return all(h(j) == n - sum(1 for i in range(1, n + 1) if h(i) < n + 1 - j)
               for j in range(1, n + 1))


class HessenbergGraph(GkmGraph):
    """(Gamma_h, alpha_h) with vertices the one-line strings of S_n."""

    def __init__(self, h: HessenbergFunction, oriented_edges):
        n = h.n
        self.h = h
        self.perms = all_permutations(n)
        super().__init__(n, [perm_id(w) for w in self.perms], oriented_edges)
        self.perm_of = {perm_id(w): w for w in self.perms}


def build_gkm_graph(h: HessenbergFunction, unsafe_large: bool = False) -> HessenbergGraph:
    """Vertices S_n; edge (w, w(i,j)) labeled t_{w(i)} - t_{w(j)} for every staircase box."""
    n = h.n
    if n > GRAPH_MAX_N and not unsafe_large:
        raise SizeGuardError("n=%d exceeds the graph-building guard of %d" % (n, GRAPH_MAX_N))
    boxes = h.boxes()
    edges = []
    for w in all_permutations(n):
        src = perm_id(w)
        for i, j in boxes:
            edges.append(OrientedEdge(src, perm_id(right_transposition(w, i, j)),
                                      LinearForm.root(n, w[i - 1], w[j - 1])))
    return HessenbergGraph(h, edges)
