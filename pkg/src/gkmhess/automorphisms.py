"""Automorphisms (phi, lattice map) of GKM graphs and their action on classes."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Mapping

from .cohomology import (
    DisconnectedGraphError,
    EquivariantClass,
    cohomology_of,
)
from .exact_core import LatticeMap, Polynomial, determinant, mat_inverse
from .gkm_graph import GkmGraph, connected_components, is_full_rank
from .hessenberg import (
    compose,
    inverse,
    longest_element,
    parse_perm,
    perm_id,
    star_condition,
)

log = logging.getLogger(__name__)


class NotAnAutomorphismError(ValueError):
    pass


class NotFullRankError(ValueError):
    pass


def worker_count() -> int:
    """Parallelism cap from GKM_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("GKM_THREADS", "1")))
    except ValueError:
        return 1


class GkmAutomorphism:
    """A pair (vertex bijection, lattice automorphism).

    Equality only looks at the vertex map and the restriction of the
    lattice map to the sum-zero lattice.
    """

    __slots__ = ("graph", "vertex_map", "lattice_map", "_inv_lattice")

    def __init__(self, graph: GkmGraph, vertex_map: Mapping[str, str], lattice_map: LatticeMap):
        if set(vertex_map) != set(graph.vertices) or set(vertex_map.values()) != set(graph.vertices):
            raise ValueError("vertex map is not a bijection on the vertex set")
        if lattice_map.n != graph.n_vars:
            raise ValueError("lattice map has the wrong rank")
        self.graph = graph
        self.vertex_map = dict(vertex_map)
        self.lattice_map = lattice_map
        self._inv_lattice = None

    def __call__(self, v):
        return self.vertex_map[v]

    @property
    def inverse_lattice_map(self) -> LatticeMap:
        if self._inv_lattice is None:
            self._inv_lattice = self.lattice_map.inverse()
        return self._inv_lattice

    def key(self):
        return (tuple(self.vertex_map[v] for v in self.graph.vertices),
                self.lattice_map.restricted())

    def sort_key(self, base=None):
        base = base if base is not None else min(self.graph.vertices)
        return (self.vertex_map[base], tuple(x for row in self.lattice_map.matrix for x in row))

    def __eq__(self, other):
        if not isinstance(other, GkmAutomorphism):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def compose(self, other: "GkmAutomorphism") -> "GkmAutomorphism":
        """self o other."""
        return GkmAutomorphism(
            self.graph, {v: self.vertex_map[other.vertex_map[v]] for v in self.graph.vertices},
            self.lattice_map.compose(other.lattice_map))

    def inverse(self) -> "GkmAutomorphism":
        return GkmAutomorphism(self.graph, {b: a for a, b in self.vertex_map.items()},
                               self.inverse_lattice_map)

    def is_identity(self):
        return (all(a == b for a, b in self.vertex_map.items())
                and self.lattice_map.is_identity())

    def violations(self) -> list:
        """Oriented edges e with no edge (phi(i(e)), phi(t(e)), lattice_map(alpha(e)))."""
        g = self.graph
        present = {(e.src, e.dst, e.label) for e in g.edges}
        return [e for e in g.edges
                if (self.vertex_map[e.src], self.vertex_map[e.dst],
                    self.lattice_map.apply_form(e.label)) not in present]

    def is_automorphism(self) -> bool:
        return not self.violations()

    def to_json_dict(self):
        return {"vertex_map": {v: self.vertex_map[v] for v in self.graph.vertices},
                "lattice_map": [list(row) for row in self.lattice_map.matrix]}

    def __repr__(self):
        return "GkmAutomorphism(base->%s, %r)" % (
            self.vertex_map[min(self.graph.vertices)], self.lattice_map.matrix)


def identity_automorphism(g: GkmGraph) -> GkmAutomorphism:
    return GkmAutomorphism(g, {v: v for v in g.vertices}, LatticeMap.identity(g.n_vars))


def _as_perm(sigma) -> tuple:
    if isinstance(sigma, str):
        return parse_perm(sigma)
    return tuple(sigma)


def _perm_of(g, v):
    perm_of = getattr(g, "perm_of", None)
    return perm_of[v] if perm_of is not None else parse_perm(v)


def phi_sigma(g: GkmGraph, sigma) -> GkmAutomorphism:
    """w -> sigma w on vertices, t_i -> t_{sigma(i)} on labels."""
    sigma = _as_perm(sigma)
    if len(sigma) != g.n_vars:
        raise ValueError("sigma must be a permutation of 1..%d" % g.n_vars)
    vmap = {v: perm_id(compose(sigma, _perm_of(g, v))) for v in g.vertices}
    return GkmAutomorphism(g, vmap, LatticeMap.from_permutation(sigma))


def longest_lattice_map(n) -> LatticeMap:
    """t_i -> -t_{n+1-i}."""
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[n - 1 - i][i] = -1
    return LatticeMap(m)


def phi_zero(g: GkmGraph) -> GkmAutomorphism:
    """w -> w0 w w0, t_i -> -t_{n+1-i}; raises unless the staircase is flip-symmetric."""
    h = getattr(g, "h", None)
    if h is not None and not star_condition(h):
        raise NotAnAutomorphismError(
            "h=(%s) is not symmetric under the anti-diagonal flip; phi_0 is not an automorphism" % h)
    n = g.n_vars
    w0 = longest_element(n)
    vmap = {v: perm_id(compose(compose(w0, _perm_of(g, v)), w0)) for v in g.vertices}
    a = GkmAutomorphism(g, vmap, longest_lattice_map(n))
    if h is None and not a.is_automorphism():
        raise NotAnAutomorphismError("phi_0 does not preserve this graph")
    return a


# ---------------------------------------------------------------------------
# enumeration


def _sum_zero_coords(l, n):
    c = l.coeffs
    if any(x.denominator != 1 for x in c):
        raise ValueError("label %s is not integral" % l)
    return tuple(int(x) for x in c[: n - 1])


def _adjugate(m):
    k = len(m)
    if k == 1:
        return [[1]]
    adj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(m) if r != i]
            adj[j][i] = (-1) ** (i + j) * int(determinant(minor))
    return adj


class _SearchContext:
    """Label data shared by every branch of the automorphism search."""

    def __init__(self, g: GkmGraph, base: str, basis_edges: list):
        n = g.n_vars
        self.g = g
        self.base = base
        self.k = k = n - 1
        self.basis_edges = basis_edges
        self.coords = {}
        for e in g.edges:
            if e.label not in self.coords:
                self.coords[e.label] = _sum_zero_coords(e.label, n)
        self.label_index = {v: {self.coords[g.edges[e].label]: e for e in g.star(v)}
                            for v in g.vertices}
        bmat = [[self.coords[g.edges[e].label][r] for e in basis_edges] for r in range(k)]
        self.det = int(determinant(bmat))
        self.adj = _adjugate(bmat)
        binv = mat_inverse(bmat)
        # every base label as a rational combination of the basis labels, grouped by
        # the deepest basis position it needs, so it can be checked as early as possible
        self.checks = [[] for _ in range(k)]
        for e in g.star(base):
            if e in basis_edges:
                continue
            x = self.coords[g.edges[e].label]
            comb = [sum(binv[j][r] * x[r] for r in range(k)) for j in range(k)]
            support = [j for j in range(k) if comb[j]]
            self.checks[max(support)].append(comb)


def _search_target(ctx: _SearchContext, q: str) -> list:
    """All automorphisms sending the base vertex to ``q`` as (vertex_map, restricted matrix)."""
    g, k, base = ctx.g, ctx.k, ctx.base
    if len(g.star(q)) != len(g.star(base)):
        return []
    coords = ctx.coords
    target = ctx.label_index[q]
    det, adj = ctx.det, ctx.adj
    found = []
    img = [None] * k

    def partial_ok(depth):
        for comb in ctx.checks[depth]:
            v = tuple(sum(comb[j] * img[j][r] for j in range(depth + 1)) for r in range(k))
            if any(isinstance(x, Fraction) and x.denominator != 1 for x in v):
                return False
            if tuple(int(x) for x in v) not in target:
                return False
        return True

    def finish():
        # A = B' adj(B) / det(B)
        amat = []
        for r in range(k):
            row = []
            for c in range(k):
                s = sum(img[j][r] * adj[j][c] for j in range(k))
                if s % det:
                    return
                row.append(s // det)
            amat.append(row)
        if abs(_int_det(amat)) != 1:
            return
        cache = {}

        def apply(lab):
            hit = cache.get(lab)
            if hit is None:
                x = coords[lab]
                hit = cache[lab] = tuple(sum(amat[r][c] * x[c] for c in range(k))
                                         for r in range(k))
            return hit

        vmap = {base: q}
        used = {q}
        queue = [base]
        while queue:
            p = queue.pop()
            look = ctx.label_index[vmap[p]]
            if len(look) != len(g.star(p)):
                return
            for e in g.star(p):
                edge = g.edges[e]
                e2 = look.get(apply(edge.label))
                if e2 is None:
                    return
                r, r2 = edge.dst, g.edges[e2].dst
                if r in vmap:
                    if vmap[r] != r2:
                        return
                elif r2 in used:
                    return
                else:
                    vmap[r] = r2
                    used.add(r2)
                    queue.append(r)
        if len(vmap) == len(g.vertices):
            found.append((vmap, tuple(tuple(row) for row in amat)))

    chosen = set()

    def dfs(depth):
        if depth == k:
            finish()
            return
        for e in g.star(q):
            if e in chosen:
                continue
            img[depth] = coords[g.edges[e].label]
            if not partial_ok(depth):
                continue
            chosen.add(e)
            dfs(depth + 1)
            chosen.discard(e)

    dfs(0)
    return found


def _int_det(m):
    k = len(m)
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for c in range(k - 1):
        if a[c][c] == 0:
            sw = next((i for i in range(c + 1, k) if a[i][c]), None)
            if sw is None:
                return 0
            a[c], a[sw] = a[sw], a[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[k - 1][k - 1] if k else 1


def _basis_edges(g: GkmGraph, base: str) -> list:
    from .exact_core import span_rank

    n = g.n_vars
    chosen = []
    vecs = []
    for e in g.star(base):
        cand = vecs + [_sum_zero_coords(g.edges[e].label, n)]
        if span_rank(cand) == len(cand):
            chosen.append(e)
            vecs = cand
        if len(chosen) == n - 1:
            break
    return chosen


def enumerate_aut(g: GkmGraph, workers: int | None = None) -> list:
    """The full automorphism group of a connected full-rank GKM graph, sorted."""
    if len(connected_components(g)) != 1:
        raise DisconnectedGraphError("automorphism search needs a connected graph")
    if not is_full_rank(g):
        raise NotFullRankError("axial function is not of full rank; the group may be infinite")
    n = g.n_vars
    base = min(g.vertices)
    if n == 1:
        # no nonzero labels exist, so a connected graph is a single vertex
        return [identity_automorphism(g)]
    ctx = _SearchContext(g, base, _basis_edges(g, base))
    targets = sorted(g.vertices)
    workers = workers or worker_count()
    if workers > 1 and len(targets) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_target, [ctx] * len(targets), targets))
    else:
        chunks = [_search_target(ctx, q) for q in targets]
    auts = []
    for chunk in chunks:
        for vmap, amat in chunk:
            auts.append(GkmAutomorphism(g, vmap, LatticeMap.from_restriction(amat)))
    auts.sort(key=lambda a: a.sort_key(base))
    log.debug("found %d automorphisms", len(auts))
    return auts


def generated_group(g: GkmGraph) -> list:
    """{phi_sigma} together with {phi_sigma o phi_0} when phi_0 exists."""
    from .hessenberg import all_permutations

    out = [phi_sigma(g, s) for s in all_permutations(g.n_vars)]
    try:
        z = phi_zero(g)
    except NotAnAutomorphismError:
        return out
    return out + [a.compose(z) for a in out]


# ---------------------------------------------------------------------------
# actions


def act_on_map(a: GkmAutomorphism, xi: EquivariantClass) -> EquivariantClass:
    """(a^* xi)(p) = lattice_map^{-1}(xi(phi(p))); contravariant in a."""
    if xi.graph is not a.graph and set(xi.graph.vertices) != set(a.graph.vertices):
        raise ValueError("class and automorphism live on different graphs")
    inv = a.inverse_lattice_map
    return EquivariantClass(
        xi.graph, xi.degree,
        {v: inv.apply(xi.values[a.vertex_map[v]]) for v in xi.graph.vertices}, xi.lattice)


def dot_action(tau, xi: EquivariantClass) -> EquivariantClass:
    """(tau . xi)(w) = tau(xi(tau^{-1} w)) with tau(t_i) = t_{tau(i)}."""
    tau = _as_perm(tau)
    g = xi.graph
    lm = LatticeMap.from_permutation(tau)
    tinv = inverse(tau)
    return EquivariantClass(
        g, xi.degree,
        {v: lm.apply(xi.values[perm_id(compose(tinv, _perm_of(g, v)))]) for v in g.vertices},
        xi.lattice)


def _monomial_images(lm: LatticeMap, coh, k):
    """Per coordinate monomial of degree k: {monomial index: coefficient} of its image."""
    cd = coh.coords
    ms, idx = cd.monomials(k)
    if cd.lattice == "T":
        mat = lm.restricted()
    else:
        mat = lm.matrix
    nv = cd.nv
    images = [Polynomial.from_linear([mat[r][i] for r in range(nv)]) for i in range(nv)]
    out = []
    for e in ms:
        p = Polynomial(nv, {e: 1}).substitute(images)
        out.append({idx[m]: c for m, c in p.items()})
    return out


def action_matrix(a: GkmAutomorphism, degree: int, lattice: str = "T") -> list:
    """Matrix of a^* on ordinary H^degree in the computed quotient basis (column j = image of j)."""
    coh = cohomology_of(a.graph, lattice)
    data = coh.ordinary(degree)
    b = data.ordinary_dimension
    if degree % 2 or b == 0:
        return [[Fraction(int(i == j)) for j in range(b)] for i in range(b)]
    k = degree // 2
    g = a.graph
    m = data.n_monomials
    mono = _monomial_images(a.inverse_lattice_map, coh, k)
    free_pos = {f: i for i, f in enumerate(data.free)}
    cols = []
    for q in data.quotient_indices:
        by_vertex = {}
        for col, val in data.vectors[q].items():
            vert, mi = divmod(col, m)
            by_vertex.setdefault(vert, []).append((mi, val))
        coords = {}
        for pi, v in enumerate(g.vertices):
            src = g.index(a.vertex_map[v])
            for mi, val in by_vertex.get(src, ()):
                for mj, c in mono[mi].items():
                    bi = free_pos.get(pi * m + mj)
                    if bi is not None:
                        coords[bi] = coords.get(bi, 0) + val * c
        cols.append(data.project(coords))
    return [[cols[j][i] for j in range(b)] for i in range(b)]


def is_identity_matrix(mat) -> bool:
    return all(x == (1 if i == j else 0) for i, row in enumerate(mat) for j, x in enumerate(row))


def aut_star(g: GkmGraph, up_to_degree: int | None = None, automorphisms=None) -> list:
    """Automorphisms acting trivially on ordinary H^{2k} for every k <= up_to_degree."""
    top = g.valence if up_to_degree is None else up_to_degree
    auts = list(automorphisms) if automorphisms is not None else enumerate_aut(g)
    keep = []
    for a in auts:
        if all(is_identity_matrix(action_matrix(a, 2 * k)) for k in range(1, top + 1)):
            keep.append(a)
    return keep
