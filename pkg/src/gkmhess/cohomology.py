"""
Equivariant and ordinary graph cohomology over Q.

A degree-2k class is a map vertex -> homogeneous polynomial of degree k
whose differences across every edge are divisible by the edge label.
Coefficients live either in H*(BT), polynomials in s_i = t_i - t_n
(``lattice="T"``), or in H*(BT-hat) = Q[t_1..t_n] (``lattice="T_hat"``).
Classes are always handed out as polynomials in t_1..t_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Mapping

from .exact_core import (
    Echelon,
    integer_row,
    LinearForm,
    Polynomial,
    divisible_by_linear,
    monomials,
)
from .gkm_graph import GkmGraph, connected_components

LATTICES = ("T", "T_hat")


class DisconnectedGraphError(ValueError):
    pass


def _lattice_name(lattice: str) -> str:
    key = lattice.replace("-", "_").replace("^", "_").lower()
    if key in ("t",):
        return "T"
    if key in ("t_hat", "that", "thatt", "hat"):
        return "T_hat"
    raise ValueError("unknown lattice %r (use 'T' or 'T_hat')" % lattice)


def _check_degree(degree):
    if not isinstance(degree, int) or degree < 0:
        raise ValueError("cohomological degree must be a nonnegative integer, got %r" % degree)


# ---------------------------------------------------------------------------
# classes


@dataclass
class EquivariantClass:
    """A vertex -> polynomial map of cohomological degree ``degree``."""

    graph: GkmGraph
    degree: int
    values: dict
    lattice: str = "T"

    def __post_init__(self):
        _check_degree(self.degree)
        missing = [v for v in self.graph.vertices if v not in self.values]
        if missing:
            raise ValueError("class has no value at vertex %s" % missing[0])
        k = self.degree // 2
        for v, p in self.values.items():
            if p.n_vars != self.graph.n_vars:
                raise ValueError("value at %s has the wrong number of variables" % v)
            if self.degree % 2 and not p.is_zero():
                raise ValueError("odd-degree classes vanish")
            d = p.homogeneous_degree()
            if d is not None and d != k:
                raise ValueError("value at %s has degree %d, expected %d" % (v, d, k))

    def __getitem__(self, v):
        return self.values[v]

    def congruence_failures(self) -> list:
        """Oriented edges whose endpoint values are not congruent mod the label."""
        g = self.graph
        bad = []
        for k in g.unordered_edges():
            e = g.edges[k]
            if not divisible_by_linear(self.values[e.src] - self.values[e.dst], e.label):
                bad.append(e)
        return bad

    def is_valid(self) -> bool:
        return not self.congruence_failures()

    def _combine(self, other, sign):
        if other.graph is not self.graph or other.degree != self.degree:
            raise ValueError("classes live on different graphs or degrees")
        return EquivariantClass(
            self.graph, self.degree,
            {v: self.values[v] + other.values[v].scale(sign) for v in self.graph.vertices},
            self.lattice)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return EquivariantClass(self.graph, self.degree,
                                {v: p.scale(c) for v, p in self.values.items()}, self.lattice)

    def times(self, p: Polynomial):
        """Multiply pointwise by a constant polynomial (an element of H*(BT))."""
        d = p.homogeneous_degree() or 0
        return EquivariantClass(self.graph, self.degree + 2 * d,
                                {v: q * p for v, q in self.values.items()}, self.lattice)

    def __eq__(self, other):
        if not isinstance(other, EquivariantClass):
            return NotImplemented
        return (self.graph is other.graph and self.degree == other.degree
                and all(self.values[v] == other.values[v] for v in self.graph.vertices))

    def is_zero(self):
        return all(p.is_zero() for p in self.values.values())

    def table(self) -> dict:
        return {v: str(self.values[v]) for v in self.graph.vertices}


def constant_class(graph: GkmGraph, p: Polynomial, lattice="T") -> EquivariantClass:
    d = p.homogeneous_degree() or 0
    return EquivariantClass(graph, 2 * d, {v: p for v in graph.vertices}, _lattice_name(lattice))


# ---------------------------------------------------------------------------
# coordinates


class _Coordinates:
    """Monomial coordinates of the coefficient ring for one lattice."""

    def __init__(self, n: int, lattice: str):
        self.n = n
        self.lattice = lattice
        self.nv = n if lattice == "T_hat" else n - 1
        self._mono = {}
        self._to_t = None

    def monomials(self, k):
        if k not in self._mono:
            ms = monomials(self.nv, k) if self.nv else ([()] if k == 0 else [])
            self._mono[k] = (ms, {m: i for i, m in enumerate(ms)})
        return self._mono[k]

    def label(self, l: LinearForm) -> tuple:
        """Integer coordinate vector of a label (scaled; only its line matters)."""
        if self.lattice == "T":
            if not l.is_sum_zero():
                raise ValueError("label %s is not in the sum-zero lattice" % l)
            c = l.coeffs[: self.n - 1]
        else:
            c = l.coeffs
        den = 1
        for x in c:
            den = lcm(den, x.denominator)
        return tuple(int(x * den) for x in c)

    def to_t(self, exps_coeffs: Mapping[tuple, Fraction]) -> Polynomial:
        """Polynomial in t from a coordinate polynomial."""
        if self.lattice == "T_hat":
            return Polynomial(self.n, exps_coeffs)
        if self._to_t is None:
            n = self.n
            self._to_t = [Polynomial.from_linear([1 if r == i else (-1 if r == n - 1 else 0)
                                                  for r in range(n)]) for i in range(n - 1)]
        if self.nv == 0:
            c = exps_coeffs.get((), 0)
            return Polynomial.constant(self.n, c)
        return Polynomial(self.nv, exps_coeffs).substitute(self._to_t)

    def from_t(self, p: Polynomial) -> dict:
        """Coordinate polynomial of ``p``; for T, ``p`` must lie in H*(BT)."""
        if self.lattice == "T_hat":
            return dict(p.items())
        n = self.n
        restricted = {}
        for e, c in p.items():
            if e[n - 1] == 0:
                restricted[e[: n - 1]] = c
        check = self.to_t(restricted)
        if check != p:
            raise ValueError("%s does not lie in H*(BT)" % p)
        return restricted


# ---------------------------------------------------------------------------
# per-degree solver


@dataclass
class CohomologyBasis:
    """Everything known about one even degree 2k.

    ``free`` lists the kernel free columns; basis vector b has a 1 at
    ``free[b]`` and zeros at the other free columns, so the basis
    coordinates of any class are its entries at ``free``.
    ``quotient_projection`` maps those coordinates to coordinates in the
    ordinary cohomology H^{2k}, whose basis is represented by the
    equivariant basis vectors listed in ``quotient_indices``.
    """

    degree: int
    n_monomials: int
    free: list
    vectors: list
    ordinary_dimension: int | None = None
    quotient_indices: list = field(default_factory=list)
    quotient_projection: list = field(default_factory=list)
    _graph: GkmGraph | None = None
    _coords: _Coordinates | None = None
    _classes: list | None = None

    @property
    def dimension(self):
        return len(self.free)

    @property
    def equivariant_basis(self) -> list:
        if self._classes is None:
            self._classes = [self._to_class(vec) for vec in self.vectors]
        return self._classes

    def _to_class(self, vec) -> EquivariantClass:
        g, cd = self._graph, self._coords
        ms, _ = cd.monomials(self.degree // 2)
        m = self.n_monomials
        per_vertex = [dict() for _ in g.vertices]
        for col, val in vec.items():
            per_vertex[col // m][ms[col % m]] = val
        values = {v: cd.to_t(per_vertex[i]) for i, v in enumerate(g.vertices)}
        return EquivariantClass(g, self.degree, values, cd.lattice)

    def project(self, coords: Mapping[int, Fraction]) -> list:
        """Ordinary-cohomology coordinates from equivariant-basis coordinates."""
        out = []
        for row in self.quotient_projection:
            s = Fraction(0)
            for b, v in coords.items():
                c = row.get(b)
                if c:
                    s += c * v
            out.append(s)
        return out


class GraphCohomology:
    """Lazily solved equivariant cohomology of one graph in one lattice."""

    def __init__(self, graph: GkmGraph, lattice: str = "T"):
        self.graph = graph
        self.lattice = _lattice_name(lattice)
        self.coords = _Coordinates(graph.n_vars, self.lattice)
        self._degrees = {}
        self._restr = {}
        self._powers = {}
        self._label_coords = {}
        self._ordinary_done = set()

    # -- constraints

    def _label(self, l):
        c = self._label_coords.get(l)
        if c is None:
            c = self._label_coords[l] = self.coords.label(l)
        return c

    def _linear_power(self, lc, r, m):
        """(-sum_{i != r} c_i x_i)^m as {exps: int}."""
        key = (lc, r, m)
        hit = self._powers.get(key)
        if hit is not None:
            return hit
        nv = len(lc)
        if m == 0:
            res = {(0,) * nv: 1}
        else:
            prev = self._linear_power(lc, r, m - 1)
            res = {}
            for e, c in prev.items():
                for i, ci in enumerate(lc):
                    if i == r or not ci:
                        continue
                    e2 = list(e)
                    e2[i] += 1
                    e2 = tuple(e2)
                    v = res.get(e2, 0) - ci * c
                    if v:
                        res[e2] = v
                    else:
                        res.pop(e2, None)
        self._powers[key] = res
        return res

    def _restriction(self, lc, k):
        """Per monomial index: {target exps: int}, the restriction to lc = 0 scaled by c_r^k."""
        key = (lc, k)
        hit = self._restr.get(key)
        if hit is not None:
            return hit
        r = max(i for i, c in enumerate(lc) if c)
        cr = lc[r]
        ms, _ = self.coords.monomials(k)
        out = []
        for e in ms:
            er = e[r]
            base = list(e)
            base[r] = 0
            scale = cr ** (k - er)
            img = {}
            for pe, pc in self._linear_power(lc, r, er).items():
                t = tuple(a + b for a, b in zip(base, pe))
                img[t] = img.get(t, 0) + scale * pc
            out.append({t: v for t, v in img.items() if v})
        self._restr[key] = out
        return out

    def _constraint_rows(self, k):
        g = self.graph
        ms, _ = self.coords.monomials(k)
        m = len(ms)
        rows = []
        for ek in g.unordered_edges():
            e = g.edges[ek]
            lc = self._label(e.label)
            if not any(lc):
                raise ValueError("zero label on edge %s -> %s" % (e.src, e.dst))
            restr = self._restriction(lc, k)
            p0 = g.index(e.src) * m
            q0 = g.index(e.dst) * m
            by_target = {}
            for mi, img in enumerate(restr):
                for t, v in img.items():
                    row = by_target.setdefault(t, {})
                    row[p0 + mi] = row.get(p0 + mi, 0) + v
                    row[q0 + mi] = row.get(q0 + mi, 0) - v
            for t in sorted(by_target):
                row = {c: v for c, v in by_target[t].items() if v}
                if row:
                    rows.append(row)
        return rows

    def solve(self, degree: int) -> CohomologyBasis:
        """Equivariant basis in cohomological ``degree`` (odd degrees are zero)."""
        _check_degree(degree)
        if degree in self._degrees:
            return self._degrees[degree]
        if degree % 2:
            data = CohomologyBasis(degree, 0, [], [], 0, [], [], self.graph, self.coords)
            self._degrees[degree] = data
            return data
        k = degree // 2
        ms, _ = self.coords.monomials(k)
        m = len(ms)
        ech = Echelon(len(self.graph.vertices) * m)
        for row in self._constraint_rows(k):
            ech.add(row)
        kern = ech.kernel()
        data = CohomologyBasis(degree, m, [f for f, _ in kern], [v for _, v in kern],
                               _graph=self.graph, _coords=self.coords)
        self._degrees[degree] = data
        return data

    def dimension(self, degree: int) -> int:
        return self.solve(degree).dimension

    # -- coordinates of arbitrary maps

    def vector_of(self, xi: EquivariantClass) -> dict:
        """Sparse column vector of a class in the solver's coordinates."""
        k = xi.degree // 2
        ms, idx = self.coords.monomials(k)
        m = len(ms)
        vec = {}
        for i, v in enumerate(self.graph.vertices):
            for e, c in self.coords.from_t(xi.values[v]).items():
                vec[i * m + idx[e]] = c
        return vec

    def basis_coordinates(self, xi: EquivariantClass) -> dict:
        """Coordinates of ``xi`` in the equivariant basis; raises if ``xi`` is not a class."""
        data = self.solve(xi.degree)
        vec = self.vector_of(xi)
        coords = {b: vec[f] for b, f in enumerate(data.free) if vec.get(f)}
        # the free entries determine the class; confirm it really is one
        recon = {}
        for b, c in coords.items():
            for col, v in data.vectors[b].items():
                recon[col] = recon.get(col, 0) + c * v
        recon = {c: v for c, v in recon.items() if v}
        if recon != {c: v for c, v in vec.items() if v}:
            raise ValueError("map does not satisfy the edge congruences")
        return coords

    # -- ordinary cohomology

    def ordinary(self, degree: int) -> CohomologyBasis:
        """Fill in the quotient H^{2k}_T / (H^{>0}(BT)) for ``degree``."""
        data = self.solve(degree)
        if degree in self._ordinary_done:
            return data
        if degree % 2 or degree == 0:
            n_q = data.dimension
            data.ordinary_dimension = n_q
            data.quotient_indices = list(range(n_q))
            data.quotient_projection = [{b: Fraction(1)} for b in range(n_q)]
            self._ordinary_done.add(degree)
            return data
        k = degree // 2
        lower = self.solve(degree - 2)
        ms_lo, _ = self.coords.monomials(k - 1)
        ms, idx = self.coords.monomials(k)
        m_lo, m = len(ms_lo), len(ms)
        free_pos = {f: b for b, f in enumerate(data.free)}
        nv = self.coords.nv
        shift = []
        for i in range(nv):
            unit = tuple(int(r == i) for r in range(nv))
            shift.append([idx[tuple(a + b for a, b in zip(e, unit))] for e in ms_lo])
        ideal = Echelon(data.dimension)
        for vec in lower.vectors:
            den = 1
            for v in vec.values():
                den = lcm(den, v.denominator)
            ivec = {c: int(v * den) for c, v in vec.items()}
            for i in range(nv):
                sh = shift[i]
                row = {}
                for col, v in ivec.items():
                    vert, mi = divmod(col, m_lo)
                    b = free_pos.get(vert * m + sh[mi])
                    if b is not None:
                        row[b] = row.get(b, 0) + v
                ideal.add(row)
        q_idx = ideal.free_columns()
        proj = []
        for q in q_idx:
            row = {q: Fraction(1)}
            for c, prow in ideal.rows.items():
                v = prow.get(q)
                if v:
                    row[c] = Fraction(-v, prow[c])
            proj.append(row)
        data.ordinary_dimension = len(q_idx)
        data.quotient_indices = q_idx
        data.quotient_projection = proj
        self._ordinary_done.add(degree)
        return data

    def ordinary_coordinates(self, xi: EquivariantClass) -> list:
        data = self.ordinary(xi.degree)
        return data.project(self.basis_coordinates(xi))


def cohomology_of(graph: GkmGraph, lattice: str = "T") -> GraphCohomology:
    """Cached solver attached to the graph object."""
    lattice = _lattice_name(lattice)
    cache = graph.__dict__.setdefault("_cohomology_cache", {})
    if lattice not in cache:
        cache[lattice] = GraphCohomology(graph, lattice)
    return cache[lattice]


# ---------------------------------------------------------------------------
# public operations


def equivariant_basis(g: GkmGraph, lattice: str = "T", degree: int = 0) -> list:
    """Q-basis of H^degree_T(Gamma, alpha); ``degree`` is cohomological."""
    _check_degree(degree)
    return list(cohomology_of(g, lattice).solve(degree).equivariant_basis)


def equivariant_dimension(g: GkmGraph, lattice: str = "T", degree: int = 0) -> int:
    return cohomology_of(g, lattice).dimension(degree)


def betti_numbers(g: GkmGraph, lattice: str = "T", max_k: int | None = None) -> list:
    """(b_0, b_2, ..., b_2d) with trailing zeros dropped.

    Degrees up to the valence are computed unless ``max_k`` says otherwise.
    """
    if len(connected_components(g)) != 1:
        raise DisconnectedGraphError(
            "graph is disconnected; compute Betti numbers per component")
    coh = cohomology_of(g, lattice)
    top = g.valence if max_k is None else max_k
    if top is None:
        raise ValueError("graph is not regular")
    betti = [coh.ordinary(2 * k).ordinary_dimension for k in range(top + 1)]
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    return betti


def hilbert_rhs(betti, n: int, k: int) -> int:
    """sum_j b_{2(k-j)} * dim H^{2j}(BT) with dim H^{2j}(BT) = C(j+n-2, n-2)."""
    return sum(betti[k - j] * comb(j + n - 2, n - 2)
               for j in range(k + 1) if 0 <= k - j < len(betti))


def x_classes(g) -> list:
    """x-hat_i(w) = t_{w(i)} on the big torus, i = 1..n."""
    perm_of = getattr(g, "perm_of", None)
    if perm_of is None:
        raise TypeError("x classes need a Hessenberg graph")
    n = g.n_vars
    return [EquivariantClass(
        g, 2, {v: Polynomial.variable(n, perm_of[v][i - 1]) for v in g.vertices}, "T_hat")
        for i in range(1, n + 1)]


def to_sum_zero(xi: EquivariantClass) -> EquivariantClass:
    """Project a big-torus class to H*(BT) coefficients via t_i -> t_i - (t_1+...+t_n)/n."""
    n = xi.graph.n_vars
    images = [Polynomial.from_linear([Fraction(int(r == i)) - Fraction(1, n) for r in range(n)])
              for i in range(n)]
    return EquivariantClass(xi.graph, xi.degree,
                            {v: p.substitute(images) for v, p in xi.values.items()}, "T")


def ordinary_rank(classes, lattice=None) -> int:
    """Dimension of the span of the images of ``classes`` in ordinary cohomology."""
    classes = list(classes)
    if not classes:
        return 0
    lat = lattice or classes[0].lattice
    coh = cohomology_of(classes[0].graph, lat)
    ech = Echelon(coh.ordinary(classes[0].degree).ordinary_dimension)
    for xi in classes:
        vec = coh.ordinary_coordinates(xi)
        ech.add(integer_row({i: v for i, v in enumerate(vec)}))
    return ech.rank
