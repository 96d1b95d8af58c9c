"""GKM graphs: oriented edges with an axial function into linear forms."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms import bipartite

from .exact_core import LinearForm, as_rational, congruent_mod, rational_str, span_rank


@dataclass(frozen=True)
class OrientedEdge:
    src: str
    dst: str
    label: LinearForm

    def describe(self):
        return {"src": self.src, "dst": self.dst, "label": str(self.label)}


class GkmGraph:
    """A graph (Gamma, alpha).

    Both orientations of every edge are stored; ``reverse(e)`` gives the
    index of the opposite orientation (``None`` when the input was not
    closed under reversal).  Construction does not enforce the axioms, so
    broken graphs can be built and handed to :func:`validate`.
    """

    def __init__(self, n_vars: int, vertices: Sequence[str], oriented_edges: Iterable):
        self.n_vars = n_vars
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        edges = []
        for e in oriented_edges:
            if not isinstance(e, OrientedEdge):
                src, dst, label = e
                if not isinstance(label, LinearForm):
                    label = LinearForm(tuple(label))
                e = OrientedEdge(str(src), str(dst), label)
            if e.src not in self._index or e.dst not in self._index:
                raise ValueError("edge %s -> %s references an unknown vertex" % (e.src, e.dst))
            if e.label.n_vars != n_vars:
                raise ValueError("label %s has the wrong number of variables" % e.label)
            edges.append(e)
        self.edges = tuple(edges)
        self._stars = {v: [] for v in self.vertices}
        for k, e in enumerate(self.edges):
            self._stars[e.src].append(k)
        self._reverse = None

    @classmethod
    def from_unordered(cls, n_vars, vertices, edges):
        """Build from one orientation per edge; the reverse is added with label negated."""
        oriented = []
        for src, dst, label in edges:
            if not isinstance(label, LinearForm):
                label = LinearForm(tuple(label))
            oriented.append(OrientedEdge(str(src), str(dst), label))
            oriented.append(OrientedEdge(str(dst), str(src), -label))
        return cls(n_vars, vertices, oriented)

    # -- structure

    def index(self, v):
        return self._index[v]

    def __contains__(self, v):
        return v in self._index

    def star(self, v) -> list:
        """Indices of the oriented edges leaving ``v``."""
        return self._stars[v]

    def labels_at(self, v) -> list:
        return [self.edges[k].label for k in self._stars[v]]

    def degrees(self):
        return {v: len(s) for v, s in self._stars.items()}

    @property
    def valence(self):
        """Common out-degree, or ``None`` for an irregular graph."""
        degs = set(self.degrees().values())
        if len(degs) == 1:
            return degs.pop()
        return None if degs else 0

    def _pairing(self):
        if self._reverse is None:
            by_key = {}
            for k, e in enumerate(self.edges):
                by_key.setdefault((e.src, e.dst, e.label), []).append(k)
            rev = []
            for e in self.edges:
                matches = by_key.get((e.dst, e.src, -e.label), [])
                rev.append(matches[0] if len(matches) == 1 else None)
            self._reverse = rev
        return self._reverse

    def reverse(self, k):
        return self._pairing()[k]

    def unordered_edges(self) -> list:
        """One oriented representative (the lower index) per paired edge."""
        rev = self._pairing()
        return [k for k, r in enumerate(rev) if r is not None and k < r]

    def underlying_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((e.src, e.dst) for e in self.edges)
        return g

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return "%s(%d vertices, %d oriented edges, n_vars=%d)" % (
            type(self).__name__, len(self.vertices), len(self.edges), self.n_vars)

    # -- serialization

    def to_json_dict(self):
        out = []
        for k in self.unordered_edges():
            e = self.edges[k]
            out.append({"src": e.src, "dst": e.dst,
                        "label": [rational_str(c) for c in e.label.coeffs]})
        return {"n_vars": self.n_vars, "vertices": list(self.vertices), "edges": out}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data):
        try:
            n_vars = int(data["n_vars"])
            vertices = [str(v) for v in data["vertices"]]
            edges = [(e["src"], e["dst"], LinearForm(tuple(as_rational(c) for c in e["label"])))
                     for e in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError("malformed GKM graph JSON: %s" % exc) from exc
        return cls.from_unordered(n_vars, vertices, edges)

    @classmethod
    def from_json(cls, text: str):
        return cls.from_json_dict(json.loads(text))

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for v in self.vertices:
            lines.append('  "%s";' % v)
        for k in self.unordered_edges():
            e = self.edges[k]
            lines.append('  "%s" -- "%s" [label="%s"];' % (e.src, e.dst, e.label))
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: dict | None = None


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self):
        return {"ok": self.ok,
                "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness}
                           for c in self.checks]}


def _has_congruence_bijection(src_labels, dst_labels, l) -> bool:
    if len(src_labels) != len(dst_labels):
        return False
    g = nx.Graph()
    left = [("a", i) for i in range(len(src_labels))]
    g.add_nodes_from(left)
    g.add_nodes_from(("b", j) for j in range(len(dst_labels)))
    for i, a in enumerate(src_labels):
        for j, b in enumerate(dst_labels):
            if congruent_mod(a, b, l):
                g.add_edge(("a", i), ("b", j))
    matching = bipartite.hopcroft_karp_matching(g, top_nodes=left)
    return len(matching) == 2 * len(src_labels)


def validate(g: GkmGraph) -> ValidationReport:
    """Check the three axial-function axioms plus regularity.

    Failures are reported with a witness, never raised.
    """
    report = ValidationReport()

    bad = next((k for k in range(len(g.edges)) if g.reverse(k) is None), None)
    report.checks.append(AxiomCheck(
        "axiom1_reversal", bad is None,
        None if bad is None else {"edge": g.edges[bad].describe()}))

    degs = g.degrees()
    regular = len(set(degs.values())) <= 1
    witness = None
    if not regular:
        common = max(set(degs.values()), key=list(degs.values()).count)
        v = next(v for v in g.vertices if degs[v] != common)
        witness = {"vertex": v, "degree": degs[v], "expected": common}
    report.checks.append(AxiomCheck("regular", regular, witness))

    witness = None
    for v in g.vertices:
        labels = g.labels_at(v)
        for a in range(len(labels)):
            for b in range(a + 1, len(labels)):
                if labels[a].is_proportional(labels[b]):
                    witness = {"vertex": v, "labels": [str(labels[a]), str(labels[b])]}
                    break
            if witness:
                break
        if witness:
            break
    report.checks.append(AxiomCheck("axiom2_independence", witness is None, witness))

    witness = None
    for e in g.edges:
        if e.label.is_zero() or not _has_congruence_bijection(
                g.labels_at(e.src), g.labels_at(e.dst), e.label):
            witness = {"edge": e.describe()}
            break
    report.checks.append(AxiomCheck("axiom3_congruence", witness is None, witness))
    return report


def is_full_rank(g: GkmGraph) -> bool:
    """Every vertex star spans the sum-zero lattice (rank n_vars - 1)."""
    target = g.n_vars - 1
    for v in g.vertices:
        labels = g.labels_at(v)
        if any(not l.is_sum_zero() for l in labels):
            return False
        if span_rank([l.coeffs for l in labels]) != target:
            return False
    return True


def connected_components(g: GkmGraph) -> list:
    """Vertex sets of the underlying graph, each in vertex order, ordered by first vertex."""
    seen = set()
    comps = []
    adj = {v: [g.edges[k].dst for k in g.star(v)] for v in g.vertices}
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        seen.add(v)
        while queue:
            p = queue.popleft()
            for q in adj[p]:
                if q not in seen:
                    seen.add(q)
                    comp.add(q)
                    queue.append(q)
        comps.append([u for u in g.vertices if u in comp])
    return comps


def induced_subgraph(g: GkmGraph, vertices, edge_filter=None) -> GkmGraph:
    keep = set(vertices)
    edges = [e for e in g.edges
             if e.src in keep and e.dst in keep and (edge_filter is None or edge_filter(e))]
    return GkmGraph(g.n_vars, [v for v in g.vertices if v in keep], edges)


def fixed_subgraph(g: GkmGraph, span: Sequence[LinearForm], base: str) -> GkmGraph:
    """Component of ``base`` among edges whose labels lie in the span of ``span``."""
    if base not in g:
        raise KeyError("base vertex %r not in graph" % (base,))
    basis = [l.coeffs for l in span]
    r0 = span_rank(basis)
    cache = {}

    def in_span(l):
        if l not in cache:
            cache[l] = span_rank(basis + [l.coeffs]) == r0
        return cache[l]

    comp = {base}
    queue = deque([base])
    while queue:
        p = queue.popleft()
        for k in g.star(p):
            e = g.edges[k]
            if in_span(e.label) and e.dst not in comp:
                comp.add(e.dst)
                queue.append(e.dst)
    return induced_subgraph(g, comp, lambda e: in_span(e.label))


def is_k33(g: GkmGraph) -> bool:
    """Underlying simple graph is K_{3,3}: 6 vertices, 3-regular, bipartite."""
    u = g.underlying_graph()
    if u.number_of_nodes() != 6 or nx.number_of_selfloops(u):
        return False
    if any(d != 3 for _, d in u.degree()):
        return False
    return nx.is_bipartite(u)
