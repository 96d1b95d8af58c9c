"""Acceptance checks, shared by the ``verify all`` command and the test suite.

Each check recomputes its answer through an independent route where one
exists (inversion counting for Betti numbers, the explicit generators for
the automorphism group, direct matrix products for the cofactor formula).
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from math import factorial

from .automorphisms import (
    act_on_map,
    aut_star,
    dot_action,
    enumerate_aut,
    generated_group,
    phi_sigma,
    phi_zero,
)
from .cohomology import (
    betti_numbers,
    constant_class,
    equivariant_basis,
    equivariant_dimension,
    hilbert_rhs,
    ordinary_rank,
    to_sum_zero,
    x_classes,
)
from .exact_core import LinearForm, Polynomial, mat_inverse
from .gkm_graph import GkmGraph, OrientedEdge, fixed_subgraph, is_k33, validate
from .hessenberg import (
    HessenbergFunction,
    all_hessenberg_functions,
    all_permutations,
    build_gkm_graph,
    complex_dimension,
    connected_hessenberg_functions,
    full_staircase,
    inverse,
    perm_id,
    star_condition,
)
from .unipotent import conjugate_elementary, cofactor_entry, find_witness, random_sl_matrix

log = logging.getLogger(__name__)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self):
        """One deterministic status line (timing is logged separately)."""
        status = "PASS" if self.passed else "FAIL"
        first = "; ".join(self.details[:3])
        return "criterion %d %-28s %s%s" % (
            self.number, self.name, status, "  " + first if first else "")


class _Run:
    def __init__(self, number, name):
        self.result = CriterionResult(number, name, True)
        self._t = time.perf_counter()

    def fail(self, msg):
        self.result.passed = False
        self.result.details.append(msg)

    def expect(self, cond, msg):
        if not cond:
            self.fail(msg)

    def done(self):
        self.result.seconds = time.perf_counter() - self._t
        log.info("%s (%.1fs)", self.result.line(), self.result.seconds)
        return self.result


def _graph(h):
    return build_gkm_graph(h)


def inversion_betti(h: HessenbergFunction) -> list:
    """Count w in S_n by the number of staircase boxes (i, j) with w(j) > w(i)."""
    boxes = h.boxes()
    counts = [0] * (len(boxes) + 1)
    for w in all_permutations(h.n):
        counts[sum(1 for i, j in boxes if w[j - 1] > w[i - 1])] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


# ---------------------------------------------------------------------------


def check_automorphism_classification(ns=(3, 4)) -> CriterionResult:
    run = _Run(1, "automorphism classification")
    for n in ns:
        for h in connected_hessenberg_functions(n):
            g = _graph(h)
            auts = enumerate_aut(g)
            expected = 2 * factorial(n) if star_condition(h) else factorial(n)
            run.expect(len(auts) == expected,
                       "h=(%s): %d automorphisms, expected %d" % (h, len(auts), expected))
            run.expect(set(auts) == set(generated_group(g)),
                       "h=(%s): enumerated set differs from the generated group" % h)
            run.expect(all(a.is_automorphism() for a in auts),
                       "h=(%s): an enumerated map breaks an edge" % h)
    return run.done()


def check_aut_star(ns=(3, 4)) -> CriterionResult:
    run = _Run(2, "Aut* classification")
    for n in ns:
        for h in connected_hessenberg_functions(n):
            g = _graph(h)
            star = set(aut_star(g, complex_dimension(h)))
            if h.is_full():
                expected = {phi_sigma(g, s) for s in all_permutations(n)}
            else:
                expected = {phi_sigma(g, tuple(range(1, n + 1)))}
            run.expect(star == expected,
                       "h=(%s): Aut* has %d elements, expected %d" % (h, len(star), len(expected)))
    return run.done()


def check_betti(ns=(2, 3, 4)) -> CriterionResult:
    run = _Run(3, "Betti numbers vs oracle")
    pinned = {(2, 3, 3): [1, 4, 1], (3, 3, 3): [1, 2, 2, 1]}
    for n in ns:
        for h in connected_hessenberg_functions(n):
            b = betti_numbers(_graph(h))
            oracle = inversion_betti(h)
            d = complex_dimension(h)
            run.expect(b == oracle, "h=(%s): %s != oracle %s" % (h, b, oracle))
            run.expect(len(b) == d + 1 and b[0] == 1 and b[-1] == 1,
                       "h=(%s): b_0/b_top wrong in %s" % (h, b))
            run.expect(b == b[::-1], "h=(%s): %s not palindromic" % (h, b))
            run.expect(sum(b) == factorial(n), "h=(%s): sum %d != n!" % (h, sum(b)))
            if h.values in pinned:
                run.expect(b == pinned[h.values], "h=(%s): pinned value %s" % (h, pinned[h.values]))
    return run.done()


def check_hilbert(ns=(2, 3, 4)) -> CriterionResult:
    run = _Run(4, "equivariant Hilbert identity")
    for n in ns:
        for h in connected_hessenberg_functions(n):
            g = _graph(h)
            b = inversion_betti(h)
            for k in range(complex_dimension(h) + 3):
                lhs = equivariant_dimension(g, "T", 2 * k)
                rhs = hilbert_rhs(b, n, k)
                run.expect(lhs == rhs, "h=(%s) k=%d: %d != %d" % (h, k, lhs, rhs))
    return run.done()


def check_x_classes(equivariant_ns=(2, 3, 4, 5), rank_ns=(2, 3, 4)) -> CriterionResult:
    run = _Run(5, "x-class identities")
    for n in equivariant_ns:
        for h in connected_hessenberg_functions(n):
            g = _graph(h)
            xs = x_classes(g)
            run.expect(all(x.is_valid() for x in xs), "h=(%s): x class breaks a congruence" % h)
            total = xs[0]
            for x in xs[1:]:
                total = total + x
            e1 = Polynomial.from_linear([1] * n)
            run.expect(total == constant_class(g, e1, "T_hat"),
                       "h=(%s): sum of x classes is not constant" % h)
            for s in all_permutations(n):
                a = phi_sigma(g, s)
                if any(act_on_map(a, x) != x for x in xs):
                    run.fail("h=(%s): phi_%s moves an x class" % (h, perm_id(s)))
                    break
            if star_condition(h):
                z = phi_zero(g)
                for i, x in enumerate(xs, 1):
                    run.expect(act_on_map(z, x) == -xs[n - i],
                               "h=(%s): phi_0 x_%d != -x_%d" % (h, i, n + 1 - i))
            if n in rank_ns:
                r = ordinary_rank(xs)
                r_sum_zero = ordinary_rank([to_sum_zero(x) for x in xs])
                run.expect(r == n - 1 and r_sum_zero == n - 1,
                           "h=(%s): rank of x classes %d/%d, expected %d"
                           % (h, r, r_sum_zero, n - 1))
    return run.done()


def check_dot_action(ns=(2, 3, 4), max_degree=4) -> CriterionResult:
    run = _Run(6, "dot action identity")
    for n in ns:
        for h in connected_hessenberg_functions(n):
            g = _graph(h)
            phis = {s: phi_sigma(g, inverse(s)) for s in all_permutations(n)}
            for deg in range(0, max_degree + 1, 2):
                for xi in equivariant_basis(g, "T", deg):
                    for s, a in phis.items():
                        if dot_action(s, xi) != act_on_map(a, xi):
                            run.fail("h=(%s) degree %d tau=%s" % (h, deg, perm_id(s)))
                            break
    return run.done()


def check_non_invariance(witness_ns=(2, 3, 4, 5), none_ns=(2, 3, 4), cofactor_ns=(3, 4, 5),
                         samples=1000, seed=20240601) -> CriterionResult:
    run = _Run(7, "unipotent non-invariance")
    for n in witness_ns:
        pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        for h in all_hessenberg_functions(n):
            if h.is_full():
                if n in none_ns:
                    found = [p for p in pairs if find_witness(h, *p) is not None]
                    run.expect(not found, "full staircase n=%d has witnesses %s" % (n, found[:3]))
                continue
            for i, j in pairs:
                run.expect(find_witness(h, i, j) is not None,
                           "h=(%s) (i,j)=(%d,%d): no witness" % (h, i, j))
    rng = random.Random(seed)
    for n in cofactor_ns:
        for _ in range(samples):
            g = random_sl_matrix(n, rng)
            g_inv = mat_inverse(g)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i == j:
                        continue
                    direct = conjugate_elementary(g, i, j, g_inv)[n - 1][0]
                    if cofactor_entry(g, i, j) != direct:
                        run.fail("cofactor mismatch n=%d (i,j)=(%d,%d) g=%s" % (n, i, j, g))
    return run.done()


def check_k33(ns=(3, 4)) -> CriterionResult:
    run = _Run(8, "K33 subgraphs")
    for n in ns:
        base = perm_id(range(1, n + 1))
        for h in connected_hessenberg_functions(n):
            g = _graph(h)
            for i, j in h.boxes():
                if i < j + 2:
                    continue
                span = [LinearForm.root(n, i - 1, i), LinearForm.root(n, i, j)]
                sub = fixed_subgraph(g, span, base)
                run.expect(len(sub) == 6 and is_k33(sub),
                           "h=(%s) box (%d,%d): %d vertices, not K33" % (h, i, j, len(sub)))
                run.expect(validate(sub).ok, "h=(%s) box (%d,%d): subgraph fails axioms" % (h, i, j))
    run.expect(is_k33(_graph(HessenbergFunction((3, 3, 3)))), "h=(3,3,3) is not K33")
    return run.done()


def injected_violations(n=3):
    """Three broken graphs, each with the check that must catch it and the expected witness."""
    g = _graph(full_staircase(n))
    edges = list(g.edges)
    cases = []

    dropped = edges[0]
    cases.append(("axiom1_reversal",
                  GkmGraph(n, g.vertices, [e for e in edges if e != dropped]),
                  {"src": dropped.dst, "dst": dropped.src}))

    # relabel one edge pair so two labels at a vertex become proportional
    e0 = edges[0]
    star = g.star(e0.src)
    other = g.edges[next(k for k in star if g.edges[k] != e0)]
    bad = []
    for e in edges:
        if e == e0:
            bad.append(OrientedEdge(e.src, e.dst, other.label))
        elif e.src == e0.dst and e.dst == e0.src:
            bad.append(OrientedEdge(e.src, e.dst, -other.label))
        else:
            bad.append(e)
    cases.append(("axiom2_independence", GkmGraph(n, g.vertices, bad), {"vertex": e0.src}))

    # scale one pair of labels by 2: still independent but not congruent
    bad = []
    for e in edges:
        if (e.src, e.dst) in ((e0.src, e0.dst), (e0.dst, e0.src)):
            bad.append(OrientedEdge(e.src, e.dst, e.label.scale(2)))
        else:
            bad.append(e)
    cases.append(("axiom3_congruence", GkmGraph(n, g.vertices, bad), None))
    return cases


def check_axioms(ns=(1, 2, 3, 4, 5)) -> CriterionResult:
    run = _Run(9, "axiom suite")
    for n in ns:
        for h in all_hessenberg_functions(n):
            rep = validate(_graph(h))
            run.expect(rep.ok, "h=(%s): %s" % (h, [c.name for c in rep.checks if not c.passed]))
    for name, g, expect in injected_violations():
        rep = validate(g)
        chk = rep[name]
        run.expect(not chk.passed and chk.witness is not None, "%s not detected" % name)
        if expect and chk.witness is not None:
            w = chk.witness.get("edge", chk.witness)
            for key, val in expect.items():
                run.expect(w.get(key) == val, "%s witness %s, expected %s" % (name, w, expect))
    return run.done()


CHECKS = [
    check_automorphism_classification,
    check_aut_star,
    check_betti,
    check_hilbert,
    check_x_classes,
    check_dot_action,
    check_non_invariance,
    check_k33,
    check_axioms,
]


def run_all(n: int | None = None) -> list:
    """Run every criterion; ``n`` caps the sizes swept (default: the full ranges)."""
    if n is None:
        return [c() for c in CHECKS]
    cap = lambda ns: tuple(m for m in ns if m <= n)
    return [
        check_automorphism_classification(cap((3, 4))),
        check_aut_star(cap((3, 4))),
        check_betti(cap((2, 3, 4))),
        check_hilbert(cap((2, 3, 4))),
        check_x_classes(cap((2, 3, 4, 5)), cap((2, 3, 4))),
        check_dot_action(cap((2, 3, 4))),
        check_non_invariance(cap((2, 3, 4, 5)), cap((2, 3, 4)), cap((3, 4, 5))),
        check_k33(cap((3, 4))),
        check_axioms(cap((1, 2, 3, 4, 5))),
    ]
