import pytest

from gkmhess.gkm_graph import (
    GkmGraph,
    connected_components,
    fixed_subgraph,
    is_full_rank,
    is_k33,
    validate,
)
from gkmhess.exact_core import LinearForm
from gkmhess.hessenberg import (
    HessenbergFunction,
    InvalidHessenbergFunction,
    SizeGuardError,
    all_hessenberg_functions,
    build_gkm_graph,
    complex_dimension,
    connected_hessenberg_functions,
    is_connected,
    star_condition,
    star_condition_transposed,
)

H = lambda *v: HessenbergFunction(v)


def catalan(m):
    from math import comb
    return comb(2 * m, m) // (m + 1)


@pytest.mark.parametrize("bad", [(1, 1, 3), (2, 1, 3), (4, 4, 4), (0, 2, 3), (2, 3, 2)])
def test_rejects_invalid(bad):
    with pytest.raises(InvalidHessenbergFunction):
        HessenbergFunction(bad)


def test_parse():
    assert HessenbergFunction.parse("2, 3,3") == H(2, 3, 3)
    with pytest.raises(InvalidHessenbergFunction):
        HessenbergFunction.parse("2,x,3")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_counts_are_catalan(n):
    assert len(all_hessenberg_functions(n)) == catalan(n)
    assert len(connected_hessenberg_functions(n)) == catalan(n - 1)


def test_star_condition_examples():
    assert star_condition(H(2, 3, 3))
    assert star_condition(H(1, 2, 3))
    assert not star_condition(H(2, 2, 3, 4))
    assert not star_condition(H(3, 3, 4, 4))
    assert star_condition(H(2, 3, 4, 4))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_star_condition_two_routes_agree(n):
    for h in all_hessenberg_functions(n):
        assert star_condition(h) == star_condition_transposed(h)


def test_boxes_and_dimension():
    h = H(2, 3, 4, 4)
    assert [tuple(b) for b in h.boxes()] == [(2, 1), (3, 2), (4, 3)]
    assert complex_dimension(h) == 3
    assert complex_dimension(H(4, 4, 4, 4)) == 6
    assert is_connected(h) and not is_connected(H(1, 3, 3))


def test_graph_shape():
    g = build_gkm_graph(H(2, 3, 3))
    assert len(g) == 6
    assert g.valence == 2
    assert len(g.unordered_edges()) == 6
    # edge (w, w(i,j)) carries t_{w(i)} - t_{w(j)}
    e = next(g.edges[k] for k in g.star("231") if g.edges[k].dst == "321")
    assert str(e.label) == "-t2 + t3"


def test_size_guard():
    with pytest.raises(SizeGuardError):
        build_gkm_graph(H(*[7] * 7))


def test_disconnected_h_gives_components():
    g = build_gkm_graph(H(1, 3, 3))
    assert len(connected_components(g)) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_hessenberg_graph_is_gkm_and_full_rank(n):
    for h in all_hessenberg_functions(n):
        g = build_gkm_graph(h)
        assert validate(g).ok
        assert is_full_rank(g) == is_connected(h)


def test_k33_examples():
    assert is_k33(build_gkm_graph(H(3, 3, 3)))
    assert not is_k33(build_gkm_graph(H(2, 3, 3)))


def test_fixed_subgraph_examples():
    g = build_gkm_graph(H(3, 3, 3))
    full = fixed_subgraph(g, [LinearForm.root(3, 1, 2), LinearForm.root(3, 2, 3)], "123")
    assert len(full) == 6 and len(full.edges) == len(g.edges)

    g = build_gkm_graph(H(2, 3, 3))
    sub = fixed_subgraph(g, [LinearForm.root(3, 1, 2)], "123")
    assert sorted(sub.vertices) == ["123", "213"]
    assert len(sub.unordered_edges()) == 1
    with pytest.raises(KeyError):
        fixed_subgraph(g, [], "999")


def test_fixed_subgraph_rank_two_torus():
    g = build_gkm_graph(H(3, 3, 4, 4))
    sub = fixed_subgraph(g, [LinearForm.root(4, 1, 2), LinearForm.root(4, 2, 3)], "1234")
    assert len(sub) == 6 and is_k33(sub) and validate(sub).ok
    # the span {t2-t3, t3-t4} meets only the boxes (3,2),(4,3) here: a hexagon
    sub = fixed_subgraph(g, [LinearForm.root(4, 2, 3), LinearForm.root(4, 3, 4)], "1234")
    assert len(sub) == 6 and sub.valence == 2 and not is_k33(sub)


def test_json_and_dot_round_trip():
    g = build_gkm_graph(H(2, 3, 4, 4))
    back = GkmGraph.from_json(g.to_json())
    assert back.vertices == g.vertices
    assert set(back.edges) == set(g.edges)
    assert back.to_json() == g.to_json()
    dot = build_gkm_graph(H(2, 3, 3)).to_dot()
    assert dot.startswith("graph G {")
    assert '"123" -- "213" [label="-t1 + t2"];' in dot

