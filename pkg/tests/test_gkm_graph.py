import json

import pytest

from gkmhess.exact_core import LinearForm
from gkmhess.gkm_graph import GkmGraph, OrientedEdge, is_full_rank, validate
from gkmhess.hessenberg import HessenbergFunction, build_gkm_graph
from gkmhess.verify import injected_violations


def two_cycle():
    return GkmGraph.from_unordered(3, ["a", "b"], [("a", "b", LinearForm.root(3, 1, 2))])


def test_two_cycle_is_gkm_but_not_full_rank():
    g = two_cycle()
    assert validate(g).ok
    assert not is_full_rank(g)


def test_unknown_vertex_rejected():
    with pytest.raises(ValueError):
        GkmGraph(2, ["a"], [OrientedEdge("a", "z", LinearForm.root(2, 1, 2))])


def test_wrong_label_arity_rejected():
    with pytest.raises(ValueError):
        GkmGraph(3, ["a", "b"], [("a", "b", (1, -1))])


def test_reverse_pairing():
    g = two_cycle()
    assert g.reverse(0) == 1 and g.reverse(1) == 0
    lone = GkmGraph(3, ["a", "b"], [OrientedEdge("a", "b", LinearForm.root(3, 1, 2))])
    assert lone.reverse(0) is None
    assert lone.unordered_edges() == []


@pytest.mark.parametrize("case", injected_violations(), ids=lambda c: c[0])
def test_injected_violation_is_reported(case):
    name, g, expect = case
    report = validate(g)
    assert not report.ok
    chk = report[name]
    assert not chk.passed
    assert chk.witness is not None
    if expect:
        w = chk.witness.get("edge", chk.witness)
        for k, v in expect.items():
            assert w[k] == v


def test_irregular_graph_reported():
    g = GkmGraph.from_unordered(3, ["a", "b", "c"], [
        ("a", "b", LinearForm.root(3, 1, 2)),
        ("a", "c", LinearForm.root(3, 1, 3)),
    ])
    report = validate(g)
    assert not report["regular"].passed
    assert report["regular"].witness["vertex"] == "a"


def test_congruence_needs_bijection_not_just_existence():
    # at both ends of the a-b edge labels match one-to-one; then break one end
    good = build_gkm_graph(HessenbergFunction((3, 3, 3)))
    assert validate(good)["axiom3_congruence"].passed
    broken = [OrientedEdge(e.src, e.dst, e.label.scale(3) if {e.src, e.dst} == {"123", "132"} else e.label)
              for e in good.edges]
    report = validate(GkmGraph(3, good.vertices, broken))
    assert not report["axiom3_congruence"].passed


def test_report_serializes():
    report = validate(two_cycle())
    data = json.loads(json.dumps(report.to_json_dict()))
    assert data["ok"] is True
    assert [c["name"] for c in data["checks"]] == [
        "axiom1_reversal", "regular", "axiom2_independence", "axiom3_congruence"]


def test_rational_labels_survive_json():
    g = GkmGraph.from_unordered(2, ["a", "b"], [("a", "b", ("1/2", "-1/2"))])
    back = GkmGraph.from_json(g.to_json())
    assert back.edges == g.edges
    with pytest.raises(ValueError):
        GkmGraph.from_json('{"vertices": []}')
