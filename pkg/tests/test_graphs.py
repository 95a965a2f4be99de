import pytest
from hypothesis import given, settings, strategies as st

from catc.categories.finset import FinSet, finset_mor, finset_obj
from catc.errors import UnknownVertex
from catc.graphs import Diagram, DirectedGraph, Edge, full_subdiagram


def _path_diagram():
    one = finset_obj((1,))
    idm = finset_mor(one, one, {1: 1})
    g = DirectedGraph(("a", "b", "c"),
                      (Edge("e1", "a", "b"), Edge("e2", "b", "c")))
    return Diagram(g, {"a": one, "b": one, "c": one}, {"e1": idm, "e2": idm})


def test_full_subdiagram_of_path():
    d = _path_diagram()
    sub = full_subdiagram(d, ("a", "b"))
    assert sub.graph.vertices == ("a", "b")
    assert [e.eid for e in sub.graph.edges] == ["e1"]


def test_self_loop_retained():
    one = finset_obj((1,))
    idm = finset_mor(one, one, {1: 1})
    g = DirectedGraph(("a",), (Edge("loop", "a", "a"),))
    d = Diagram(g, {"a": one}, {"loop": idm})
    sub = full_subdiagram(d, ("a",))
    assert [e.eid for e in sub.graph.edges] == ["loop"]


def test_unknown_vertex():
    with pytest.raises(UnknownVertex):
        full_subdiagram(_path_diagram(), ("a", "zz"))


def test_identity_on_full_vertex_set():
    d = _path_diagram()
    sub = full_subdiagram(d, d.graph.vertices)
    assert sub.graph == d.graph
    assert sub.obj_of == d.obj_of
    assert sub.mor_of == d.mor_of


def test_explicit_edge_subset():
    d = _path_diagram()
    sub = full_subdiagram(d, ("a", "b"), edge_ids=())
    assert sub.graph.edges == ()
    with pytest.raises(UnknownVertex):
        full_subdiagram(d, ("a", "b"), edge_ids=("e2",))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_nested_restriction_idempotent(data):
    d = _path_diagram()
    vs = list(d.graph.vertices)
    outer = data.draw(st.sets(st.sampled_from(vs)))
    inner = data.draw(st.sets(st.sampled_from(sorted(outer)))) if outer else set()
    once = full_subdiagram(d, sorted(inner))
    twice = full_subdiagram(full_subdiagram(d, sorted(outer)), sorted(inner))
    assert once.graph == twice.graph


def test_validate_checks_endpoints():
    one = finset_obj((1,))
    two = finset_obj((1, 2))
    f = finset_mor(one, two, {1: 1})
    g = DirectedGraph(("a", "b"), (Edge("e", "a", "b"),))
    d = Diagram(g, {"a": one, "b": two}, {"e": f})
    d.validate(FinSet())
    bad = Diagram(g, {"a": two, "b": two}, {"e": f})
    with pytest.raises(ValueError):
        bad.validate(FinSet())
