import pytest

from catc.categories.finset import FinSet, finset_mor, finset_obj
from catc.categories.vect import VectQ
from catc.constructions import (
    f223_target,
    kvect1,
    set_copies,
    set_morphism_example,
    subspace_generic,
    subspace_special,
    subspace_target_diagram,
)
from catc.embed import diagram_isomorphic, find_subdiagram_embedding, recheck_embedding
from catc.engine import replay
from catc.errors import CapabilityMissing, SearchBudgetExceeded
from catc.graphs import Diagram, DirectedGraph, Edge, full_subdiagram

FS = FinSet()
VQ = VectQ()


def _single_obj_diagram(obj, name="t"):
    return Diagram(DirectedGraph((name,), ()), {name: obj}, {})


def _f_diagram():
    a = finset_obj((0, 1, 2))
    f = finset_mor(a, a, {0: 0, 1: 0, 2: 1})
    g = DirectedGraph(("x", "y"), (Edge("e", "x", "y"),))
    return Diagram(g, {"x": a, "y": a}, {"e": f})


def test_identical_single_loops_isomorphic():
    one = finset_obj((1,))
    idm = finset_mor(one, one, {1: 1})
    g = DirectedGraph(("a",), (Edge("l", "a", "a"),))
    d1 = Diagram(g, {"a": one}, {"l": idm})
    d2 = Diagram(g, {"a": one}, {"l": idm})
    emb = diagram_isomorphic(d1, d2, FS)
    assert emb is not None


def test_cardinality_mismatch_gives_none():
    d1 = _single_obj_diagram(finset_obj((1, 2)))
    d2 = _single_obj_diagram(finset_obj((1, 2, 3)))
    assert diagram_isomorphic(d1, d2, FS) is None


def test_f_diagram_isomorphic_to_subdiagram_6_8():
    host = replay(set_morphism_example(), FS).diagram
    sub = full_subdiagram(host, ("6", "8"))
    emb = diagram_isomorphic(_f_diagram(), sub, FS)
    assert emb is not None
    assert emb.vertex_map == {"x": "6", "y": "8"}


def test_embedding_prefers_lowest_host_id():
    host = replay(set_copies(3), FS).diagram
    target = _single_obj_diagram(finset_obj((1,)))
    emb = find_subdiagram_embedding(target, host, FS)
    assert emb.vertex_map["t"] == "1"


def test_f_diagram_embeds_into_setmorphism_host():
    host = replay(set_morphism_example(), FS).diagram
    emb = find_subdiagram_embedding(_f_diagram(), host, FS)
    assert emb.vertex_map == {"x": "6", "y": "8"}
    recheck_embedding(emb, _f_diagram(), host, FS)


def test_f223_targets_kvect_host():
    host = replay(kvect1(), VQ).diagram
    texp = f223_target()
    tdiag = full_subdiagram(replay(texp, VQ).diagram, texp.target)
    emb = find_subdiagram_embedding(tdiag, host, VQ)
    assert emb is not None


def test_reflexive_and_symmetric_on_corpus():
    for d in (_f_diagram(),
              full_subdiagram(replay(set_morphism_example(), FS).diagram,
                              ("6", "8"))):
        assert diagram_isomorphic(d, d, FS) is not None
    d1 = _f_diagram()
    d2 = full_subdiagram(replay(set_morphism_example(), FS).diagram, ("6", "8"))
    assert diagram_isomorphic(d1, d2, FS) is not None
    assert diagram_isomorphic(d2, d1, FS) is not None


def test_subspace_targets_embed():
    for n, gen in ((2, subspace_generic), (2, subspace_special)):
        comp, meta = gen(n)
        host = replay(comp, VQ).diagram
        target = subspace_target_diagram(meta)
        emb = find_subdiagram_embedding(target, host, VQ)
        assert emb is not None
        recheck_embedding(emb, target, host, VQ)


def test_budget_and_vertex_bound():
    host = replay(set_copies(3), FS).diagram
    target = _single_obj_diagram(finset_obj((1,)))
    with pytest.raises(SearchBudgetExceeded):
        find_subdiagram_embedding(target, host, FS, budget=0)
    wide = Diagram(
        DirectedGraph(tuple(f"t{i}" for i in range(13)), ()),
        {f"t{i}": finset_obj((1,)) for i in range(13)}, {})
    with pytest.raises(SearchBudgetExceeded):
        find_subdiagram_embedding(wide, host, FS)


def test_capability_missing_without_iso_test():
    from catc.categories.affine import AffVar

    target = _single_obj_diagram(finset_obj((1,)))
    with pytest.raises(CapabilityMissing):
        find_subdiagram_embedding(target, target, AffVar())
