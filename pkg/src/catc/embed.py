"""Diagram isomorphism and subdiagram-embedding search.

Backtracking over vertex assignments with deterministic lowest-id-first
candidate ordering; object comparison is delegated to the category (object
handles are never compared structurally here).  Every embedding found is
independently rechecked: each square is re-verified through the category's
compose and equality, and each witness must be a verified isomorphism.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .engine import vertex_key
from .errors import CapabilityMissing, EmbeddingCheckFailed, SearchBudgetExceeded

DEFAULT_VERTEX_BOUND = 12
DEFAULT_BUDGET = 200_000


def search_budget():
    env = os.environ.get("CATC_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class DiagramEmbedding:
    vertex_map: dict  # target vertex -> host vertex (injective)
    edge_map: dict  # target edge -> host edge (injective)
    obj_witness: dict  # target vertex -> iso (target object -> host object)


def find_subdiagram_embedding(target, host, cat, budget=None, vertex_bound=None):
    """First embedding of target into a (not necessarily full) subdiagram of host.

    Deterministic: target vertices are processed in natural id order and host
    candidates tried lowest id first.  Returns None when no embedding exists;
    raises SearchBudgetExceeded when the candidate count exceeds the budget.
    """
    if not cat.supports_iso:
        raise CapabilityMissing(f"{cat.name} has no isomorphism test")
    bound = vertex_bound if vertex_bound is not None else DEFAULT_VERTEX_BOUND
    if len(target.graph.vertices) > bound:
        raise SearchBudgetExceeded(
            f"target has {len(target.graph.vertices)} vertices; bound is {bound}")
    budget = budget if budget is not None else search_budget()

    tvs = sorted(target.graph.vertices, key=vertex_key)
    tindex = {v: i for i, v in enumerate(tvs)}
    hvs = sorted(host.graph.vertices, key=vertex_key)

    host_edges = {}
    for e in host.graph.edges:
        host_edges.setdefault((e.src, e.tgt), []).append(e)
    for k in host_edges:
        host_edges[k].sort(key=lambda e: e.eid)

    # target edges grouped by the later-assigned endpoint
    tedges_at = [[] for _ in tvs]
    for e in target.graph.edges:
        tedges_at[max(tindex[e.src], tindex[e.tgt])].append(e)

    candidates = [
        [h for h in hvs if cat.is_isomorphic(target.obj_of[v], host.obj_of[h])]
        for v in tvs
    ]

    assignment = [None] * len(tvs)
    used = set()
    attempts = [0]

    def edge_choices(idx):
        """Host-edge alternatives for each target edge closed at depth idx."""
        choice_sets = []
        for e in tedges_at[idx]:
            hs = assignment[tindex[e.src]]
            ht = assignment[tindex[e.tgt]]
            pool = host_edges.get((hs, ht), [])
            if not pool:
                return None
            choice_sets.append((e, pool))
        return choice_sets

    def rec(idx, edge_map):
        if idx == len(tvs):
            return finish(edge_map)
        for h in candidates[idx]:
            if h in used:
                continue
            attempts[0] += 1
            if attempts[0] > budget:
                raise SearchBudgetExceeded("embedding search budget exhausted")
            assignment[idx] = h
            used.add(h)
            choice_sets = edge_choices(idx)
            if choice_sets is not None:
                result = edge_backtrack(idx, edge_map, choice_sets, 0)
                if result is not None:
                    return result
            used.discard(h)
            assignment[idx] = None
        return None

    def edge_backtrack(idx, edge_map, choice_sets, k):
        if k == len(choice_sets):
            return rec(idx + 1, edge_map)
        e, pool = choice_sets[k]
        taken = set(edge_map.values())
        for he in pool:
            if he.eid in taken:
                continue
            edge_map[e.eid] = he.eid
            result = edge_backtrack(idx, edge_map, choice_sets, k + 1)
            if result is not None:
                return result
            del edge_map[e.eid]
        return None

    def finish(edge_map):
        pairs = [(target.obj_of[v], host.obj_of[assignment[i]])
                 for i, v in enumerate(tvs)]
        squares = []
        for e in target.graph.edges:
            he = host.mor_of[edge_map[e.eid]]
            squares.append((tindex[e.src], tindex[e.tgt],
                            target.mor_of[e.eid], he))
        witnesses = cat.solve_witnesses(pairs, squares)
        if witnesses is None:
            return None
        emb = DiagramEmbedding(
            vertex_map={v: assignment[i] for i, v in enumerate(tvs)},
            edge_map=dict(edge_map),
            obj_witness={v: w for v, w in zip(tvs, witnesses)},
        )
        recheck_embedding(emb, target, host, cat)
        return emb

    return rec(0, {})


def recheck_embedding(emb, target, host, cat):
    """Independent verification of an embedding: isos plus commuting squares."""
    for v, w in emb.obj_witness.items():
        if not cat.verify_iso(w, target.obj_of[v], host.obj_of[emb.vertex_map[v]]):
            raise EmbeddingCheckFailed(f"witness at {v!r} is not an isomorphism")
    if len(set(emb.vertex_map.values())) != len(emb.vertex_map):
        raise EmbeddingCheckFailed("vertex map is not injective")
    if len(set(emb.edge_map.values())) != len(emb.edge_map):
        raise EmbeddingCheckFailed("edge map is not injective")
    for e in target.graph.edges:
        he = host.graph.edge(emb.edge_map[e.eid])
        if he.src != emb.vertex_map[e.src] or he.tgt != emb.vertex_map[e.tgt]:
            raise EmbeddingCheckFailed(f"edge {e.eid!r} maps incoherently")
        # w_tgt . f  ==  f_host . w_src
        lhs = cat.compose(emb.obj_witness[e.tgt], target.mor_of[e.eid])
        rhs = cat.compose(host.mor_of[emb.edge_map[e.eid]],
                          emb.obj_witness[e.src])
        if not cat.mor_equal(lhs, rhs):
            raise EmbeddingCheckFailed(f"square at edge {e.eid!r} does not commute")


def diagram_isomorphic(d1, d2, cat, budget=None):
    """Bijective embedding with invertible witnesses, or None."""
    if not cat.supports_iso:
        raise CapabilityMissing(f"{cat.name} has no isomorphism test")
    if len(d1.graph.vertices) != len(d2.graph.vertices):
        return None
    if len(d1.graph.edges) != len(d2.graph.edges):
        return None
    return find_subdiagram_embedding(
        d1, d2, cat, budget=budget, vertex_bound=len(d1.graph.vertices))
