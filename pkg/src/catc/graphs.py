"""Finite directed multigraphs and category-valued diagrams.

Vertices and edges carry explicit string ids; parallel edges and self-loops
are allowed and edge identity is never inferred from endpoints.  Values are
immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownVertex


@dataclass(frozen=True)
class Edge:
    eid: str
    src: str
    tgt: str


class DirectedGraph:
    __slots__ = ("vertices", "edges", "_by_id")

    def __init__(self, vertices=(), edges=()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        self.edges = tuple(edges)
        self._by_id = {}
        vs = set(self.vertices)
        for e in self.edges:
            if e.eid in self._by_id:
                raise ValueError(f"duplicate edge id {e.eid!r}")
            if e.src not in vs or e.tgt not in vs:
                raise ValueError(f"edge {e.eid!r} has endpoint outside graph")
            self._by_id[e.eid] = e

    def edge(self, eid):
        return self._by_id[eid]

    def has_vertex(self, v):
        return v in set(self.vertices)

    def with_vertex(self, v):
        return DirectedGraph(self.vertices + (v,), self.edges)

    def with_edge(self, e):
        return DirectedGraph(self.vertices, self.edges + (e,))

    def __eq__(self, other):
        return (isinstance(other, DirectedGraph)
                and self.vertices == other.vertices
                and self.edges == other.edges)

    def __repr__(self):
        return f"DirectedGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


class Diagram:
    """A graph labeled with category objects on vertices, morphisms on edges."""

    __slots__ = ("graph", "obj_of", "mor_of")

    def __init__(self, graph, obj_of, mor_of):
        self.graph = graph
        self.obj_of = dict(obj_of)
        self.mor_of = dict(mor_of)
        if set(self.obj_of) != set(graph.vertices):
            raise ValueError("obj_of not total on vertices")
        if set(self.mor_of) != {e.eid for e in graph.edges}:
            raise ValueError("mor_of not total on edges")

    @classmethod
    def empty(cls):
        return cls(DirectedGraph(), {}, {})

    def obj(self, v):
        return self.obj_of[v]

    def mor(self, eid):
        return self.mor_of[eid]

    def vertices(self):
        return self.graph.vertices

    def edges(self):
        return self.graph.edges

    def validate(self, cat):
        """Check that dom/codom of every edge matches endpoint objects."""
        for e in self.graph.edges:
            m = self.mor_of[e.eid]
            if not cat.obj_equal(cat.dom(m), self.obj_of[e.src]):
                raise ValueError(f"edge {e.eid}: dom mismatch")
            if not cat.obj_equal(cat.cod(m), self.obj_of[e.tgt]):
                raise ValueError(f"edge {e.eid}: codom mismatch")

    def extended(self, new_vertices=(), new_edges=()):
        g = self.graph
        objs = dict(self.obj_of)
        mors = dict(self.mor_of)
        for v, obj in new_vertices:
            g = g.with_vertex(v)
            objs[v] = obj
        for e, m in new_edges:
            g = g.with_edge(e)
            mors[e.eid] = m
        return Diagram(g, objs, mors)

    def __repr__(self):
        return f"Diagram(|V|={len(self.graph.vertices)}, |E|={len(self.graph.edges)})"


def full_subdiagram(diagram, vs, edge_ids=None):
    """Restriction to the given vertices.

    With edge_ids=None this is the full subdiagram: every edge with both
    endpoints in vs.  An explicit edge subset gives a not-necessarily-full
    restriction (programmatic API only; the script DSL cannot express it).
    """
    vs = list(vs)
    known = set(diagram.graph.vertices)
    for v in vs:
        if v not in known:
            raise UnknownVertex(f"vertex {v!r} not in diagram")
    keep = set(vs)
    ordered = tuple(v for v in diagram.graph.vertices if v in keep)
    if edge_ids is None:
        edges = tuple(e for e in diagram.graph.edges
                      if e.src in keep and e.tgt in keep)
    else:
        wanted = set(edge_ids)
        edges = tuple(e for e in diagram.graph.edges if e.eid in wanted)
        for e in edges:
            if e.src not in keep or e.tgt not in keep:
                raise UnknownVertex(
                    f"edge {e.eid!r} leaves the restricted vertex set")
        if len(edges) != len(wanted):
            missing = wanted - {e.eid for e in edges}
            raise UnknownVertex(f"unknown edge ids {sorted(missing)}")
    return Diagram(
        DirectedGraph(ordered, edges),
        {v: diagram.obj_of[v] for v in ordered},
        {e.eid: diagram.mor_of[e.eid] for e in edges},
    )
