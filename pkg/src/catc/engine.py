"""Step-by-step replay of limit/colimit/mixed computations.

A computation is an ordered list of steps: attach a basic morphism, or add
the (co)limit apex of a subdiagram together with its cone/cocone edges.
Apexes are obtained by the equalizer-of-products (coequalizer-of-coproducts)
reduction, constructivity is checked structurally, and cost counts the
(co)limit steps plus the cost of the basic morphisms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    CapabilityMissing,
    EmptySubdiagram,
    NotConstructive,
    ObjectMismatch,
    StaleBasicAttachment,
    UnknownVertex,
)
from .graphs import Diagram, Edge, full_subdiagram

LIMIT, COLIMIT, MIXED = "limit", "colimit", "mixed"


def vertex_key(v):
    """Natural ordering for vertex ids: numeric suffixes sort by value.

    A trailing prime sorts a fresh-target id just after its step's
    numeral, matching the paper's listing order (1, 2, ..., 6', 7', ...),
    and generated ids like v2, v10 order by their counter.
    """
    primed = v.endswith("'")
    base = v[:-1] if primed else v
    m = re.fullmatch(r"([A-Za-z_]*)(\d+)", base)
    if m:
        return (0, m.group(1), int(m.group(2)), primed, v)
    return (1, base, 0, primed, v)


# -- vertex specs and steps ---------------------------------------------------


@dataclass(frozen=True)
class Fresh:
    pass


@dataclass(frozen=True)
class SameAsSource:
    """Target coincides with the freshly created source (self-loop)."""


@dataclass(frozen=True)
class Existing:
    vertex: str


@dataclass(frozen=True)
class BasicStep:
    sid: str
    src: object
    mor: object  # MorphName
    tgt: object


@dataclass(frozen=True)
class LimStep:
    sid: str
    over: tuple
    edges: tuple = None  # explicit edge subset (programmatic API only)


@dataclass(frozen=True)
class ColimStep:
    sid: str
    over: tuple
    edges: tuple = None


@dataclass(frozen=True)
class Computation:
    kind: str
    steps: tuple
    cost_fn: object = None  # map str(MorphName) -> nonnegative int; default 1
    target: tuple = None  # optional designated subdiagram (script `!target`)

    def __post_init__(self):
        if self.kind not in (LIMIT, COLIMIT, MIXED):
            raise ValueError(f"bad computation kind {self.kind!r}")
        seen = set()
        for s in self.steps:
            if s.sid in seen:
                raise ValueError(f"duplicate step id {s.sid!r}")
            seen.add(s.sid)
            if self.kind == LIMIT and isinstance(s, ColimStep):
                raise ValueError("colim step in a limit computation")
            if self.kind == COLIMIT and isinstance(s, LimStep):
                raise ValueError("lim step in a colimit computation")


def fresh_target_name(sid):
    return sid + "'"


# -- replay state -------------------------------------------------------------


@dataclass
class ReplayState:
    diagram: Diagram
    apex_origin: dict = field(default_factory=dict)  # apex -> (kind, vset, eset)
    basic_vertices: set = field(default_factory=set)
    step_index: int = 0


@dataclass(frozen=True)
class TraceEntry:
    index: int
    kind: str
    new_vertex: str
    object_summary: str
    running_cost: int
    vertex_count: int
    edge_count: int


@dataclass
class ReplayResult:
    diagram: Diagram
    state: ReplayState
    trace: list


def apply_step(state, step, cat, cost_fn=None):
    """Returns a new ReplayState; the input state is not modified."""
    d = state.diagram
    if isinstance(step, BasicStep):
        mor = cat.resolve_basic(step.mor)
        dom, cod = cat.dom(mor), cat.cod(mor)
        new_vertices = []
        apexes = set(state.apex_origin)

        def resolve(spec, want_obj, fresh_name):
            if isinstance(spec, Existing):
                if spec.vertex not in set(d.graph.vertices):
                    raise UnknownVertex(f"vertex {spec.vertex!r} does not exist")
                if spec.vertex in apexes:
                    raise StaleBasicAttachment(
                        f"basic step {step.sid!r} attaches to apex {spec.vertex!r}")
                if not cat.obj_equal(d.obj_of[spec.vertex], want_obj):
                    raise ObjectMismatch(
                        f"vertex {spec.vertex!r} does not carry the expected object")
                return spec.vertex
            new_vertices.append((fresh_name, want_obj))
            return fresh_name

        src_v = resolve(step.src, dom, step.sid)
        if isinstance(step.tgt, SameAsSource):
            if not isinstance(step.src, Fresh):
                raise ObjectMismatch(
                    f"step {step.sid!r}: self-loop target requires a fresh source")
            if not cat.obj_equal(dom, cod):
                raise ObjectMismatch(
                    f"step {step.sid!r}: self-loop on a non-endomorphism")
            tgt_v = src_v
        else:
            tgt_v = resolve(step.tgt, cod, fresh_target_name(step.sid))
        d2 = d.extended(new_vertices, [(Edge(step.sid, src_v, tgt_v), mor)])
        ns = ReplayState(d2, dict(state.apex_origin),
                         set(state.basic_vertices), state.step_index + 1)
        ns.basic_vertices.update(name for name, _ in new_vertices)
        return ns, new_vertices[-1][0] if new_vertices else src_v

    # Lim / Colim
    if not step.over:
        raise EmptySubdiagram(f"step {step.sid!r} takes a (co)limit of nothing")
    sub = full_subdiagram(d, step.over, step.edges)
    is_limit = isinstance(step, LimStep)
    if is_limit:
        apex, legs = limit_via_equalizer(sub, cat)
    else:
        apex, legs = colimit_via_coequalizer(sub, cat)
    if cat.supports_cone_check and not cat.verify_cone(apex, legs, sub, is_limit):
        raise ObjectMismatch(f"step {step.sid!r}: apex legs fail to commute")
    new_edges = []
    for v in sub.graph.vertices:
        if is_limit:
            new_edges.append((Edge(f"{step.sid}->{v}", step.sid, v), legs[v]))
        else:
            new_edges.append((Edge(f"{v}->{step.sid}", v, step.sid), legs[v]))
    d2 = d.extended([(step.sid, apex)], new_edges)
    ns = ReplayState(d2, dict(state.apex_origin),
                     set(state.basic_vertices), state.step_index + 1)
    eset = frozenset(e.eid for e in sub.graph.edges)
    ns.apex_origin[step.sid] = ("lim" if is_limit else "colim",
                                frozenset(step.over), eset)
    return ns, step.sid


def replay(computation, cat):
    state = ReplayState(Diagram.empty())
    trace = []
    running = 0
    fn = computation.cost_fn
    for i, step in enumerate(computation.steps):
        try:
            state, new_v = apply_step(state, step, cat)
        except Exception as exc:
            exc.args = (f"step {i} ({step.sid!r}): {exc}",)
            raise
        if isinstance(step, BasicStep):
            running += fn.get(str(step.mor), 1) if fn else 1
        else:
            running += 1
        trace.append(TraceEntry(
            index=i,
            kind=_step_kind(step),
            new_vertex=new_v,
            object_summary=cat.describe(state.diagram.obj_of[new_v]),
            running_cost=running,
            vertex_count=len(state.diagram.graph.vertices),
            edge_count=len(state.diagram.graph.edges),
        ))
    return ReplayResult(state.diagram, state, trace)


def _step_kind(step):
    if isinstance(step, BasicStep):
        return "basic"
    return "lim" if isinstance(step, LimStep) else "colim"


# -- cost ---------------------------------------------------------------------


def cost(computation, cost_fn=None):
    """(co)limit step count plus the cost of the basic morphisms used.

    Basic steps count as initial-diagram content regardless of where they
    appear in the sequence, since they may only attach to other basic
    vertices.
    """
    fn = cost_fn if cost_fn is not None else computation.cost_fn
    total = 0
    for s in computation.steps:
        if isinstance(s, BasicStep):
            total += fn.get(str(s.mor), 1) if fn else 1
        else:
            total += 1
    return total


# -- constructivity ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    step: str  # the later (co)limit step whose subdiagram omits something
    reused: tuple  # apex step ids reused by `step`
    missing: tuple  # vertices from the reused apexes' subdiagrams not in J

    def as_dict(self):
        return {"step": self.step, "reused": list(self.reused),
                "missing": list(self.missing)}


def check_constructivity(computation):
    """Structural check of the apex-reuse rule.

    For every pair i < j where the apex created at step i occurs in J_j but
    J_i is not contained in J_j, a violation is reported (grouped by the
    offending later step).  For mixed computations the result is purely
    informational: the model places no constructivity requirement on them.
    """
    js = {}  # apex sid -> vertex set
    violations = []
    for step in computation.steps:
        if isinstance(step, BasicStep):
            continue
        j = frozenset(step.over)
        reused, missing = [], set()
        for apex, j_i in js.items():
            if apex in j and not j_i <= j:
                reused.append(apex)
                missing |= j_i - j
        if reused:
            violations.append(Violation(step.sid, tuple(sorted(reused)),
                                        tuple(sorted(missing))))
        js[step.sid] = j
    return violations


# -- flattening ----------------------------------------------------------------


def flatten(computation, target_sid=None):
    """Replace the tail of a constructive computation by one (co)limit.

    For the designated apex (default: the last (co)limit step), returns an
    equivalent computation consisting of all the basic steps followed by a
    single (co)limit over the basic part of that apex's subdiagram.  The
    produced object is isomorphic to the original apex.
    """
    if computation.kind == MIXED:
        raise NotConstructive("flatten applies to limit/colimit computations only")
    if check_constructivity(computation):
        raise NotConstructive("computation is not constructive")
    basics = tuple(s for s in computation.steps if isinstance(s, BasicStep))
    apex_steps = [s for s in computation.steps if not isinstance(s, BasicStep)]
    if not apex_steps:
        return computation
    if target_sid is None:
        target = apex_steps[-1]
    else:
        match = [s for s in apex_steps if s.sid == target_sid]
        if not match:
            raise UnknownVertex(f"no (co)limit step named {target_sid!r}")
        target = match[0]
    basic_vertices = _basic_vertex_names(basics)
    core = tuple(v for v in target.over if v in basic_vertices)
    if tuple(target.over) == core and target is apex_steps[-1] and \
            len(apex_steps) == 1:
        return computation
    step_cls = LimStep if computation.kind == LIMIT else ColimStep
    return Computation(computation.kind,
                       basics + (step_cls(target.sid, core),),
                       computation.cost_fn)


def _basic_vertex_names(basics):
    names = set()
    for s in basics:
        if isinstance(s.src, Fresh):
            names.add(s.sid)
        if isinstance(s.tgt, Fresh):
            names.add(fresh_target_name(s.sid))
        # SameAsSource reuses the fresh source vertex
    return names


# -- (co)limit reductions -------------------------------------------------------


def limit_via_equalizer(sub, cat):
    """Apex and cone of the limit of a subdiagram, as an equalizer of products."""
    if not (cat.has_products and cat.has_equalizers):
        raise CapabilityMissing(f"{cat.name} cannot take limits")
    vs = sorted(sub.graph.vertices, key=vertex_key)
    objs = [sub.obj_of[v] for v in vs]
    prod, prs = cat.product(objs)
    pr_of = dict(zip(vs, prs))
    edges = sorted(sub.graph.edges, key=lambda e: e.eid)
    if not edges:
        return prod, pr_of
    tgt_objs = [sub.obj_of[e.tgt] for e in edges]
    q, _ = cat.product(tgt_objs)
    phi = cat.tuple_mor(prod, q, [pr_of[e.tgt] for e in edges])
    psi = cat.tuple_mor(prod, q,
                        [cat.compose(sub.mor_of[e.eid], pr_of[e.src])
                         for e in edges])
    apex, mono = cat.equalizer(phi, psi)
    cone = {v: cat.compose(pr_of[v], mono) for v in vs}
    return apex, cone


def colimit_via_coequalizer(sub, cat):
    """Apex and cocone of the colimit, as a coequalizer of coproducts."""
    if not (cat.has_coproducts and cat.has_coequalizers):
        raise CapabilityMissing(f"{cat.name} cannot take colimits")
    vs = sorted(sub.graph.vertices, key=vertex_key)
    objs = [sub.obj_of[v] for v in vs]
    cop, injs = cat.coproduct(objs)
    inj_of = dict(zip(vs, injs))
    edges = sorted(sub.graph.edges, key=lambda e: e.eid)
    if not edges:
        return cop, inj_of
    src_objs = [sub.obj_of[e.src] for e in edges]
    s, _ = cat.coproduct(src_objs)
    phi = cat.cotuple_mor(s, cop, [inj_of[e.src] for e in edges])
    psi = cat.cotuple_mor(s, cop,
                          [cat.compose(inj_of[e.tgt], sub.mor_of[e.eid])
                           for e in edges])
    apex, epi = cat.coequalizer(phi, psi)
    cocone = {v: cat.compose(epi, inj_of[v]) for v in vs}
    return apex, cocone


# -- trace export ----------------------------------------------------------------


def trace_json(result):
    return [
        {
            "index": t.index,
            "kind": t.kind,
            "newVertex": t.new_vertex,
            "objectSummary": t.object_summary,
            "runningCost": t.running_cost,
        }
        for t in result.trace
    ]
