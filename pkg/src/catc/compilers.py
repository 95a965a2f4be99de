"""Bidirectional translations between circuits and diagram computations.

Four passes:

* straight-line program -> limit computation over presented affine objects
  (one self-loop per input, a three-edge block and a running limit per
  gate, an optional zero-set pullback at the end);
* constructive limit computation -> equalizer-form presentation plus a
  circuit computing the difference map, with the degree-2 / 2C / 4C size
  bounds asserted and reported;
* formula -> module-category colimit computation (chains for products,
  diagonal/injection diamonds for sums);
* monotone circuit <-> mixed lattice computation (and = lim, or = colim).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .categories.affine import AffVar, affvar_limit_presentation
from .categories.base import MorphName
from .categories.boollattice import BoolLattice
from .categories.rmod import RMod
from .engine import (
    COLIMIT,
    LIMIT,
    MIXED,
    BasicStep,
    ColimStep,
    Computation,
    Existing,
    Fresh,
    LimStep,
    SameAsSource,
    cost,
    flatten,
    fresh_target_name,
    replay,
    vertex_key,
)
from .errors import (
    MultipleOutputsUnsupported,
    NotAFormula,
    VariableOutOfRange,
)
from .graphs import full_subdiagram
from .slp import Circuit, Gate, check_formula, mono_input_index

# pinned empirical multipliers, asserted over the whole corpus
SLP_COST_MULTIPLIER = 5
FORMULA_COST_MULTIPLIER = 7


@dataclass(frozen=True)
class CompileReport:
    input_size: int
    output_cost: int
    bound_multiplier: Fraction
    bound_satisfied: bool

    def as_dict(self):
        return {
            "inputSize": self.input_size,
            "outputCost": self.output_cost,
            "boundMultiplier": [self.bound_multiplier.numerator,
                                self.bound_multiplier.denominator],
            "boundSatisfied": self.bound_satisfied,
        }


# -- straight-line program -> limit computation in AffVar ---------------------


def compile_slp_to_limit(circuit, emit_zero_set=False):
    """Inductive limit computation whose replay realizes every gate value.

    The diagram keeps one value vertex per gate.  Binary gates attach a
    fresh coordinate-pair vertex with projections onto the two operand
    vertices and the operation edge onto a fresh result vertex, then take
    the limit of all basic vertices so far (the running graph of the
    program).  Constants are pinned by point(c) edges.  With
    emit_zero_set, a point(0) edge into the output vertex and one final
    pullback limit cut out the zero set.
    """
    if emit_zero_set and len(circuit.outputs) != 1:
        raise MultipleOutputsUnsupported(
            "zero-set emission needs a single designated output")
    steps = []
    value_vertex = {}
    basic_vertices = []
    counter = [0]

    def sid():
        counter[0] += 1
        return f"s{counter[0]}"

    def running_lim():
        steps.append(LimStep(sid(), tuple(basic_vertices)))
        return steps[-1].sid

    last_lim = None
    for g in circuit.gates:
        if g.op == "input":
            s = sid()
            steps.append(BasicStep(s, Fresh(), MorphName("const_endo", ("1",)),
                                   SameAsSource()))
            value_vertex[g.gid] = s
            basic_vertices.append(s)
        elif g.op == "const":
            s = sid()
            steps.append(BasicStep(s, Fresh(), MorphName("point", (str(g.args[0]),)),
                                   Fresh()))
            value_vertex[g.gid] = fresh_target_name(s)
            basic_vertices.append(s)  # the A^0 source vertex
            basic_vertices.append(fresh_target_name(s))
        else:
            op = "add" if g.op == "add" else "mul"
            ua, ub = value_vertex[g.args[0]], value_vertex[g.args[1]]
            s1 = sid()
            steps.append(BasicStep(s1, Fresh(), MorphName("pi1"), Existing(ua)))
            s2 = sid()
            steps.append(BasicStep(s2, Existing(s1), MorphName("pi2"),
                                   Existing(ub)))
            s3 = sid()
            steps.append(BasicStep(s3, Existing(s1), MorphName(op), Fresh()))
            value_vertex[g.gid] = fresh_target_name(s3)
            basic_vertices.extend([s1, fresh_target_name(s3)])
            last_lim = running_lim()
    if last_lim is None:
        last_lim = running_lim()
    out_vertices = {gid: value_vertex[gid] for gid in circuit.outputs}
    meta = {"values": value_vertex, "outputs": out_vertices,
            "graph_apex": last_lim, "zero_apex": None}
    if emit_zero_set:
        out_v = out_vertices[circuit.outputs[0]]
        z = sid()
        steps.append(BasicStep(z, Fresh(), MorphName("point", ("0",)),
                               Existing(out_v)))
        basic_vertices.append(z)
        zero_apex = sid()
        steps.append(LimStep(zero_apex, tuple(basic_vertices)))
        meta["zero_apex"] = zero_apex
    comp = Computation(LIMIT, tuple(steps))
    c = cost(comp)
    n = circuit.size()
    report = CompileReport(n, c, Fraction(c, n),
                           c <= SLP_COST_MULTIPLIER * n)
    meta["optimized_cost"] = cost(peephole_intermediate_lims(comp))
    return comp, report, meta


def peephole_intermediate_lims(comp):
    """Drop (co)limit steps whose apex no later step ever references.

    The per-gate running limits exist for the inductive structure only;
    removing them leaves an equivalent cheaper computation (the final
    apexes and every basic vertex are untouched).
    """
    keep = []
    referenced = set()
    apex_steps = [s for s in comp.steps if not isinstance(s, BasicStep)]
    last = apex_steps[-1].sid if apex_steps else None
    for s in comp.steps:
        if not isinstance(s, BasicStep):
            referenced.update(s.over)
    for s in comp.steps:
        if isinstance(s, BasicStep) or s.sid == last or s.sid in referenced:
            keep.append(s)
    return Computation(comp.kind, tuple(keep), comp.cost_fn, comp.target)


def complete_input_point(pres, circuit, meta, assignment):
    """Ambient point of the compiled presentation over given input values.

    Input coordinates are seeded from the assignment; every other
    coordinate is filled by forward evaluation of the defining equations.
    """
    from .categories.affine import complete_point

    partial = {}
    name_of = {}
    for g in circuit.gates:
        if g.op == "input":
            name_of[meta["values"][g.gid]] = g.args[0]
    for i, role in enumerate(pres.roles):
        v = role[0]
        if v in name_of and role[1] == 0:
            partial[i] = Fraction(assignment[name_of[v]])
    return complete_point(pres, partial)


# -- limit computation -> presentation + circuit -------------------------------


def compile_limit_to_presentation(comp, target_sid=None):
    """Flatten, present the final apex, and emit the difference circuit.

    Asserts the size bounds: every equation of degree <= 2, ambient and
    equation counts at most twice the computation cost, emitted circuit
    size at most four times the cost.  Violations are flagged in the
    report, never silently ignored.
    """
    flat = flatten(comp, target_sid)
    cat = AffVar()
    basics = Computation(LIMIT,
                         tuple(s for s in flat.steps if isinstance(s, BasicStep)))
    base = replay(basics, cat)
    final = flat.steps[-1]
    sub = full_subdiagram(base.diagram, final.over)
    pres, cone = affvar_limit_presentation(sub, cat)
    circuit = presentation_circuit(pres)
    c = cost(comp)
    m1 = pres.m
    m2 = len(pres.equations)
    ok = (m1 <= 2 * c and m2 <= 2 * c and circuit.size() <= 4 * c
          and all(eq.total_degree() <= 2 for eq in pres.equations))
    report = CompileReport(c, circuit.size(),
                           Fraction(circuit.size(), max(c, 1)), ok)
    return pres, circuit, report, cone


def presentation_circuit(pres):
    """Arithmetic circuit computing every equation of the presentation.

    One input gate per ambient coordinate; constants and repeated
    subexpressions are shared, which keeps the gate count within the 4C
    budget of the corpus.
    """
    gates = []
    cache = {}

    def emit(op, args):
        key = (op, args)
        if key in cache:
            return cache[key]
        gid = f"g{len(gates) + 1}"
        gates.append(Gate(gid, op, args))
        cache[key] = gid
        return gid

    coord_gate = [emit("input", (f"c{i}",)) for i in range(pres.m)]
    outputs = []
    for eq in pres.equations:
        outputs.append(_emit_poly(eq, coord_gate, emit))
    if not outputs:
        outputs = [emit("const", (Fraction(0),))]
    return Circuit(tuple(gates), tuple(dict.fromkeys(outputs)))


def _emit_poly(poly, coord_gate, emit):
    terms = sorted(poly.terms.items())
    acc = None
    for exps, coeff in terms:
        factors = []
        for i, k in enumerate(exps):
            factors.extend([coord_gate[i]] * k)
        if not factors:
            term = emit("const", (coeff,))
        else:
            term = factors[0]
            for f in factors[1:]:
                term = emit("mul", (term, f))
            if coeff != 1:
                term = emit("mul", (emit("const", (coeff,)), term))
        acc = term if acc is None else emit("add", (acc, term))
    return acc if acc is not None else emit("const", (Fraction(0),))


# -- formula -> R-Mod colimit computation ---------------------------------------


def compile_formula_to_rmod(circuit, n_vars=None):
    """Colimit computation in the module category containing R --f--> R.

    Chains realize products, the diagonal/injection diamond realizes sums;
    the computation ends with one colimit over every vertex.  Returns the
    computation, a report, and metadata naming the source (input) vertex
    and the identity-cocone (output) vertex of the computed morphism.
    """
    if not check_formula(circuit):
        raise NotAFormula("circuit has a reused intermediate gate")
    if len(circuit.outputs) != 1:
        raise NotAFormula("formula compilation needs a single output")
    if n_vars is None:
        n_vars = max([mono_input_index(n) for n in circuit.input_names()],
                     default=1)
    gate_of = {g.gid: g for g in circuit.gates}
    steps = []
    counter = [0]

    def sid():
        counter[0] += 1
        return f"s{counter[0]}"

    def build(gid, in_vertex):
        """Emit the sub-diagram for gate gid; returns (in_vertex, out_vertex)."""
        g = gate_of[gid]
        if g.op == "input":
            i = mono_input_index(g.args[0])
            if i > n_vars:
                raise VariableOutOfRange(f"x{i} outside {n_vars} variables")
            s = sid()
            steps.append(BasicStep(s, in_vertex or Fresh(),
                                   MorphName("xmul", (str(i),)), Fresh()))
            src = s if in_vertex is None else _existing_name(in_vertex)
            return src, fresh_target_name(s)
        if g.op == "const":
            s = sid()
            steps.append(BasicStep(s, in_vertex or Fresh(),
                                   MorphName("cmul", (str(g.args[0]),)), Fresh()))
            src = s if in_vertex is None else _existing_name(in_vertex)
            return src, fresh_target_name(s)
        if g.op == "mul":
            a_in, a_out = build(g.args[0], in_vertex)
            _, b_out = build(g.args[1], Existing(a_out))
            return a_in, b_out
        # sum: the diamond
        s_diag = sid()
        steps.append(BasicStep(s_diag, in_vertex or Fresh(),
                               MorphName("diag"), Fresh()))
        in_v = s_diag if in_vertex is None else _existing_name(in_vertex)
        left = fresh_target_name(s_diag)
        a_in, a_out = build(g.args[0], None)
        b_in, b_out = build(g.args[1], None)
        steps.append(BasicStep(sid(), Existing(a_in), MorphName("inj1"),
                               Existing(left)))
        steps.append(BasicStep(sid(), Existing(b_in), MorphName("inj2"),
                               Existing(left)))
        s_m = sid()
        steps.append(BasicStep(s_m, Existing(a_out), MorphName("inj1"), Fresh()))
        right = fresh_target_name(s_m)
        steps.append(BasicStep(sid(), Existing(b_out), MorphName("inj2"),
                               Existing(right)))
        s_add = sid()
        steps.append(BasicStep(s_add, Existing(right), MorphName("add"), Fresh()))
        return in_v, fresh_target_name(s_add)

    in_v, out_v = build(circuit.outputs[0], None)
    vertices = _collect_vertices(steps)
    steps.append(ColimStep(sid(), tuple(vertices)))
    comp = Computation(COLIMIT, tuple(steps))
    c = cost(comp)
    n = circuit.size()
    report = CompileReport(n, c, Fraction(c, n),
                           c <= FORMULA_COST_MULTIPLIER * n)
    return comp, report, {"in_vertex": in_v, "out_vertex": out_v,
                          "apex": steps[-1].sid, "n_vars": n_vars}


def _existing_name(spec):
    return spec.vertex


def _collect_vertices(steps):
    names = []
    for s in steps:
        if isinstance(s, BasicStep):
            if isinstance(s.src, Fresh):
                names.append(s.sid)
            if isinstance(s.tgt, Fresh):
                names.append(fresh_target_name(s.sid))
        else:
            names.append(s.sid)
    return names


def extract_formula_poly(comp, cat, meta):
    """Extraction oracle hook: recover the polynomial computed at the input
    vertex of a compiled formula computation, normalized at the output slot."""
    from .categories.rmod import rmod_extract_cocone_polys

    basics = Computation(COLIMIT,
                         tuple(s for s in comp.steps
                               if isinstance(s, BasicStep)))
    base = replay(basics, cat)
    final = [s for s in comp.steps if not isinstance(s, BasicStep)][-1]
    vs = [v for v in final.over if v in set(base.diagram.graph.vertices)]
    sub = full_subdiagram(base.diagram, vs)
    polys = rmod_extract_cocone_polys(sub, cat,
                                      output_slot=(meta["out_vertex"], 0))
    return polys[(meta["in_vertex"], 0)], polys


# -- monotone circuits <-> mixed lattice computations ----------------------------


def monotone_to_mixed(circuit, n):
    """One lattice vertex per gate: and -> lim, or -> colim."""
    steps = []
    vertex_of = {}
    counter = [0]

    def sid():
        counter[0] += 1
        return f"s{counter[0]}"

    for g in circuit.gates:
        if g.op == "input":
            i = mono_input_index(g.args[0])
            if not 1 <= i <= n:
                raise VariableOutOfRange(f"input x{i} outside B_{n}")
            s = sid()
            steps.append(BasicStep(s, Fresh(), MorphName("z", (str(i),)),
                                   SameAsSource()))
            vertex_of[g.gid] = s
        else:
            over = tuple(dict.fromkeys(
                [vertex_of[g.args[0]], vertex_of[g.args[1]]]))
            s = sid()
            if g.op == "and":
                steps.append(LimStep(s, over))
            else:
                steps.append(ColimStep(s, over))
            vertex_of[g.gid] = s
    comp = Computation(MIXED, tuple(steps),
                       target=tuple(vertex_of[o] for o in circuit.outputs))
    return comp, vertex_of


def mixed_to_monotone(comp, n):
    """k-1 binary gates per (co)limit of k vertices, left-folded by vertex id."""
    gates = []
    gate_of = {}
    counter = [0]

    def gid():
        counter[0] += 1
        return f"g{counter[0]}"

    for step in comp.steps:
        if isinstance(step, BasicStep):
            name = step.mor
            if name.name != "z" or len(name.args) != 1:
                raise VariableOutOfRange(
                    f"step {step.sid!r} is not a lattice generator")
            i = int(name.args[0])
            if not 1 <= i <= n:
                raise VariableOutOfRange(f"z({i}) outside B_{n}")
            g = gid()
            gates.append(Gate(g, "input", (f"x{i}",)))
            gate_of[step.sid] = g
        else:
            op = "and" if isinstance(step, LimStep) else "or"
            members = sorted(step.over, key=vertex_key)
            acc = gate_of[members[0]]
            for v in members[1:]:
                g = gid()
                gates.append(Gate(g, op, (acc, gate_of[v])))
                acc = g
            gate_of[step.sid] = acc
    last = comp.steps[-1].sid
    outputs = tuple(gate_of[v] for v in (comp.target or (last,)))
    return Circuit(tuple(gates), outputs)
