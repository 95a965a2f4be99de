"""Modules over R = Q[x_1..x_n] at desk scale.

Objects are presentations (generator count plus relation columns with
polynomial entries); the basic morphisms are variable/constant
multiplications R -> R, the injections and diagonal into R^2, addition
R^2 -> R, and the zero map.  Colimits are computed as coequalizers of
coproducts, which for these presentations is pure bookkeeping.

The cocone-polynomial extraction solves the homogeneous linear system read
off a basic-morphism diagram (one or two equations per edge) by
fraction-free Bareiss elimination over the polynomial ring, clears
denominators, and divides out the gcd of the solution entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    DegreeBudgetExceeded,
    NoNontrivialSolution,
    RankAmbiguous,
    UnknownBasicMorphism,
)
from ..polynomials import (
    RatFunc,
    SparsePoly,
    divide_exact,
    normalize_poly,
    poly_gcd,
    poly_lcm,
)
from .base import CategoryEvaluator


@dataclass(frozen=True)
class ModulePresentation:
    gens: int
    relations: tuple  # columns; each a tuple of gens polynomial entries

    def __post_init__(self):
        for col in self.relations:
            if len(col) != self.gens:
                raise ValueError("relation column arity mismatch")


@dataclass(frozen=True)
class RModMor:
    dom: ModulePresentation
    cod: ModulePresentation
    mat: tuple  # rows = cod.gens, cols = dom.gens, SparsePoly entries


class RMod(CategoryEvaluator):
    name = "rmod"
    has_products = False
    has_equalizers = False
    has_coproducts = True
    has_coequalizers = True
    supports_iso = False
    supports_image = False
    supports_cone_check = False  # equality mod relations needs ideal membership

    def __init__(self, variables):
        self.vars = tuple(variables)
        self.R = ModulePresentation(1, ())
        self.R2 = ModulePresentation(2, ())
        self.ZERO = ModulePresentation(0, ())

    # -- polynomial helpers ------------------------------------------------

    def poly_const(self, c):
        return SparsePoly.const(self.vars, c)

    def poly_var(self, i):
        return SparsePoly.var(self.vars, i)

    def _mat(self, dom, cod, entries):
        return RModMor(dom, cod, tuple(tuple(entries[i][j]
                                             for j in range(dom.gens))
                                       for i in range(cod.gens)))

    def resolve_basic(self, morph_name):
        n, args = morph_name.name, morph_name.args
        one = self.poly_const(1)
        zero = SparsePoly.zero(self.vars)
        if n == "xmul" and len(args) == 1:
            i = int(args[0])
            if not 1 <= i <= len(self.vars):
                raise UnknownBasicMorphism(
                    f"xmul({i}) outside the {len(self.vars)}-variable ring")
            return self._mat(self.R, self.R, [[self.poly_var(i - 1)]])
        if n == "cmul" and len(args) == 1:
            return self._mat(self.R, self.R,
                             [[self.poly_const(Fraction(args[0]))]])
        if n == "inj1" and not args:
            return self._mat(self.R, self.R2, [[one], [zero]])
        if n == "inj2" and not args:
            return self._mat(self.R, self.R2, [[zero], [one]])
        if n == "diag" and not args:
            return self._mat(self.R, self.R2, [[one], [one]])
        if n == "add" and not args:
            return self._mat(self.R2, self.R, [[one, one]])
        if n == "tozero" and not args:
            return self._mat(self.R, self.ZERO, [])
        raise UnknownBasicMorphism(f"rmod has no basic morphism {morph_name}")

    def identity(self, obj):
        one = self.poly_const(1)
        zero = SparsePoly.zero(self.vars)
        return self._mat(obj, obj,
                         [[one if i == j else zero for j in range(obj.gens)]
                          for i in range(obj.gens)])

    def compose(self, g, f):
        if f.cod.gens != g.dom.gens:
            raise ValueError("composition endpoint mismatch")
        zero = SparsePoly.zero(self.vars)
        rows = []
        for i in range(g.cod.gens):
            row = []
            for j in range(f.dom.gens):
                acc = zero
                for t in range(f.cod.gens):
                    if not g.mat[i][t].is_zero and not f.mat[t][j].is_zero:
                        acc = acc + g.mat[i][t] * f.mat[t][j]
                row.append(acc)
            rows.append(row)
        return self._mat(f.dom, g.cod, rows)

    def describe(self, obj):
        return f"R^{obj.gens}/{len(obj.relations)}rel"

    def coproduct(self, objs):
        if len(objs) == 1:
            return objs[0], [self.identity(objs[0])]
        total = sum(o.gens for o in objs)
        zero = SparsePoly.zero(self.vars)
        one = self.poly_const(1)
        relations = []
        offset = 0
        offsets = []
        for o in objs:
            offsets.append(offset)
            for col in o.relations:
                lifted = [zero] * total
                for i, entry in enumerate(col):
                    lifted[offset + i] = entry
                relations.append(tuple(lifted))
            offset += o.gens
        cop = ModulePresentation(total, tuple(relations))
        injections = []
        for o, off in zip(objs, offsets):
            rows = [[one if i == off + j else zero for j in range(o.gens)]
                    for i in range(total)]
            injections.append(self._mat(o, cop, rows))
        return cop, injections

    def cotuple_mor(self, coproduct_obj, cod_obj, components):
        if len(components) == 1 and coproduct_obj == components[0].dom:
            return components[0]
        rows = [[] for _ in range(cod_obj.gens)]
        for c in components:
            for i in range(cod_obj.gens):
                rows[i].extend(c.mat[i])
        return self._mat(coproduct_obj, cod_obj, rows)

    def coequalizer(self, f, g):
        if f.dom.relations:
            raise ValueError("coequalizer source must be free here")
        cols = []
        for j in range(f.dom.gens):
            col = tuple(f.mat[i][j] - g.mat[i][j] for i in range(f.cod.gens))
            if any(not e.is_zero for e in col):
                cols.append(col)
        quot = ModulePresentation(f.cod.gens,
                                  f.cod.relations + tuple(cols))
        return quot, self._mat(f.cod, quot,
                               [[r for r in row] for row in
                                self.identity(f.cod).mat])


# -- direct colimit presentation for basic diagrams ---------------------------


def rmod_colimit_presentation(diagram, cat):
    """Presentation of the colimit of a basic-morphism diagram.

    Generators: one block per vertex (natural order); relations: one column
    per source generator of each edge, expressing j_src(x) = j_tgt(f x).
    Returns (presentation, slot map vertex -> [generator indices]).
    """
    from ..engine import vertex_key

    vs = sorted(diagram.graph.vertices, key=vertex_key)
    offsets = {}
    total = 0
    for v in vs:
        offsets[v] = total
        total += diagram.obj_of[v].gens
    zero = SparsePoly.zero(cat.vars)
    relations = []
    for e in sorted(diagram.graph.edges, key=lambda e: e.eid):
        mor = diagram.mor_of[e.eid]
        for j in range(mor.dom.gens):
            col = [zero] * total
            col[offsets[e.src] + j] = col[offsets[e.src] + j] + cat.poly_const(1)
            for i in range(mor.cod.gens):
                entry = mor.mat[i][j]
                if not entry.is_zero:
                    k = offsets[e.tgt] + i
                    col[k] = col[k] - entry
            if any(not c.is_zero for c in col):
                relations.append(tuple(col))
    pres = ModulePresentation(total, tuple(relations))
    slots = {v: list(range(offsets[v], offsets[v] + diagram.obj_of[v].gens))
             for v in vs}
    return pres, slots


# -- cocone polynomial extraction ----------------------------------------------


def extraction_system(diagram, cat):
    """Linear system A f = 0 over R for the cocone unknowns of a diagram.

    Slots: one unknown per R generator of each vertex (zero objects
    contribute equations f = 0 on their sources).  One or two equations per
    edge following the arrow table of the basic morphisms.
    """
    from ..engine import vertex_key

    vs = sorted(diagram.graph.vertices, key=vertex_key)
    slots = []
    slot_of = {}
    for v in vs:
        gens = diagram.obj_of[v].gens
        slot_of[v] = []
        for k in range(gens):
            slot_of[v].append(len(slots))
            slots.append((v, k))
    rows = []
    one = cat.poly_const(1)
    for e in sorted(diagram.graph.edges, key=lambda e: e.eid):
        mor = diagram.mor_of[e.eid]
        src_slots = slot_of[e.src]
        tgt_slots = slot_of[e.tgt]
        if not tgt_slots:
            # R -> {0}: the source cocone component must vanish
            for s in src_slots:
                rows.append({s: one})
            continue
        # f_src[j] - sum_i mat[i][j] * f_tgt[i] = 0
        for j, s in enumerate(src_slots):
            row = {s: one}
            for i, t in enumerate(tgt_slots):
                entry = mor.mat[i][j]
                if not entry.is_zero:
                    row[t] = row.get(t, SparsePoly.zero(cat.vars)) - entry
            rows.append({k: v2 for k, v2 in row.items() if not v2.is_zero})
    return rows, slots, slot_of


def _bareiss_echelon(rows, ncols, degree_budget):
    """Fraction-free row echelon; returns (rows, pivot columns)."""
    rows = [dict(r) for r in rows if r]
    pivots = []
    prev = None
    r = 0
    for col in range(ncols):
        pivot = None
        best = None
        for i in range(r, len(rows)):
            e = rows[i].get(col)
            if e is not None and not e.is_zero:
                d = e.total_degree()
                if best is None or d < best:
                    pivot, best = i, d
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        pv = prow[col]
        for i in range(r + 1, len(rows)):
            ri = rows[i]
            f = ri.get(col)
            # rows with f = 0 are still rescaled by pv/prev: the one-step
            # fraction-free identity requires it for later exact divisions
            touched = set(prow) | set(ri) if f is not None else set(ri)
            new = {}
            for j in touched:
                if j == col:
                    continue
                a = ri.get(j)
                b = prow.get(j)
                term = None
                if a is not None and not a.is_zero:
                    term = pv * a
                if f is not None and not f.is_zero \
                        and b is not None and not b.is_zero:
                    fb = f * b
                    term = (term - fb) if term is not None else -fb
                if term is None or term.is_zero:
                    continue
                if prev is not None:
                    term = divide_exact(term, prev)
                if term.total_degree() > degree_budget:
                    raise DegreeBudgetExceeded(
                        "elimination entry degree exceeds the budget")
                new[j] = term
            rows[i] = new
        pivots.append(col)
        prev = pv
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rmod_extract_cocone_polys(diagram, cat, output_slot=None,
                              degree_budget=128):
    """Solve the cocone system and return one polynomial per slot.

    Asserts that the colimit of the diagram is isomorphic to R: the kernel
    of the system must be exactly one-dimensional over the fraction field.
    The solution is cleared of denominators, divided by the gcd of its
    entries, and sign-normalized so the designated output slot has a
    positive leading coefficient.
    """
    rows, slots, slot_of = extraction_system(diagram, cat)
    n = len(slots)
    if n == 0:
        raise NoNontrivialSolution("diagram has no R generators")
    ech, pivots = _bareiss_echelon(rows, n, degree_budget)
    rank = len(pivots)
    if rank == n:
        raise NoNontrivialSolution("cocone system has full rank; colimit is not R")
    if rank < n - 1:
        raise RankAmbiguous(
            f"kernel has dimension {n - rank}; colimit is not R")
    free = [j for j in range(n) if j not in set(pivots)][0]
    one = RatFunc(cat.poly_const(1))
    sol = {free: one}
    for row, p in zip(reversed(ech), reversed(pivots)):
        acc = RatFunc(SparsePoly.zero(cat.vars))
        for j, entry in row.items():
            if j == p:
                continue
            if j in sol and not sol[j].is_zero:
                acc = acc + RatFunc(entry) * sol[j]
        sol[p] = RatFunc(-acc.num, acc.den * row[p]) if not acc.is_zero \
            else RatFunc(SparsePoly.zero(cat.vars))
    vec = [sol.get(j, RatFunc(SparsePoly.zero(cat.vars))) for j in range(n)]
    # clear denominators
    lcm = cat.poly_const(1)
    for r_ in vec:
        if not r_.is_zero:
            lcm = poly_lcm(lcm, r_.den)
    cleared = [divide_exact(lcm, r_.den) * r_.num if not r_.is_zero
               else SparsePoly.zero(cat.vars) for r_ in vec]
    g = None
    for p in cleared:
        if not p.is_zero:
            g = p if g is None else poly_gcd(g, p)
    if g is None:
        raise NoNontrivialSolution("kernel vector is zero")
    normalized = [divide_exact(p, g) if not p.is_zero else p for p in cleared]
    if output_slot is not None:
        idx = slots.index(output_slot) if output_slot in slots else None
        if idx is None:
            v = output_slot
            idx = slot_of[v][0]
        ref = normalized[idx]
        if ref.is_zero:
            raise NoNontrivialSolution("designated output slot extracts zero")
        _, lead = ref.leading()
        if lead < 0:
            normalized = [-p for p in normalized]
    return {slots[i]: normalized[i] for i in range(n)}
