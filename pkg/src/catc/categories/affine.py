"""Presented affine objects: ambient coordinates plus degree <= 2 equations.

An object is the zero set of its equations inside A^m; the equations come
from the equalizer reduction of a limit, one per target coordinate of each
edge, and are capped at total degree 2 (hard assertion).  Morphisms carry
polynomial components per target coordinate; everything the engine creates
here is either a basic morphism or a block coordinate projection.

There is no isomorphism test and no image functor in this category.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatch, UnknownBasicMorphism
from ..polynomials import SparsePoly
from .base import CategoryEvaluator


def coord_vars(m):
    return tuple(f"c{i}" for i in range(m))


@dataclass(frozen=True)
class Presentation:
    m: int
    equations: tuple  # SparsePoly over coord_vars(m), each total degree <= 2
    roles: tuple = None  # provenance tag per coordinate
    eq_targets: tuple = None  # per equation: coordinate index it defines

    def __post_init__(self):
        for eq in self.equations:
            if eq.total_degree() > 2:
                raise ValueError("presentation equation of degree > 2")
        if self.roles is not None and len(self.roles) != self.m:
            raise ValueError("roles arity mismatch")

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.m == other.m
                and self.equations == other.equations)

    def __hash__(self):
        return hash((self.m, self.equations))


def free_presentation(m, roles=None):
    return Presentation(m, (), roles if roles is not None else tuple(
        (i,) for i in range(m)), ())


@dataclass(frozen=True)
class AffMor:
    dom: Presentation
    cod: Presentation
    components: tuple  # SparsePoly over dom coords, one per cod coordinate


def aff_mor(dom, cod, components):
    components = tuple(components)
    if len(components) != cod.m:
        raise ValueError("component count mismatch")
    return AffMor(dom, cod, components)


def presentation_membership(pres, point):
    """True iff every equation vanishes at the point (exact arithmetic)."""
    if len(point) != pres.m:
        raise DimensionMismatch(
            f"point has {len(point)} coordinates, ambient is {pres.m}")
    point = [Fraction(x) for x in point]
    return all(eq.eval(point) == 0 for eq in pres.equations)


def complete_point(pres, partial):
    """Extend a partial coordinate assignment by propagation.

    `partial` maps coordinate indices to values.  Any equation in which
    exactly one undetermined coordinate occurs, linearly and with a nonzero
    coefficient once the known values are substituted, pins that
    coordinate; this runs to a fixpoint.  Remaining equations act as
    membership constraints.
    """
    values = {int(k): Fraction(v) for k, v in partial.items()}
    progress = True
    while progress and len(values) < pres.m:
        progress = False
        for eq in pres.equations:
            unknowns = {i for exps in eq.terms for i, k in enumerate(exps)
                        if k and i not in values}
            if len(unknowns) != 1:
                continue
            u = unknowns.pop()
            if max(exps[u] for exps in eq.terms) > 1:
                continue  # quadratic in the unknown: not a defining shape
            a = Fraction(0)
            b = Fraction(0)
            for exps, c in eq.terms.items():
                v = c
                for i, k in enumerate(exps):
                    if i == u or not k:
                        continue
                    v *= values[i] ** k
                if exps[u]:
                    a += v
                else:
                    b += v
            if a == 0:
                continue
            values[u] = -b / a
            progress = True
    if len(values) != pres.m:
        missing = [i for i in range(pres.m) if i not in values]
        raise DimensionMismatch(f"cannot complete coordinates {missing}")
    return [values[i] for i in range(pres.m)]


def presentation_json(pres):
    from ..polynomials import poly_to_text
    return {
        "m1": pres.m,
        "coordRoles": [list(map(str, r)) if isinstance(r, tuple) else str(r)
                       for r in (pres.roles or ())],
        "equations": [poly_to_text(eq) for eq in pres.equations],
    }


class AffVar(CategoryEvaluator):
    name = "affvar"
    has_products = True
    has_equalizers = True
    has_coproducts = False
    has_coequalizers = False
    supports_iso = False
    supports_image = False

    A0 = free_presentation(0)
    A1 = free_presentation(1)
    A2 = free_presentation(2)

    def resolve_basic(self, morph_name):
        n, args = morph_name.name, morph_name.args
        v1 = coord_vars(1)
        v2 = coord_vars(2)
        if n == "const_endo" and len(args) == 1:
            c = Fraction(args[0])
            return aff_mor(self.A1, self.A1,
                           [SparsePoly.var(v1, 0).scale(c)])
        if n == "add" and not args:
            return aff_mor(self.A2, self.A1,
                           [SparsePoly.var(v2, 0) + SparsePoly.var(v2, 1)])
        if n == "mul" and not args:
            return aff_mor(self.A2, self.A1,
                           [SparsePoly.var(v2, 0) * SparsePoly.var(v2, 1)])
        if n == "pi1" and not args:
            return aff_mor(self.A2, self.A1, [SparsePoly.var(v2, 0)])
        if n == "pi2" and not args:
            return aff_mor(self.A2, self.A1, [SparsePoly.var(v2, 1)])
        if n == "to_point" and not args:
            return aff_mor(self.A1, self.A0, [])
        if n == "point" and len(args) == 1:
            c = Fraction(args[0])
            return aff_mor(self.A0, self.A1,
                           [SparsePoly.const(coord_vars(0), c)])
        raise UnknownBasicMorphism(f"affvar has no basic morphism {morph_name}")

    def identity(self, obj):
        vs = coord_vars(obj.m)
        return aff_mor(obj, obj, [SparsePoly.var(vs, i) for i in range(obj.m)])

    def compose(self, g, f):
        if f.cod.m != g.dom.m:
            raise ValueError("composition endpoint mismatch")
        if g.dom.m == 0:
            # components of g are constants; re-home them over f's domain
            vs = coord_vars(f.dom.m)
            comps = [SparsePoly.const(vs, p.constant_value())
                     for p in g.components]
        else:
            comps = [p.substitute(list(f.components)) for p in g.components]
        return aff_mor(f.dom, g.cod, comps)

    def mor_equal(self, f, g):
        return (f.dom == g.dom and f.cod == g.cod
                and f.components == g.components)

    def describe(self, obj):
        return f"A^{obj.m}/{len(obj.equations)}eqs"

    def product(self, objs):
        if len(objs) == 1:
            return objs[0], [self.identity(objs[0])]
        total = sum(o.m for o in objs)
        vs = coord_vars(total)
        equations = []
        eq_targets = []
        roles = []
        offset = 0
        projections = []
        offsets = []
        for bi, o in enumerate(objs):
            offsets.append(offset)
            index_map = list(range(offset, offset + o.m))
            for eq, tgt in zip(o.equations,
                               o.eq_targets or (None,) * len(o.equations)):
                equations.append(eq.embed(vs, index_map))
                eq_targets.append(offset + tgt if tgt is not None else None)
            src_roles = o.roles or tuple((k,) for k in range(o.m))
            roles.extend(("blk", bi) + (r if isinstance(r, tuple) else (r,))
                         for r in src_roles)
            offset += o.m
        prod = Presentation(total, tuple(equations), tuple(roles),
                            tuple(eq_targets))
        for o, off in zip(objs, offsets):
            comps = [SparsePoly.var(vs, off + i) for i in range(o.m)]
            projections.append(aff_mor(prod, o, comps))
        return prod, projections

    def tuple_mor(self, dom_obj, product_obj, components):
        if len(components) == 1 and product_obj == components[0].cod:
            return components[0]
        comps = []
        for c in components:
            comps.extend(c.components)
        return aff_mor(dom_obj, product_obj, comps)

    def equalizer(self, f, g):
        vs = coord_vars(f.dom.m)
        equations = list(f.dom.equations)
        eq_targets = list(f.dom.eq_targets or (None,) * len(equations))
        for fc, gc in zip(f.components, g.components):
            eq = fc - gc
            if eq.is_zero:
                continue
            equations.append(eq)
            eq_targets.append(_pure_coordinate(fc))
        sub = Presentation(f.dom.m, tuple(equations), f.dom.roles,
                           tuple(eq_targets))
        return sub, self.identity_into(sub, f.dom)

    def identity_into(self, sub, ambient):
        vs = coord_vars(sub.m)
        return aff_mor(sub, ambient,
                       [SparsePoly.var(vs, i) for i in range(sub.m)])

    def verify_cone(self, apex_obj, cone, sub, is_limit):
        if not is_limit:
            return False
        eqset = set(apex_obj.equations) | {-e for e in apex_obj.equations}
        zero = SparsePoly.zero(coord_vars(apex_obj.m))
        eqset.add(zero)
        for e in sub.graph.edges:
            m = sub.mor_of[e.eid]
            lhs = self.compose(m, cone[e.src])
            rhs = cone[e.tgt]
            for a, b in zip(lhs.components, rhs.components):
                # equal on the apex variety: the difference must be one of
                # the defining equations (all are of the form tgt - edgepoly)
                if (a - b) not in eqset:
                    return False
        return True


def _pure_coordinate(poly):
    """Index of the coordinate when poly is exactly x_i, else None."""
    if len(poly.terms) != 1:
        return None
    (exps, coeff), = poly.terms.items()
    if coeff != 1 or sum(exps) != 1:
        return None
    return exps.index(1)


# -- direct construction for diagrams of basic morphisms ---------------------


def affvar_limit_presentation(diagram, cat=None):
    """Equalizer-form presentation of the limit of a basic-morphism diagram.

    Coordinates are grouped in per-vertex blocks (natural vertex order);
    roles are (vertex, local index); one equation per edge-target
    coordinate: target coordinate minus the edge polynomial in the source
    block.  Cone legs are block coordinate projections.
    """
    from ..engine import vertex_key

    cat = cat or AffVar()
    vs = sorted(diagram.graph.vertices, key=vertex_key)
    offsets = {}
    roles = []
    total = 0
    for v in vs:
        o = diagram.obj_of[v]
        if o.equations:
            raise ValueError("diagram vertex is not a basic (free) object")
        offsets[v] = total
        roles.extend((v, k) for k in range(o.m))
        total += o.m
    vars_total = coord_vars(total)
    equations = []
    eq_targets = []
    for e in sorted(diagram.graph.edges, key=lambda e: e.eid):
        mor = diagram.mor_of[e.eid]
        src_map = list(range(offsets[e.src], offsets[e.src] + mor.dom.m))
        for k, comp in enumerate(mor.components):
            tgt_coord = offsets[e.tgt] + k
            eq = SparsePoly.var(vars_total, tgt_coord) - comp.embed(
                vars_total, src_map)
            if eq.is_zero:
                continue
            equations.append(eq)
            eq_targets.append(tgt_coord)
    pres = Presentation(total, tuple(equations), tuple(roles),
                        tuple(eq_targets))
    cone = {}
    for v in vs:
        o = diagram.obj_of[v]
        comps = [SparsePoly.var(vars_total, offsets[v] + i)
                 for i in range(o.m)]
        cone[v] = aff_mor(pres, o, comps)
    return pres, cone
