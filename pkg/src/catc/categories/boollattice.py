"""The monotone Boolean lattice B_n of subsets of {0,1}^n.

Objects are bitsets over the 2^n points, morphisms are the unique inclusions
(present exactly when src is a subset of tgt).  Limits are meets
(intersections), colimits are joins (unions); n is capped at 20.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CapabilityMissing, DomainError, UnknownBasicMorphism
from .base import CategoryEvaluator

MAX_N = 20


@dataclass(frozen=True)
class BoolObj:
    n: int
    bits: int


@dataclass(frozen=True)
class BoolMor:
    dom: BoolObj
    cod: BoolObj


def bool_obj(n, bits):
    if not 1 <= n <= MAX_N:
        raise DomainError(f"lattice arity {n} outside 1..{MAX_N}")
    mask = (1 << (1 << n)) - 1
    return BoolObj(n, bits & mask)


def z_set(n, i):
    """Z_i: points of {0,1}^n with coordinate i set (1-based)."""
    if not 1 <= i <= n:
        raise DomainError(f"z({i}) outside B_{n}")
    bits = 0
    for p in range(1 << n):
        if p >> (i - 1) & 1:
            bits |= 1 << p
    return BoolObj(n, bits)


def inclusion(dom, cod):
    if dom.n != cod.n:
        raise ValueError("mixed lattice arities")
    if dom.bits & ~cod.bits:
        raise ValueError("no morphism: not a subset")
    return BoolMor(dom, cod)


class BoolLattice(CategoryEvaluator):
    name = "bool"
    has_products = True
    has_equalizers = True
    has_coproducts = True
    has_coequalizers = True
    supports_iso = True
    supports_image = False

    def __init__(self, n):
        if not 1 <= n <= MAX_N:
            raise DomainError(f"lattice arity {n} outside 1..{MAX_N}")
        self.n = n

    def resolve_basic(self, morph_name):
        if morph_name.name == "z" and len(morph_name.args) == 1:
            z = z_set(self.n, int(morph_name.args[0]))
            return inclusion(z, z)
        raise UnknownBasicMorphism(f"bool has no basic morphism {morph_name}")

    def identity(self, obj):
        return BoolMor(obj, obj)

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError("composition endpoint mismatch")
        return BoolMor(f.dom, g.cod)

    def mor_equal(self, f, g):
        # morphisms are unique between any two comparable objects
        return f.dom == g.dom and f.cod == g.cod

    def describe(self, obj):
        return f"B_{obj.n}(points={bin(obj.bits).count('1')})"

    def product(self, objs):
        meet = (1 << (1 << self.n)) - 1
        for o in objs:
            meet &= o.bits
        prod = BoolObj(self.n, meet)
        return prod, [inclusion(prod, o) for o in objs]

    def tuple_mor(self, dom_obj, product_obj, components):
        return inclusion(dom_obj, product_obj)

    def equalizer(self, f, g):
        # parallel morphisms are equal, so the equalizer is the domain
        return f.dom, self.identity(f.dom)

    def coproduct(self, objs):
        join = 0
        for o in objs:
            join |= o.bits
        cop = BoolObj(self.n, join)
        return cop, [inclusion(o, cop) for o in objs]

    def cotuple_mor(self, coproduct_obj, cod_obj, components):
        return inclusion(coproduct_obj, cod_obj)

    def coequalizer(self, f, g):
        return f.cod, self.identity(f.cod)

    def is_isomorphic(self, a, b):
        # the lattice has only identity isomorphisms
        return a.bits == b.bits and a.n == b.n

    def verify_iso(self, w, a, b):
        return w.dom == a and w.cod == b and a.bits == b.bits

    def solve_witnesses(self, pairs, squares, rng=None):
        for a, b in pairs:
            if not self.is_isomorphic(a, b):
                return None
        # squares commute automatically: morphisms are unique
        return [self.identity(a) for a, _ in pairs]

    def image(self, m):
        raise CapabilityMissing("every morphism in B_n is already monic")
