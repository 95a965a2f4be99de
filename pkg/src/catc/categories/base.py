"""Capability interface concrete categories implement for the engine.

A CategoryEvaluator resolves named basic morphisms, composes and compares
morphisms, and (when it advertises the capability) computes finite
products/coproducts and equalizers/coequalizers, isomorphism tests and
images.  Evaluators are stateless and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CapabilityMissing


@dataclass(frozen=True)
class MorphName:
    """A basic-morphism token: bare name plus raw textual arguments."""
    name: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({','.join(self.args)})"


class CategoryEvaluator:
    name = "abstract"

    has_products = False
    has_equalizers = False
    has_coproducts = False
    has_coequalizers = False
    supports_iso = False
    supports_image = False
    supports_cone_check = True

    # -- structure -----------------------------------------------------

    def resolve_basic(self, morph_name):
        raise CapabilityMissing(f"{self.name} has no basic morphism table")

    def dom(self, m):
        return m.dom

    def cod(self, m):
        return m.cod

    def obj_equal(self, a, b):
        return a == b

    def mor_equal(self, f, g):
        return f == g

    def identity(self, obj):
        raise CapabilityMissing(f"{self.name} cannot build identities")

    def compose(self, g, f):
        """g after f."""
        raise CapabilityMissing(f"{self.name} cannot compose")

    def describe(self, obj):
        return repr(obj)

    # -- (co)limit building blocks ---------------------------------------

    def product(self, objs):
        raise CapabilityMissing(f"{self.name} has no products")

    def tuple_mor(self, dom_obj, product_obj, components):
        raise CapabilityMissing(f"{self.name} has no products")

    def equalizer(self, f, g):
        raise CapabilityMissing(f"{self.name} has no equalizers")

    def coproduct(self, objs):
        raise CapabilityMissing(f"{self.name} has no coproducts")

    def cotuple_mor(self, coproduct_obj, cod_obj, components):
        raise CapabilityMissing(f"{self.name} has no coproducts")

    def coequalizer(self, f, g):
        raise CapabilityMissing(f"{self.name} has no coequalizers")

    # -- optional extras --------------------------------------------------

    def is_isomorphic(self, a, b):
        raise CapabilityMissing(f"{self.name} has no isomorphism test")

    def solve_witnesses(self, pairs, squares, rng=None):
        """Per-vertex isos target->host making all squares commute.

        pairs: list of (target_obj, host_obj); squares: list of
        (u_index, v_index, target_mor, host_mor) meaning
        host_mor . w_u == w_v . target_mor must hold.  Returns a list of
        witness morphisms or None.
        """
        raise CapabilityMissing(f"{self.name} has no isomorphism test")

    def verify_iso(self, w, a, b):
        raise CapabilityMissing(f"{self.name} has no isomorphism test")

    def image(self, m):
        raise CapabilityMissing(f"{self.name} has no image factorization")

    def verify_cone(self, apex_obj, cone, sub, is_limit):
        """Recheck that a returned (co)cone commutes with every edge."""
        for e in sub.graph.edges:
            m = sub.mor_of[e.eid]
            if is_limit:
                lhs = self.compose(m, cone[e.src])
                rhs = cone[e.tgt]
            else:
                lhs = self.compose(cone[e.tgt], m)
                rhs = cone[e.src]
            if not self.mor_equal(lhs, rhs):
                return False
        return True
