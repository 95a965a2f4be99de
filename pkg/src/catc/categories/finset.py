"""Finite sets with exhaustive exact semantics.

Objects are tuples of hashable labels; morphisms carry a total lookup table.
The single basic morphism is `id1`, the identity on the one-point set.
Colimit quotients canonicalize classes by their least member under a stable
sort key, so replays are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import CapabilityMissing, SearchBudgetExceeded, UnknownBasicMorphism
from .base import CategoryEvaluator


def _key(label):
    return (str(type(label)), repr(label))


@dataclass(frozen=True)
class FinSetObj:
    labels: tuple

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class FinSetMor:
    dom: FinSetObj
    cod: FinSetObj
    table: tuple  # pairs (x, f(x)) sorted by _key(x)

    def __call__(self, x):
        return dict(self.table)[x]

    def mapping(self):
        return dict(self.table)


def finset_obj(labels):
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels")
    return FinSetObj(labels)


def finset_mor(dom, cod, mapping):
    table = tuple(sorted(mapping.items(), key=lambda kv: _key(kv[0])))
    if {x for x, _ in table} != set(dom.labels):
        raise ValueError("map table not total")
    codset = set(cod.labels)
    for _, y in table:
        if y not in codset:
            raise ValueError("map table not well-typed")
    return FinSetMor(dom, cod, table)


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the least element as the representative
        if _key(rb) < _key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class FinSet(CategoryEvaluator):
    name = "finset"
    has_products = True
    has_equalizers = True
    has_coproducts = True
    has_coequalizers = True
    supports_iso = True
    supports_image = True

    POINT = finset_obj((1,))

    def resolve_basic(self, morph_name):
        if morph_name.name == "id1" and not morph_name.args:
            return finset_mor(self.POINT, self.POINT, {1: 1})
        raise UnknownBasicMorphism(f"finset has no basic morphism {morph_name}")

    def identity(self, obj):
        return finset_mor(obj, obj, {x: x for x in obj.labels})

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError("composition endpoint mismatch")
        fm, gm = f.mapping(), g.mapping()
        return finset_mor(f.dom, g.cod, {x: gm[fm[x]] for x in f.dom.labels})

    def describe(self, obj):
        return f"set(card={len(obj.labels)})"

    # -- products / equalizers ----------------------------------------

    def product(self, objs):
        if len(objs) == 1:
            return objs[0], [self.identity(objs[0])]
        labels = tuple(itertools.product(*(o.labels for o in objs)))
        prod = FinSetObj(labels)
        projections = [
            finset_mor(prod, o, {t: t[i] for t in labels})
            for i, o in enumerate(objs)
        ]
        return prod, projections

    def tuple_mor(self, dom_obj, product_obj, components):
        if len(components) == 1 and product_obj == components[0].cod:
            return components[0]
        maps = [c.mapping() for c in components]
        return finset_mor(dom_obj, product_obj,
                          {x: tuple(m[x] for m in maps) for x in dom_obj.labels})

    def equalizer(self, f, g):
        fm, gm = f.mapping(), g.mapping()
        labels = tuple(x for x in f.dom.labels if fm[x] == gm[x])
        sub = FinSetObj(labels)
        return sub, finset_mor(sub, f.dom, {x: x for x in labels})

    # -- coproducts / coequalizers -------------------------------------

    def coproduct(self, objs):
        if len(objs) == 1:
            return objs[0], [self.identity(objs[0])]
        labels = tuple((i, x) for i, o in enumerate(objs) for x in o.labels)
        cop = FinSetObj(labels)
        injections = [
            finset_mor(o, cop, {x: (i, x) for x in o.labels})
            for i, o in enumerate(objs)
        ]
        return cop, injections

    def cotuple_mor(self, coproduct_obj, cod_obj, components):
        if len(components) == 1 and coproduct_obj == components[0].dom:
            return components[0]
        mapping = {}
        for i, c in enumerate(components):
            cm = c.mapping()
            for x in c.dom.labels:
                mapping[(i, x)] = cm[x]
        return finset_mor(coproduct_obj, cod_obj, mapping)

    def coequalizer(self, f, g):
        uf = UnionFind(f.cod.labels)
        fm, gm = f.mapping(), g.mapping()
        for x in f.dom.labels:
            uf.union(fm[x], gm[x])
        classes = uf.classes()
        reps = tuple(sorted(classes, key=_key))
        quot = FinSetObj(reps)
        epi = finset_mor(f.cod, quot, {x: uf.find(x) for x in f.cod.labels})
        return quot, epi

    # -- extras -----------------------------------------------------------

    def is_isomorphic(self, a, b):
        return len(a.labels) == len(b.labels)

    def verify_iso(self, w, a, b):
        return (w.dom == a and w.cod == b
                and len(set(w.mapping().values())) == len(a.labels)
                and len(a.labels) == len(b.labels))

    def solve_witnesses(self, pairs, squares, rng=None, budget=200000):
        """Backtracking over per-vertex bijections with square pruning."""
        n = len(pairs)
        by_vertex = [[] for _ in range(n)]
        for (u, v, tm, hm) in squares:
            by_vertex[max(u, v)].append((u, v, tm, hm))
        witnesses = [None] * n
        attempts = [0]

        def bijections(a, b):
            src = sorted(a.labels, key=_key)
            for perm in itertools.permutations(b.labels):
                yield dict(zip(src, perm))

        def ok(idx):
            for (u, v, tm, hm) in by_vertex[idx]:
                wu, wv = witnesses[u], witnesses[v]
                if wu is None or wv is None:
                    continue
                tmm, hmm = tm.mapping(), hm.mapping()
                for x in tm.dom.labels:
                    if wv[tmm[x]] != hmm[wu[x]]:
                        return False
            return True

        def rec(idx):
            if idx == n:
                return True
            a, b = pairs[idx]
            if len(a.labels) != len(b.labels):
                return False
            for cand in bijections(a, b):
                attempts[0] += 1
                if attempts[0] > budget:
                    raise SearchBudgetExceeded("witness search budget exhausted")
                witnesses[idx] = cand
                if ok(idx) and rec(idx + 1):
                    return True
            witnesses[idx] = None
            return False

        if not rec(0):
            return None
        return [finset_mor(a, b, w) for (a, b), w in zip(pairs, witnesses)]

    def image(self, m):
        values = sorted(set(m.mapping().values()), key=_key)
        img = FinSetObj(tuple(values))
        mono = finset_mor(img, m.cod, {x: x for x in values})
        factor = finset_mor(m.dom, img, m.mapping())
        return img, mono, factor


# -- independent oracles (kept free of the engine's reduction path) ---------


def finset_limit_direct(diagram):
    """Matching-tuple construction of the limit; oracle for tests."""
    vs = sorted(diagram.vertices())
    pools = [diagram.obj(v).labels for v in vs]
    idx = {v: i for i, v in enumerate(vs)}
    good = []
    for tup in itertools.product(*pools):
        fine = True
        for e in diagram.edges():
            m = diagram.mor(e.eid)
            if m.mapping()[tup[idx[e.src]]] != tup[idx[e.tgt]]:
                fine = False
                break
        if fine:
            good.append(tup)
    obj = FinSetObj(tuple(good))
    cone = {v: finset_mor(obj, diagram.obj(v), {t: t[idx[v]] for t in good})
            for v in vs}
    return obj, cone


def finset_colimit_direct(diagram):
    """Disjoint union modulo the BFS closure of edge identifications."""
    elements = [(v, x) for v in sorted(diagram.vertices())
                for x in diagram.obj(v).labels]
    neighbors = {el: set() for el in elements}
    for e in diagram.edges():
        m = diagram.mor(e.eid)
        for x in diagram.obj(e.src).labels:
            a, b = (e.src, x), (e.tgt, m.mapping()[x])
            neighbors[a].add(b)
            neighbors[b].add(a)
    seen = {}
    classes = []
    for el in elements:
        if el in seen:
            continue
        comp = []
        stack = [el]
        seen[el] = True
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nxt in neighbors[cur]:
                if nxt not in seen:
                    seen[nxt] = True
                    stack.append(nxt)
        classes.append(tuple(sorted(comp, key=_key)))
    reps = {comp: min(comp, key=_key) for comp in classes}
    rep_of = {}
    for comp in classes:
        for el in comp:
            rep_of[el] = reps[comp]
    obj = FinSetObj(tuple(sorted(reps.values(), key=_key)))
    cocone = {
        v: finset_mor(diagram.obj(v), obj,
                      {x: rep_of[(v, x)] for x in diagram.obj(v).labels})
        for v in diagram.vertices()
    }
    return obj, cocone
