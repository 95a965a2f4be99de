"""Finite-dimensional vector spaces over Q with exact rational matrices.

Basic morphisms mirror the vector-space generating set: scalar maps
``scale(c)``, the addition map ``add`` : Q^2 -> Q, the two projections
``pi1``/``pi2``, and ``from_zero``/``to_zero``.  Kernels and cokernels are
computed by reduced row-echelon pivoting, so bases are deterministic, and
the rank-nullity identity is asserted on every limit computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .. import linalg
from ..errors import UnknownBasicMorphism
from .base import CategoryEvaluator


@dataclass(frozen=True)
class VectObj:
    dim: int


@dataclass(frozen=True)
class VectMor:
    dom: VectObj
    cod: VectObj
    mat: tuple  # rows = cod.dim, cols = dom.dim

    def rows(self):
        return [list(r) for r in self.mat]


def vect_mor(dom, cod, rows):
    mat = tuple(tuple(Fraction(v) for v in r) for r in rows)
    if len(mat) != cod.dim or any(len(r) != dom.dim for r in mat):
        raise ValueError("matrix shape mismatch")
    return VectMor(dom, cod, mat)


# running tally of rank-nullity checks, inspected by the acceptance suite
RANK_NULLITY_CHECKS = {"count": 0}


class VectQ(CategoryEvaluator):
    name = "vectq"
    has_products = True
    has_equalizers = True
    has_coproducts = True
    has_coequalizers = True
    supports_iso = True
    supports_image = True

    K = VectObj(1)
    K2 = VectObj(2)
    ZERO = VectObj(0)

    def resolve_basic(self, morph_name):
        n, args = morph_name.name, morph_name.args
        if n == "scale" and len(args) == 1:
            return vect_mor(self.K, self.K, [[Fraction(args[0])]])
        if n == "add" and not args:
            return vect_mor(self.K2, self.K, [[1, 1]])
        if n == "pi1" and not args:
            return vect_mor(self.K2, self.K, [[1, 0]])
        if n == "pi2" and not args:
            return vect_mor(self.K2, self.K, [[0, 1]])
        if n == "from_zero" and not args:
            return vect_mor(self.ZERO, self.K, [[]])
        if n == "to_zero" and not args:
            return vect_mor(self.K, self.ZERO, [])
        raise UnknownBasicMorphism(f"vectq has no basic morphism {morph_name}")

    def identity(self, obj):
        return VectMor(obj, obj, tuple(tuple(r) for r in linalg.identity(obj.dim)))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError("composition endpoint mismatch")
        # explicit shape: matmul cannot infer dimensions through Q^0
        rows = [[Fraction(0)] * f.dom.dim for _ in range(g.cod.dim)]
        for i in range(g.cod.dim):
            for t in range(f.cod.dim):
                c = g.mat[i][t]
                if c:
                    frow = f.mat[t]
                    for j in range(f.dom.dim):
                        if frow[j]:
                            rows[i][j] += c * frow[j]
        return vect_mor(f.dom, g.cod, rows)

    def describe(self, obj):
        return f"Q^{obj.dim}"

    # -- biproduct structure ------------------------------------------------

    def product(self, objs):
        if len(objs) == 1:
            return objs[0], [self.identity(objs[0])]
        total = sum(o.dim for o in objs)
        prod = VectObj(total)
        projections = []
        offset = 0
        for o in objs:
            rows = [[Fraction(1) if j == offset + i else Fraction(0)
                     for j in range(total)] for i in range(o.dim)]
            projections.append(vect_mor(prod, o, rows))
            offset += o.dim
        return prod, projections

    def tuple_mor(self, dom_obj, product_obj, components):
        if len(components) == 1 and product_obj == components[0].cod:
            return components[0]
        rows = []
        for c in components:
            rows.extend(c.rows())
        return vect_mor(dom_obj, product_obj, rows)

    def coproduct(self, objs):
        prod, projections = self.product(objs)
        injections = []
        offset = 0
        total = prod.dim
        for o in objs:
            rows = [[Fraction(1) if i == offset + j and 0 <= i - offset < o.dim
                     else Fraction(0) for j in range(o.dim)]
                    for i in range(total)]
            injections.append(vect_mor(o, prod, rows))
            offset += o.dim
        return prod, injections

    def cotuple_mor(self, coproduct_obj, cod_obj, components):
        if len(components) == 1 and coproduct_obj == components[0].dom:
            return components[0]
        rows = [[] for _ in range(cod_obj.dim)]
        for c in components:
            for i, r in enumerate(c.rows()):
                rows[i].extend(r)
        return vect_mor(coproduct_obj, cod_obj, rows)

    def equalizer(self, f, g):
        diff = [[a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(f.rows(), g.rows())]
        sparse = linalg.to_sparse(diff)
        # eliminate trailing coordinates first: the leading (input-block)
        # coordinates stay free, which pins the apex basis reproducibly
        basis = linalg.kernel_basis(sparse, f.dom.dim, eliminate_from_right=True)
        r = linalg.rank(sparse, f.dom.dim)
        assert len(basis) + r == f.dom.dim, "rank-nullity violated"
        RANK_NULLITY_CHECKS["count"] += 1
        sub = VectObj(len(basis))
        # kernel basis vectors become the columns of the mono
        rows = [[basis[j][i] for j in range(len(basis))]
                for i in range(f.dom.dim)]
        return sub, vect_mor(sub, f.dom, rows)

    def coequalizer(self, f, g):
        diff = [[a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(f.rows(), g.rows())]
        # image of diff = span of its columns; quotient Q^cod by it
        cols = [{i: row[j] for i, row in enumerate(diff) if row[j]}
                for j in range(f.dom.dim)]
        q, qmatrix = linalg.cokernel_quotient(cols, f.cod.dim)
        quot = VectObj(q)
        return quot, vect_mor(f.cod, quot, qmatrix)

    # -- extras ---------------------------------------------------------

    def is_isomorphic(self, a, b):
        return a.dim == b.dim

    def verify_iso(self, w, a, b):
        return (w.dom == a and w.cod == b and a.dim == b.dim
                and linalg.is_invertible(w.rows()))

    def solve_witnesses(self, pairs, squares, rng=None, trials=60):
        """Solve the linear conjugation system and hunt for invertible points."""
        for a, b in pairs:
            if a.dim != b.dim:
                return None
        offsets = []
        total = 0
        for a, b in pairs:
            offsets.append(total)
            total += b.dim * a.dim

        def w_entry(k, i, j):
            a, _ = pairs[k]
            return offsets[k] + i * a.dim + j

        rows = []
        for (u, v, tm, hm) in squares:
            au, bu = pairs[u]
            av, bv = pairs[v]
            tmat = tm.rows()
            hmat = hm.rows()
            # w_v . tm == hm . w_u, entrywise (bv.dim x au.dim)
            for i in range(bv.dim):
                for j in range(au.dim):
                    row = {}
                    for t in range(av.dim):
                        if tmat[t][j]:
                            c = row.get(w_entry(v, i, t), Fraction(0)) + tmat[t][j]
                            row[w_entry(v, i, t)] = c
                    for t in range(bu.dim):
                        if hmat[i][t]:
                            key = w_entry(u, t, j)
                            c = row.get(key, Fraction(0)) - hmat[i][t]
                            row[key] = c
                    row = {k: v2 for k, v2 in row.items() if v2 != 0}
                    if row:
                        rows.append(row)
        basis = linalg.kernel_basis(rows, total)
        if not basis:
            return None

        rng = rng or random.Random(0)

        def materialize(vec):
            ws = []
            for k, (a, b) in enumerate(pairs):
                rows_k = [[vec[w_entry(k, i, j)] for j in range(a.dim)]
                          for i in range(b.dim)]
                ws.append(rows_k)
            return ws

        def invertible(ws):
            return all(linalg.is_invertible(m) for m in ws)

        candidates = list(basis)
        sums = [Fraction(0)] * total
        for b_ in basis:
            sums = [x + y for x, y in zip(sums, b_)]
        candidates.append(sums)
        for _ in range(trials):
            coeffs = [Fraction(rng.randint(-5, 5)) for _ in basis]
            vec = [Fraction(0)] * total
            for c, b_ in zip(coeffs, basis):
                if c:
                    vec = [x + c * y for x, y in zip(vec, b_)]
            candidates.append(vec)
        for vec in candidates:
            ws = materialize(vec)
            if invertible(ws):
                return [vect_mor(a, b, m)
                        for (a, b), m in zip(pairs, ws)]
        return None

    def image(self, m):
        # column-space basis: first maximal independent set of columns
        cols = [list(col) for col in zip(*m.mat)] if m.mat else []
        col_sparse = [{i: c for i, c in enumerate(col) if c} for col in cols]
        chosen = []
        current_rank = 0
        for j, col in enumerate(col_sparse):
            trial = chosen + [col]
            if linalg.rank(trial, m.cod.dim) > current_rank:
                chosen.append(col)
                current_rank += 1
        img = VectObj(current_rank)
        mono_rows = [[dict_col.get(i, Fraction(0)) for dict_col in chosen]
                     for i in range(m.cod.dim)]
        mono = vect_mor(img, m.cod, mono_rows)
        # factor: solve mono . factor = m column by column
        sparse_mono = linalg.to_sparse(mono_rows)
        factor_cols = []
        for j in range(m.dom.dim):
            rhs = [m.mat[i][j] for i in range(m.cod.dim)]
            sol = linalg.solve_particular(sparse_mono, current_rank, rhs)
            factor_cols.append(sol)
        factor_rows = [[factor_cols[j][i] for j in range(m.dom.dim)]
                       for i in range(current_rank)]
        factor = vect_mor(m.dom, img, factor_rows)
        return img, mono, factor
