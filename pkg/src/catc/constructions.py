"""Canonical computations used across the tests, the corpus, and the CLI.

These are programmatic builders for the worked examples: n-copies-plus-
colimit sets, the three-element set morphism, the 16-step vector script,
the non-constructive blow-up family, the alternating squaring family, and
the two subspace-arrangement families with their pinned costs.
"""

from __future__ import annotations

from fractions import Fraction

from .categories.base import MorphName
from .categories.vect import VectQ, VectObj, vect_mor
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
    fresh_target_name,
)
from .graphs import Diagram, DirectedGraph, Edge


def set_copies(n):
    """n singleton self-loops and one colimit: a set of cardinality n."""
    steps = [BasicStep(str(k), Fresh(), MorphName("id1"), SameAsSource())
             for k in range(1, n + 1)]
    steps.append(ColimStep(str(n + 1), tuple(str(k) for k in range(1, n + 1))))
    return Computation(COLIMIT, tuple(steps))


def set_morphism_example():
    """The colimit computation of the map {0,1,2} -> {0,1,2}, 0,1 -> 0, 2 -> 1."""
    id1 = MorphName("id1")
    steps = (
        BasicStep("1", Fresh(), id1, SameAsSource()),
        BasicStep("2", Fresh(), id1, SameAsSource()),
        BasicStep("3", Fresh(), id1, SameAsSource()),
        BasicStep("4", Fresh(), id1, Existing("1")),
        BasicStep("5", Existing("4"), id1, Existing("2")),
        ColimStep("6", ("1", "2", "3")),
        BasicStep("7", Fresh(), id1, SameAsSource()),
        ColimStep("8", ("1", "2", "3", "4", "6", "7")),
    )
    return Computation(COLIMIT, steps, target=("6", "8"))


def kvect1():
    """The 16-step limit computation of (x,y,z) -> 2x+2y+3z."""
    steps = (
        BasicStep("1", Fresh(), MorphName("scale", ("1",)), SameAsSource()),
        BasicStep("2", Fresh(), MorphName("scale", ("1",)), SameAsSource()),
        BasicStep("3", Fresh(), MorphName("scale", ("1",)), SameAsSource()),
        BasicStep("4", Fresh(), MorphName("pi1"), Existing("1")),
        BasicStep("5", Existing("4"), MorphName("pi2"), Existing("2")),
        BasicStep("6", Existing("4"), MorphName("add"), Fresh()),
        BasicStep("7", Existing("6'"), MorphName("scale", ("2",)), Fresh()),
        BasicStep("8", Existing("3"), MorphName("scale", ("3",)), Fresh()),
        BasicStep("9", Fresh(), MorphName("pi2"), Existing("8'")),
        BasicStep("10", Existing("9"), MorphName("pi1"), Existing("7'")),
        BasicStep("11", Existing("9"), MorphName("add"), Fresh()),
        BasicStep("12", Fresh(), MorphName("pi1"), Existing("2")),
        BasicStep("13", Existing("12"), MorphName("pi2"), Existing("3")),
        BasicStep("14", Existing("12"), MorphName("add"), Fresh()),
        LimStep("15", ("11'", "14'")),
        LimStep("16", ("1", "2", "3", "4", "6'", "7'", "8'", "9", "11'",
                       "12", "14'", "15")),
    )
    return Computation(LIMIT, steps, target=("16", "11'"))


def f223_target():
    """A freestanding small computation of the morphism [2 2 3] : Q^3 -> Q."""
    steps = (
        BasicStep("1", Fresh(), MorphName("scale", ("1",)), SameAsSource()),
        BasicStep("2", Fresh(), MorphName("scale", ("1",)), SameAsSource()),
        BasicStep("3", Fresh(), MorphName("scale", ("1",)), SameAsSource()),
        BasicStep("4", Fresh(), MorphName("pi1"), Existing("1")),
        BasicStep("5", Existing("4"), MorphName("pi2"), Existing("2")),
        BasicStep("6", Existing("4"), MorphName("add"), Fresh()),
        BasicStep("7", Existing("6'"), MorphName("scale", ("2",)), Fresh()),
        BasicStep("8", Existing("3"), MorphName("scale", ("3",)), Fresh()),
        BasicStep("9", Fresh(), MorphName("pi1"), Existing("7'")),
        BasicStep("10", Existing("9"), MorphName("pi2"), Existing("8'")),
        BasicStep("11", Existing("9"), MorphName("add"), Fresh()),
        LimStep("12", ("1", "2", "3", "4", "6'", "7'", "8'", "9", "11'")),
    )
    return Computation(LIMIT, steps, target=("12", "11'"))


def nonconstructive_example(a):
    """a coproduct copies of a two-point set, then one a-fold product.

    The final step reuses the copy apexes without their generating
    vertices {1, 2}, so the constructivity report names exactly that step;
    the unconstrained replay reaches cardinality 2^a in a + 3 steps.
    """
    id1 = MorphName("id1")
    steps = [BasicStep("1", Fresh(), id1, SameAsSource()),
             BasicStep("2", Fresh(), id1, SameAsSource())]
    for k in range(3, a + 3):
        steps.append(ColimStep(str(k), ("1", "2")))
    steps.append(LimStep(str(a + 3), tuple(str(k) for k in range(3, a + 3))))
    return Computation(MIXED, tuple(steps))


def alternating_squaring(k):
    """Mixed computation squaring set size by alternating coproduct/product.

    Depth d apexes have cardinality 2^(2^d): coproducts of copies square at
    even depths, products of copies square at odd depths, with just enough
    duplicate apexes at each level to feed the next.
    """
    if not 0 <= k <= 3:
        raise ValueError("alternating squaring is built for depths 0..3")
    id1 = MorphName("id1")
    steps = [BasicStep("b1", Fresh(), id1, SameAsSource()),
             BasicStep("b2", Fresh(), id1, SameAsSource())]
    sizes = [2 ** (2 ** d) for d in range(k + 1)]
    level = ["b1", "b2"]  # vertices holding copies feeding the next level
    counter = [0]
    depth_apex = []

    def sid():
        counter[0] += 1
        return f"v{counter[0]}"

    for d in range(k + 1):
        if d == k:
            copies = 1
        elif d + 1 <= k and (d + 1) % 2 == 1:
            copies = 2  # next level is a product of two copies
        else:
            copies = sizes[d]  # next level is a coproduct of size-many copies
        fresh = []
        for _ in range(copies):
            s = sid()
            if d % 2 == 0:
                steps.append(ColimStep(s, tuple(level)))
            else:
                steps.append(LimStep(s, tuple(level)))
            fresh.append(s)
        depth_apex.append(fresh[0])
        level = fresh
    return Computation(MIXED, tuple(steps)), depth_apex, sizes


def majority3_monotone():
    from .slp import parse_mono

    return parse_mono(
        "g1 = input x1\n"
        "g2 = input x2\n"
        "g3 = input x3\n"
        "g4 = and g1 g2\n"
        "g5 = and g1 g3\n"
        "g6 = and g2 g3\n"
        "g7 = or g4 g5\n"
        "g8 = or g7 g6\n"
        "output g8\n")


# -- subspace arrangement computations --------------------------------------


def _scalar(i, j, salt):
    # small nonzero rationals, deterministic in the indices
    return Fraction(1 + (i + 2 * j + salt) % 5, 1 + (i + j + salt) % 3)


def _pairs_generic(n):
    """n^2 distinct coordinate pairs from the 2n ambient lines."""
    pairs = []
    for a in range(1, 2 * n + 1):
        for b in range(a + 1, 2 * n + 1):
            pairs.append((a, b))
    return pairs[: n * n]


def subspace_generic(n):
    """Colimit computation of n^2 planes in Q^{2n}, pinned cost 4n^3+n^2+1.

    Each plane j is the span of two lines; each line carries 2n scalar
    edges (one ties it to a shared ambient line, the rest record its
    remaining components into private sinks), each plane is the coproduct
    of its two lines, and one final colimit assembles the ambient space.
    """
    pairs = _pairs_generic(n)
    steps = []
    shared = {}  # ambient line index -> vertex id
    plane_vertices = []
    counter = [0]

    def sid():
        counter[0] += 1
        return f"v{counter[0]}"

    def line(j, anchor, salt):
        """A line vertex with 2n scalar edges; edge `anchor` hits the shared line."""
        line_v = None
        for i in range(1, 2 * n + 1):
            c = str(_scalar(i, j, salt))
            s = sid()
            if i == anchor and anchor in shared:
                tgt = Existing(shared[anchor])
            else:
                tgt = Fresh()
            src = Fresh() if line_v is None else Existing(line_v)
            steps.append(BasicStep(s, src, MorphName("scale", (c,)), tgt))
            if line_v is None:
                line_v = s
            if i == anchor and anchor not in shared:
                shared[anchor] = fresh_target_name(s)
        return line_v

    for j, (a, b) in enumerate(pairs):
        la = line(j, a, salt=1)
        lb = line(j, b, salt=2)
        s = sid()
        steps.append(ColimStep(s, (la, lb)))
        plane_vertices.append(s)
    vertices = _all_vertices(steps)
    final = sid()
    steps.append(ColimStep(final, tuple(vertices)))
    comp = Computation(COLIMIT, tuple(steps),
                       target=tuple(plane_vertices) + (final,))
    meta = {"planes": plane_vertices, "apex": final, "pairs": pairs,
            "dim": 2 * n}
    return comp, meta


def subspace_special(n):
    """The special-position family L_i' + L_j'', pinned cost 3n^2+1.

    2n line vertices, one recorded component per (line, plane) incidence
    (n^2 + n^2 scalar edges into private sinks), the n^2 coproducts
    S_ij = L_i' + L_j'', and one final colimit.
    """
    steps = []
    counter = [0]

    def sid():
        counter[0] += 1
        return f"v{counter[0]}"

    lines1, lines2 = [], []
    for i in range(1, n + 1):
        s = sid()
        steps.append(BasicStep(s, Fresh(),
                               MorphName("scale", (str(_scalar(i, 0, 3)),)),
                               Fresh()))
        lines1.append(s)
        s = sid()
        steps.append(BasicStep(s, Fresh(),
                               MorphName("scale", (str(_scalar(i, 0, 4)),)),
                               Fresh()))
        lines2.append(s)
    # remaining n-1 recorded components per line, into private sinks
    for group, salt in ((lines1, 5), (lines2, 6)):
        for j, lv in enumerate(group):
            for i in range(2, n + 1):
                s = sid()
                steps.append(BasicStep(
                    s, Existing(lv),
                    MorphName("scale", (str(_scalar(i, j, salt)),)), Fresh()))
    plane_vertices = []
    pairs = []
    for i in range(n):
        for j in range(n):
            s = sid()
            steps.append(ColimStep(s, (lines1[i], lines2[j])))
            plane_vertices.append(s)
            pairs.append((i + 1, n + j + 1))
    vertices = _all_vertices(steps)
    final = sid()
    steps.append(ColimStep(final, tuple(vertices)))
    comp = Computation(COLIMIT, tuple(steps),
                       target=tuple(plane_vertices) + (final,))
    meta = {"planes": plane_vertices, "apex": final, "pairs": pairs,
            "dim": 2 * n}
    return comp, meta


def _all_vertices(steps):
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


def subspace_target_diagram(meta):
    """The n^2-planes-into-V diagram the replay is expected to contain.

    Written in standard coordinates, independently of the replay: plane
    number j includes along the coordinate pair meta["pairs"][j], i.e. its
    matrix columns are the two unit vectors of that pair.  Per-vertex
    isomorphism witnesses absorb the basis and scale choices the colimit
    machinery makes on the host side.
    """
    dim = meta["dim"]
    v_obj = VectObj(dim)
    plane_obj = VectObj(2)
    vertices = [("V", v_obj)]
    edges = []
    for idx, (a, b) in enumerate(meta["pairs"]):
        name = f"S{idx + 1}"
        vertices.append((name, plane_obj))
        rows = [[Fraction(1) if (i == a - 1 and c == 0)
                 or (i == b - 1 and c == 1) else Fraction(0)
                 for c in range(2)] for i in range(dim)]
        edges.append((Edge(f"phi{idx + 1}", name, "V"),
                      vect_mor(plane_obj, v_obj, rows)))
    g = DirectedGraph(tuple(v for v, _ in vertices),
                      tuple(e for e, _ in edges))
    return Diagram(g, dict(vertices), {e.eid: m for e, m in edges})
