from fractions import Fraction

import pytest

from catc.categories.affine import (
    AffVar,
    Presentation,
    affvar_limit_presentation,
    complete_point,
    coord_vars,
    free_presentation,
    presentation_json,
    presentation_membership,
)
from catc.categories.base import MorphName
from catc.engine import BasicStep, Computation, limit_via_equalizer, replay
from catc.errors import DimensionMismatch, UnknownBasicMorphism
from catc.graphs import full_subdiagram
from catc.polynomials import SparsePoly, parse_poly
from catc.script import parse_script

CAT = AffVar()

# the worked limit script for x^2 + y*z (pair vertices with a doubled
# projection realize the squaring)
X2YZ_SCRIPT = """!limit
1. _,pi1,1'
2. 1,pi2,1'
3. 1,mul,3'
4. _,pi1,4'
5. 4,pi2,5'
6. 4,mul,6'
7. _,pi1,3'
8. 7,pi2,6'
9. 7,add,9'
10. lim(1,1',3',4,4',5',6',7,9')
"""


def test_basic_morphisms_resolve():
    for name, args in [("const_endo", ("2",)), ("add", ()), ("mul", ()),
                       ("pi1", ()), ("pi2", ()), ("to_point", ()),
                       ("point", ("1/3",))]:
        CAT.resolve_basic(MorphName(name, args))
    with pytest.raises(UnknownBasicMorphism):
        CAT.resolve_basic(MorphName("frob"))


def test_presentation_degree_cap():
    vs = coord_vars(1)
    cubic = SparsePoly.var(vs, 0) * SparsePoly.var(vs, 0) * SparsePoly.var(vs, 0)
    with pytest.raises(ValueError):
        Presentation(1, (cubic,))


def test_single_vertex_presentation():
    comp = parse_script("!limit\n1. _,const_endo(1),1\n")
    r = replay(comp, CAT)
    sub = full_subdiagram(r.diagram, ("1",))
    pres, cone = affvar_limit_presentation(sub)
    assert pres.m == 1
    assert pres.equations == ()


def test_linear_edge_membership():
    comp = parse_script("!limit\n1. _,const_endo(2),_\n")
    r = replay(comp, CAT)
    sub = full_subdiagram(r.diagram, ("1", "1'"))
    pres, cone = affvar_limit_presentation(sub)
    assert pres.m == 2 and len(pres.equations) == 1
    assert presentation_membership(pres, [3, 6])
    assert not presentation_membership(pres, [3, 5])


def test_empty_equations_always_member():
    pres = free_presentation(2)
    assert presentation_membership(pres, [5, 7])
    with pytest.raises(DimensionMismatch):
        presentation_membership(pres, [1])


def test_x2yz_script_presentation():
    comp = parse_script(X2YZ_SCRIPT)
    r = replay(comp, CAT)
    d = r.diagram
    # the apex presents the graph variety: three A^2 blocks and six lines
    # give 12 coordinates, one equation per edge
    assert d.obj_of["10"].m == 12
    assert len(d.obj_of["10"].equations) == 9

    basics = full_subdiagram(d, comp.steps[-1].over)
    pres, cone = affvar_limit_presentation(basics)
    # inputs: x at 1', y at 4', z at 5'; output x^2 + y*z at 9'
    coords = {role: i for i, role in enumerate(pres.roles)}
    for (x, y, z) in [(1, 1, -1), (1, 1, 1), (2, 3, -5), (0, 0, 0)]:
        partial = {coords[("1'", 0)]: x, coords[("4'", 0)]: y,
                   coords[("5'", 0)]: z}
        full = complete_point(pres, partial)
        assert presentation_membership(pres, full)
        f = Fraction(x) ** 2 + Fraction(y) * Fraction(z)
        assert full[coords[("9'", 0)]] == f
        # pinning the output slot to zero makes membership the zero-set test
        pinned = list(full)
        pinned[coords[("9'", 0)]] = Fraction(0)
        assert presentation_membership(pres, pinned) == (f == 0)


def test_engine_limit_apex_matches_direct_presentation():
    comp = parse_script(X2YZ_SCRIPT)
    r = replay(comp, CAT)
    basics = full_subdiagram(r.diagram, comp.steps[-1].over)
    pres, _ = affvar_limit_presentation(basics)
    apex = r.diagram.obj_of["10"]
    assert apex.m == pres.m
    assert set(apex.equations) == set(pres.equations)


def test_presentation_json_shape():
    comp = parse_script(X2YZ_SCRIPT)
    r = replay(comp, CAT)
    basics = full_subdiagram(r.diagram, comp.steps[-1].over)
    pres, _ = affvar_limit_presentation(basics)
    js = presentation_json(pres)
    assert js["m1"] == pres.m
    assert len(js["equations"]) == len(pres.equations)
    assert len(js["coordRoles"]) == pres.m
