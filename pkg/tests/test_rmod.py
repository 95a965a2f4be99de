from fractions import Fraction

import pytest

from catc.categories.base import MorphName
from catc.categories.rmod import (
    RMod,
    rmod_colimit_presentation,
    rmod_extract_cocone_polys,
)
from catc.engine import replay
from catc.errors import NoNontrivialSolution, RankAmbiguous, UnknownBasicMorphism
from catc.graphs import full_subdiagram
from catc.polynomials import SparsePoly, poly_to_text
from catc.script import parse_script

CAT = RMod(("x1", "x2"))


def _basic_diagram(script):
    comp = parse_script(script)
    r = replay(comp, CAT)
    return full_subdiagram(r.diagram, r.diagram.graph.vertices)


def test_basic_table():
    for name, args in [("xmul", ("1",)), ("cmul", ("5",)), ("inj1", ()),
                       ("inj2", ()), ("diag", ()), ("add", ()), ("tozero", ())]:
        CAT.resolve_basic(MorphName(name, args))
    with pytest.raises(UnknownBasicMorphism):
        CAT.resolve_basic(MorphName("xmul", ("3",)))


def test_two_isolated_r_presentation():
    d = _basic_diagram("!colimit\n1. _,cmul(1),1\n2. _,cmul(1),2\n")
    pres, slots = rmod_colimit_presentation(d, CAT)
    assert pres.gens == 2
    # self-loop columns 1 - 1 = 0 are dropped
    assert pres.relations == ()


def test_chain_cocone_presentation():
    d = _basic_diagram("!colimit\n1. _,xmul(1),_\n")
    pres, slots = rmod_colimit_presentation(d, CAT)
    assert pres.gens == 2
    assert len(pres.relations) == 1
    col = pres.relations[0]
    assert poly_to_text(col[0], CAT.vars) == "1"
    assert poly_to_text(col[1], CAT.vars) == "-x1"


def test_kill_generator():
    d = _basic_diagram("!colimit\n1. _,tozero,_\n2. _,cmul(1),2\n")
    pres, slots = rmod_colimit_presentation(d, CAT)
    assert pres.gens == 2
    assert len(pres.relations) == 1
    killed = pres.relations[0]
    nonzero = [i for i, e in enumerate(killed) if not e.is_zero]
    assert len(nonzero) == 1


def test_extract_single_vertex_is_one():
    d = _basic_diagram("!colimit\n1. _,cmul(1),1\n")
    polys = rmod_extract_cocone_polys(d, CAT)
    assert list(polys.values())[0] == SparsePoly.const(CAT.vars, 1)


def test_extract_chain_gives_variable():
    d = _basic_diagram("!colimit\n1. _,xmul(1),_\n")
    polys = rmod_extract_cocone_polys(d, CAT, output_slot=("1'", 0))
    assert poly_to_text(polys[("1", 0)], CAT.vars) == "x1"
    assert poly_to_text(polys[("1'", 0)], CAT.vars) == "1"


def test_extract_sum_diamond():
    # IN --diag--> L,  a' --inj1--> L, a'' --inj2--> L,
    # b' --inj1--> M, b'' --inj2--> M, M --add--> OUT,  a/b chains x1/x2
    script = (
        "!colimit\n"
        "1. _,diag,_\n"
        "2. _,xmul(1),_\n"
        "3. _,xmul(2),_\n"
        "4. 2,inj1,1'\n"
        "5. 3,inj2,1'\n"
        "6. 2',inj1,_\n"
        "7. 3',inj2,6'\n"
        "8. 6',add,_\n")
    d = _basic_diagram(script)
    polys = rmod_extract_cocone_polys(d, CAT, output_slot=("8'", 0))
    assert poly_to_text(polys[("1", 0)], CAT.vars) == "x1 + x2"
    assert poly_to_text(polys[("8'", 0)], CAT.vars) == "1"


def test_extract_rank_errors():
    # two isolated R's: kernel dimension 2
    d = _basic_diagram("!colimit\n1. _,cmul(1),1\n2. _,cmul(1),2\n")
    with pytest.raises(RankAmbiguous):
        rmod_extract_cocone_polys(d, CAT)
    # a single killed R: kernel dimension 0
    d2 = _basic_diagram("!colimit\n1. _,tozero,_\n")
    with pytest.raises(NoNontrivialSolution):
        rmod_extract_cocone_polys(d2, CAT)


def test_coequalizer_route_matches_direct_presentation():
    from catc.engine import colimit_via_coequalizer

    d = _basic_diagram("!colimit\n1. _,xmul(1),_\n2. _,diag,_\n")
    apex, cocone = colimit_via_coequalizer(d, CAT)
    pres, slots = rmod_colimit_presentation(d, CAT)
    assert apex.gens == pres.gens
    assert len(apex.relations) == len(pres.relations)
