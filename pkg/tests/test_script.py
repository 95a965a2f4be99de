import pathlib

import pytest
from hypothesis import given, settings, strategies as st

from catc.engine import BasicStep, ColimStep, Existing, Fresh, LimStep, SameAsSource
from catc.errors import ParseError, RedefinedIdentifier, UnknownIdentifier
from catc.script import parse_script, print_script

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def test_ex_set_parses_to_colimit_computation():
    text = "!colimit\n1. _,id1,1\n2. _,id1,2\n3. _,id1,3\n4. colim(1,2,3)\n"
    c = parse_script(text)
    assert c.kind == "colimit"
    assert len(c.steps) == 4
    assert isinstance(c.steps[0], BasicStep)
    assert isinstance(c.steps[0].tgt, SameAsSource)
    assert isinstance(c.steps[3], ColimStep)
    assert c.steps[3].over == ("1", "2", "3")


def test_kvect_script_has_sixteen_steps():
    text = (CORPUS / "kvect1.catc").read_text()
    c = parse_script(text)
    assert c.kind == "limit"
    assert len(c.steps) == 16
    assert isinstance(c.steps[15], LimStep)


def test_empty_lim_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_script("!limit\n5. lim()\n")


def test_kind_violations_rejected():
    with pytest.raises(ParseError):
        parse_script("!limit\n1. _,id1,1\n2. colim(1)\n")
    with pytest.raises(ParseError):
        parse_script("!colimit\n1. _,id1,1\n2. lim(1)\n")


def test_unknown_and_redefined_identifiers():
    with pytest.raises(UnknownIdentifier):
        parse_script("!limit\n1. zz,id1,_\n")
    with pytest.raises(RedefinedIdentifier):
        parse_script("!colimit\n1. _,id1,1\n1. _,id1,1\n")


def test_missing_header():
    with pytest.raises(ParseError):
        parse_script("1. _,id1,1\n")
    with pytest.raises(ParseError):
        parse_script("")


def test_self_loop_requires_fresh_source():
    with pytest.raises(ParseError):
        parse_script("!colimit\n1. _,id1,1\n2. 1,id1,2\n")


def test_primed_reference_binds_only_fresh_targets():
    c = parse_script("!limit\n1. _,scale(2),_\n2. 1',scale(3),_\n")
    assert c.steps[1].src == Existing("1'")


def test_round_trip_fixpoint_on_corpus():
    for path in sorted(CORPUS.glob("*.catc")):
        text = path.read_text()
        c = parse_script(text)
        printed = print_script(c)
        assert parse_script(printed) == c
        assert print_script(parse_script(printed)) == printed


def test_empty_computation_prints_header_only():
    from catc.engine import Computation

    assert print_script(Computation("limit", ())) == "!limit\n"


def test_target_directive():
    c = parse_script("!limit\n1. _,scale(1),1\n2. lim(1)\n!target 2,1\n")
    assert c.target == ("2", "1")
    with pytest.raises(UnknownIdentifier):
        parse_script("!limit\n1. _,scale(1),1\n!target zz\n")


def test_comments_and_blanks():
    c = parse_script("!colimit\n\n# a comment\n1. _,id1,1  # loop\n")
    assert len(c.steps) == 1


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet="!lim.co()_,'123abz# \n", max_size=80))
def test_fuzzed_scripts_never_crash(text):
    try:
        parse_script(text)
    except ParseError:
        pass
