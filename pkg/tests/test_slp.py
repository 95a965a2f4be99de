import pathlib
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from catc.errors import ParseError, UseBeforeDefinition
from catc.slp import (
    check_formula,
    circuit_polynomials,
    eval_circuit,
    mono_truth_table,
    parse_mono,
    parse_slp,
    print_slp,
)

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def test_x2yz_parses_and_is_a_formula():
    c = parse_slp((CORPUS / "x2yz.slp").read_text())
    assert c.size() == 6
    assert check_formula(c)  # fan-out counts distinct consumers


def test_gate_reuse_breaks_formula():
    c = parse_slp(
        "g1 = input x\n"
        "g2 = input y\n"
        "g3 = add g1 g2\n"
        "g4 = mul g3 g1\n"
        "g5 = add g3 g4\n"  # g3 feeds two distinct gates
        "output g5\n")
    assert not check_formula(c)


def test_use_before_definition():
    with pytest.raises(UseBeforeDefinition):
        parse_slp("g1 = add g1 g1\noutput g1\n")


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_slp("g1 = frob x\noutput g1\n")
    with pytest.raises(ParseError):
        parse_slp("g1 = input x\n")  # missing output
    with pytest.raises(ParseError):
        parse_slp("g1 = const 1.5\noutput g1\n")
    with pytest.raises(ParseError):
        parse_mono("g1 = const 2\noutput g1\n")


def test_print_round_trip():
    text = (CORPUS / "x2yz.slp").read_text()
    c = parse_slp(text)
    assert parse_slp(print_slp(c)) == c


def test_eval_matches_recursive_expansion_oracle():
    rng = random.Random(7)
    for name in ("x2yz.slp", "sum.slp", "product.slp"):
        c = parse_slp((CORPUS / name).read_text())
        names = c.input_names()
        polys = circuit_polynomials(c, tuple(names))
        for _ in range(20):
            pt = {n: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                  for n in names}
            vals = eval_circuit(c, pt)
            vec = [pt[n] for n in names]
            for g in c.gates:
                assert vals[g.gid] == polys[g.gid].eval(vec)


def test_monotone_truth_table():
    c = parse_mono((CORPUS / "majority3.mono").read_text())
    tt = mono_truth_table(c, 3)[c.outputs[0]]
    # majority points of {0,1}^3: indices 3, 5, 6, 7
    assert tt == (1 << 3) | (1 << 5) | (1 << 6) | (1 << 7)


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet="g123=inputconstaddmul xyz/-\n ", max_size=100))
def test_fuzzed_slps_never_crash(text):
    try:
        parse_slp(text)
    except ParseError:
        pass
