"""Straight-line-program circuit files and monotone circuit files.

Grammar (one instruction per line, `#` comments allowed)::

    g<k> = input <name>
    g<k> = const <p/q>
    g<k> = add g<i> g<j>       (mul likewise)
    output g<k>[, g<j> ...]

Monotone circuits use `and`/`or` in place of `add`/`mul` and no `const`.
A formula is a circuit where every non-output gate feeds at most one other
gate (fan-out counted as distinct consumers).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UseBeforeDefinition

ARITH_OPS = ("input", "const", "add", "mul")
MONO_OPS = ("input", "and", "or")


@dataclass(frozen=True)
class Gate:
    gid: str
    op: str
    args: tuple


@dataclass(frozen=True)
class Circuit:
    gates: tuple
    outputs: tuple

    def size(self):
        return len(self.gates)

    def gate(self, gid):
        return next(g for g in self.gates if g.gid == gid)

    def input_names(self):
        return [g.args[0] for g in self.gates if g.op == "input"]


_GATE_LINE = re.compile(r"^(g\w+)\s*=\s*(\w+)\s*(.*)$")
_OUT_LINE = re.compile(r"^output\s+(.*)$")
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def _strip(line):
    if "#" in line:
        line = line[:line.index("#")]
    return line.strip()


def _parse(text, ops):
    gates = []
    seen = {}
    outputs = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if outputs is not None:
            raise ParseError("content after the output line", line=lineno)
        m = _OUT_LINE.match(line)
        if m:
            names = [t.strip() for t in m.group(1).split(",") if t.strip()]
            if not names:
                raise ParseError("empty output list", line=lineno)
            for n in names:
                if n not in seen:
                    raise UseBeforeDefinition(f"output gate {n!r} undefined",
                                              line=lineno)
            outputs = tuple(names)
            continue
        m = _GATE_LINE.match(line)
        if not m:
            raise ParseError(f"cannot parse {line!r}", line=lineno)
        gid, op, rest = m.groups()
        if gid in seen:
            raise ParseError(f"gate {gid!r} redefined", line=lineno)
        if op not in ops:
            raise ParseError(f"unknown op {op!r}", line=lineno)
        if op == "input":
            name = rest.strip()
            if not re.fullmatch(r"\w+", name or ""):
                raise ParseError("input needs a variable name", line=lineno)
            args = (name,)
        elif op == "const":
            val = rest.strip()
            if not _RATIONAL.match(val):
                raise ParseError(f"bad constant {val!r}", line=lineno)
            args = (Fraction(val),)
        else:
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError(f"{op} takes two gate arguments", line=lineno)
            for p in parts:
                if p not in seen:
                    raise UseBeforeDefinition(f"gate {p!r} used before definition",
                                              line=lineno)
            args = tuple(parts)
        seen[gid] = True
        gates.append(Gate(gid, op, args))
    if outputs is None:
        raise ParseError("missing output line")
    return Circuit(tuple(gates), outputs)


def parse_slp(text):
    return _parse(text, ARITH_OPS)


def parse_mono(text):
    return _parse(text, MONO_OPS)


def print_slp(circuit):
    lines = []
    for g in circuit.gates:
        if g.op == "input":
            lines.append(f"{g.gid} = input {g.args[0]}")
        elif g.op == "const":
            lines.append(f"{g.gid} = const {g.args[0]}")
        else:
            lines.append(f"{g.gid} = {g.op} {g.args[0]} {g.args[1]}")
    lines.append("output " + ", ".join(circuit.outputs))
    return "\n".join(lines) + "\n"


def check_formula(circuit):
    """True iff every non-output gate feeds at most one distinct gate."""
    consumers = {g.gid: set() for g in circuit.gates}
    for g in circuit.gates:
        if g.op in ("add", "mul", "and", "or"):
            for a in g.args:
                consumers[a].add(g.gid)
    outs = set(circuit.outputs)
    return all(len(c) <= 1 for gid, c in consumers.items() if gid not in outs)


def eval_circuit(circuit, assignment):
    """Exact evaluation; assignment maps input names to rationals."""
    values = {}
    for g in circuit.gates:
        if g.op == "input":
            values[g.gid] = Fraction(assignment[g.args[0]])
        elif g.op == "const":
            values[g.gid] = g.args[0]
        elif g.op == "add":
            values[g.gid] = values[g.args[0]] + values[g.args[1]]
        else:
            values[g.gid] = values[g.args[0]] * values[g.args[1]]
    return values


def circuit_polynomials(circuit, variables):
    """Expand every gate into a SparsePoly over the given variable names."""
    from .polynomials import SparsePoly

    index = {v: i for i, v in enumerate(variables)}
    polys = {}
    for g in circuit.gates:
        if g.op == "input":
            polys[g.gid] = SparsePoly.var(variables, index[g.args[0]])
        elif g.op == "const":
            polys[g.gid] = SparsePoly.const(variables, g.args[0])
        elif g.op == "add":
            polys[g.gid] = polys[g.args[0]] + polys[g.args[1]]
        else:
            polys[g.gid] = polys[g.args[0]] * polys[g.args[1]]
    return polys


def mono_input_index(name):
    """Variable index of a monotone input token like `x3` or `z3` (1-based)."""
    m = re.fullmatch(r"[A-Za-z_]*?(\d+)", name)
    if not m:
        raise ParseError(f"monotone input {name!r} carries no index")
    return int(m.group(1))


def mono_truth_table(circuit, n):
    """Bitset over the 2^n points for each gate; independent bitwise oracle."""
    full = (1 << (1 << n)) - 1
    tables = {}
    for g in circuit.gates:
        if g.op == "input":
            i = mono_input_index(g.args[0])
            bits = 0
            for p in range(1 << n):
                if p >> (i - 1) & 1:
                    bits |= 1 << p
            tables[g.gid] = bits
        elif g.op == "and":
            tables[g.gid] = tables[g.args[0]] & tables[g.args[1]]
        else:
            tables[g.gid] = tables[g.args[0]] | tables[g.args[1]]
        tables[g.gid] &= full
    return tables
