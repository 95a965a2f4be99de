"""Seeded random circuit/formula generators for the verification corpus."""

from __future__ import annotations

import random
from fractions import Fraction

from .slp import Circuit, Gate


def random_slp(seed, n_vars=5, n_gates=25):
    """Random straight-line program; inputs first, single output (last gate)."""
    rng = random.Random(seed)
    n_vars = rng.randint(1, n_vars)
    gates = [Gate(f"g{i + 1}", "input", (f"x{i + 1}",)) for i in range(n_vars)]
    total = rng.randint(n_vars + 1, max(n_vars + 1, n_gates))
    while len(gates) < total:
        gid = f"g{len(gates) + 1}"
        roll = rng.random()
        if roll < 0.15:
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            gates.append(Gate(gid, "const", (c,)))
        else:
            op = "add" if roll < 0.6 else "mul"
            a = rng.choice(gates).gid
            b = rng.choice(gates).gid
            gates.append(Gate(gid, op, (a, b)))
    return Circuit(tuple(gates), (gates[-1].gid,))


def random_formula(seed, n_vars=4, max_gates=15):
    """Random formula: a binary tree serialized as an SLP with fan-out 1."""
    rng = random.Random(seed)
    n_vars = rng.randint(1, n_vars)
    gates = []

    def leaf():
        gid = f"g{len(gates) + 1}"
        if rng.random() < 0.8:
            gates.append(Gate(gid, "input", (f"x{rng.randint(1, n_vars)}",)))
        else:
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            if c == 0:
                c = Fraction(1)
            gates.append(Gate(gid, "const", (c,)))
        return gid

    def build(budget):
        if budget <= 1 or rng.random() < 0.3:
            return leaf()
        left = build((budget - 1) // 2)
        right = build((budget - 1) // 2)
        gid = f"g{len(gates) + 1}"
        op = "add" if rng.random() < 0.5 else "mul"
        gates.append(Gate(gid, op, (left, right)))
        return gid

    out = build(rng.randint(3, max_gates))
    return Circuit(tuple(gates), (out,))


def random_monotone(seed, n=8, n_gates=12):
    """Random single-output monotone circuit over n variables."""
    rng = random.Random(seed)
    n = rng.randint(1, n)
    gates = [Gate(f"g{i + 1}", "input", (f"x{i + 1}",)) for i in range(n)]
    total = n + rng.randint(1, n_gates)
    while len(gates) < total:
        gid = f"g{len(gates) + 1}"
        op = "and" if rng.random() < 0.5 else "or"
        a = rng.choice(gates).gid
        b = rng.choice(gates).gid
        gates.append(Gate(gid, op, (a, b)))
    return Circuit(tuple(gates), (gates[-1].gid,))
