"""Sparse multivariate polynomials and rational functions over Q.

Exponent vectors are tuples indexed by position in the variable context;
coefficients are exact fractions and zero coefficients are never stored.
The monomial order used for leading terms and serialization is graded
lexicographic (total degree first, then lex with the first variable largest).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import ParseError


def _gl_key(exps):
    return (sum(exps), exps)


class SparsePoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms):
        self.vars = tuple(variables)
        clean = {}
        for exps, c in terms.items():
            c = Fraction(c)
            if c != 0:
                if len(exps) != len(self.vars):
                    raise ValueError("exponent arity mismatch")
                clean[tuple(exps)] = c
        self.terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, value):
        value = Fraction(value)
        if value == 0:
            return cls.zero(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, variables, index, power=1):
        exps = [0] * len(variables)
        exps[index] = power
        return cls(variables, {tuple(exps): Fraction(1)})

    # -- basics ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        exps = max(self.terms, key=_gl_key)
        return exps, self.terms[exps]

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"SparsePoly({poly_to_text(self)!r})"

    # -- arithmetic -----------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("mixed variable contexts")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return SparsePoly(self.vars, terms)

    def __neg__(self):
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return SparsePoly(self.vars, terms)

    def scale(self, c):
        c = Fraction(c)
        return SparsePoly(self.vars, {e: k * c for e, k in self.terms.items()})

    def eval(self, point):
        if len(point) != len(self.vars):
            raise ValueError("point arity mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, images):
        """Substitute images[i] (polys in a common context) for variable i."""
        if len(images) != len(self.vars):
            raise ValueError("substitution arity mismatch")
        if images:
            ctx = images[0].vars
        else:
            ctx = ()
        out = SparsePoly.zero(ctx)
        for e, c in self.terms.items():
            term = SparsePoly.const(ctx, c)
            for img, k in zip(images, e):
                for _ in range(k):
                    term = term * img
            out = out + term
        return out

    def embed(self, new_vars, index_map):
        """Re-home into a wider context; index_map[i] is the new slot of var i."""
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in enumerate(e):
                if k:
                    ne[index_map[i]] += k
            terms[tuple(ne)] = terms.get(tuple(ne), Fraction(0)) + c
        return SparsePoly(new_vars, terms)


# -- normalization and content ------------------------------------------


def rational_content(p):
    """gcd of the coefficients of p as a positive fraction (0 for p = 0)."""
    if p.is_zero:
        return Fraction(0)
    num = 0
    den = 1
    for c in p.terms.values():
        num = math.gcd(num, abs(c.numerator))
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den)


def normalize_poly(p):
    """Integer-primitive scalar multiple with positive graded-lex lead."""
    if p.is_zero:
        return p
    c = rational_content(p)
    _, lead = p.leading()
    if lead < 0:
        c = -c
    return p.scale(1 / c)


def divide_exact(p, d):
    """Exact polynomial division; raises ValueError when d does not divide p."""
    if d.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q = SparsePoly.zero(p.vars)
    r = p
    de, dc = d.leading()
    while not r.is_zero:
        re, rc = r.leading()
        qe = tuple(a - b for a, b in zip(re, de))
        if any(k < 0 for k in qe):
            raise ValueError("inexact polynomial division")
        qt = SparsePoly(p.vars, {qe: rc / dc})
        q = q + qt
        r = r - qt * d
    return q


# -- gcd via subresultant PRS ---------------------------------------------


def _to_univar(p, idx):
    """View p as univariate in variable idx with SparsePoly coefficients."""
    sub_vars = p.vars[:idx] + p.vars[idx + 1:]
    coeffs = {}
    for e, c in p.terms.items():
        d = e[idx]
        rest = e[:idx] + e[idx + 1:]
        coeffs.setdefault(d, {})[rest] = c
    return {d: SparsePoly(sub_vars, t) for d, t in coeffs.items()}


def _from_univar(coeffs, variables, idx):
    terms = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            full = e[:idx] + (d,) + e[idx:]
            terms[full] = c
    return SparsePoly(variables, terms)


def _uni_deg(coeffs):
    return max(coeffs) if coeffs else -1


def _uni_scale(coeffs, poly):
    return {d: c * poly for d, c in coeffs.items() if not (c * poly).is_zero}


def _uni_sub(a, b):
    out = dict(a)
    for d, c in b.items():
        s = out.get(d)
        s = (-c) if s is None else (s - c)
        if s.is_zero:
            out.pop(d, None)
        else:
            out[d] = s
    return out


def _uni_shift_mul(coeffs, k, poly):
    return {d + k: c * poly for d, c in coeffs.items() if not (c * poly).is_zero}


def _pseudo_rem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.

    The full power of the leading coefficient is required even when
    intermediate leading terms cancel early, otherwise the subresultant
    divisions are not exact.
    """
    da, db = _uni_deg(a), _uni_deg(b)
    lc_b = b[db]
    r = dict(a)
    scalings = 0
    while r and _uni_deg(r) >= db:
        dr = _uni_deg(r)
        lc_r = r[dr]
        r = _uni_sub(_uni_scale(r, lc_b), _uni_shift_mul(b, dr - db, lc_r))
        scalings += 1
    missing = da - db + 1 - scalings
    for _ in range(max(missing, 0)):
        r = _uni_scale(r, lc_b)
    return r


def _uni_content(coeffs):
    g = None
    for c in coeffs.values():
        g = c if g is None else poly_gcd(g, c)
    return g


def _uni_divide(coeffs, poly):
    return {d: divide_exact(c, poly) for d, c in coeffs.items()}


def poly_gcd(p, q):
    """Normalized gcd over Q[vars]; gcd(0, 0) = 0 by convention.

    The result carries the gcd of the rational contents, so e.g.
    gcd(2x, 2) = 2, and is sign-normalized to a positive leading
    coefficient.
    """
    if p.vars != q.vars:
        raise ValueError("mixed variable contexts")
    if p.is_zero:
        return normalize_poly(q).scale(rational_content(q)) if not q.is_zero else q
    if q.is_zero:
        return normalize_poly(p).scale(rational_content(p))
    content = _frac_gcd(rational_content(p), rational_content(q))
    g = _gcd_primitive(normalize_poly(p), normalize_poly(q))
    return normalize_poly(g).scale(content)


def _frac_gcd(a, b):
    num = math.gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


def _gcd_primitive(p, q):
    if p.is_constant() or q.is_constant():
        return SparsePoly.const(p.vars, 1)
    # pick the last variable actually occurring in either polynomial
    idx = None
    for i in range(len(p.vars) - 1, -1, -1):
        if any(e[i] for e in p.terms) or any(e[i] for e in q.terms):
            idx = i
            break
    a = _to_univar(p, idx)
    b = _to_univar(q, idx)
    if _uni_deg(a) < _uni_deg(b):
        a, b = b, a
    if _uni_deg(b) == 0:
        # q is free of the main variable: gcd divides the content of a
        ca = _uni_content(a)
        inner = poly_gcd(ca, b[0])
        return inner.embed(p.vars, _embed_map(p.vars, idx))
    ca, cb = _uni_content(a), _uni_content(b)
    a = _uni_divide(a, ca)
    b = _uni_divide(b, cb)
    cont = poly_gcd(ca, cb)

    sub_vars = ca.vars
    one = SparsePoly.const(sub_vars, 1)
    g, h = one, one
    while True:
        delta = _uni_deg(a) - _uni_deg(b)
        r = _pseudo_rem(a, b)
        if not r:
            prim = _uni_divide(b, _uni_content(b))
            result = _restore(prim, p.vars, idx)
            return _restore_mul(result, cont, p.vars, idx)
        if _uni_deg(r) == 0:
            # coprime in the main variable
            return cont.embed(p.vars, _embed_map(p.vars, idx))
        divisor = g * _pow(h, delta)
        a, b = b, _uni_divide(r, divisor)
        g = a[_uni_deg(a)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = divide_exact(_pow(g, delta), _pow(h, delta - 1))


def _pow(p, k):
    out = SparsePoly.const(p.vars, 1)
    for _ in range(k):
        out = out * p
    return out


def _embed_map(variables, removed_idx):
    return [i for i in range(len(variables)) if i != removed_idx]


def _restore(coeffs, variables, idx):
    return _from_univar(coeffs, variables, idx)


def _restore_mul(poly, cont, variables, idx):
    return poly * cont.embed(variables, _embed_map(variables, idx))


def poly_lcm(p, q):
    if p.is_zero or q.is_zero:
        return SparsePoly.zero(p.vars)
    return normalize_poly(divide_exact(p * q, poly_gcd(p, q)))


# -- rational functions -----------------------------------------------------


class RatFunc:
    """Reduced fraction of sparse polynomials; denominator lead positive."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = SparsePoly.const(num.vars, 1)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = SparsePoly.const(num.vars, 1)
        else:
            g = poly_gcd(num, den)
            num = divide_exact(num, g)
            den = divide_exact(den, g)
            _, lead = den.leading()
            if lead < 0:
                num = num.scale(-1)
                den = den.scale(-1)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @property
    def is_zero(self):
        return self.num.is_zero

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __repr__(self):
        return f"RatFunc({poly_to_text(self.num)!r}, {poly_to_text(self.den)!r})"


# -- text format -------------------------------------------------------------
#
# `3*x1^2*x2 - 1/2*x3 + 4` : explicit `*`, `^` powers, rationals as p/q.

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"bad character {text[pos]!r} in polynomial", col=pos)
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


def parse_poly(text, variables):
    """Parse the textual polynomial format over the given variable names."""
    tokens = _tokenize(text)
    index = {v: i for i, v in enumerate(variables)}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_factor():
        kind, val = take()
        if kind == "num":
            return SparsePoly.const(variables, val)
        if kind == "name":
            if val not in index:
                raise ParseError(f"unknown variable {val!r}")
            power = 1
            if peek() == ("op", "^"):
                take()
                k, v = take()
                if k != "num" or v.denominator != 1:
                    raise ParseError("exponent must be a nonnegative integer")
                power = int(v)
            return SparsePoly.var(variables, index[val], power)
        if (kind, val) == ("op", "("):
            e = parse_expr()
            if take() != ("op", ")"):
                raise ParseError("missing )")
            return e
        raise ParseError(f"unexpected token {val!r} in polynomial")

    def parse_term():
        f = parse_factor()
        while peek() == ("op", "*"):
            take()
            f = f * parse_factor()
        return f

    def parse_expr():
        sign = 1
        kind, val = peek()
        if (kind, val) in (("op", "-"), ("op", "+")):
            take()
            sign = -1 if val == "-" else 1
        total = parse_term().scale(sign)
        while peek()[0] == "op" and peek()[1] in "+-":
            _, op = take()
            t = parse_term()
            total = total + (t if op == "+" else -t)
        return total

    if not tokens:
        raise ParseError("empty polynomial")
    result = parse_expr()
    if pos != len(tokens):
        raise ParseError("trailing tokens in polynomial")
    return result


def poly_to_text(p, variables=None):
    names = variables if variables is not None else p.vars
    if p.is_zero:
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: _gl_key(kv[0]), reverse=True)
    chunks = []
    for i, (exps, coeff) in enumerate(items):
        pieces = []
        for name, k in zip(names, exps):
            if k == 1:
                pieces.append(name)
            elif k > 1:
                pieces.append(f"{name}^{k}")
        mag = abs(coeff)
        if not pieces or mag != 1:
            pieces.insert(0, str(mag))
        body = "*".join(pieces)
        if i == 0:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(chunks)
