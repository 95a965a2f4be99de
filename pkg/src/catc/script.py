"""Parser and printer for the computation script DSL (`.catc` files).

Line forms::

    !limit | !colimit | !mixed          header, selects the computation kind
    i. source,f,target                  attach the basic morphism f
    i. lim(a,b,...)                     limit of the full subdiagram on a,b,...
    i. colim(a,b,...)                   colimit likewise
    !target a,b,...                     optional: designate a subdiagram

In a basic line, `_` stands for a fresh vertex; writing the step's own id as
the target (with a fresh source) makes a self-loop; `i'` names the fresh
target of step i.  `#` starts a comment.
"""

from __future__ import annotations

import re

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
from .categories.base import MorphName
from .errors import ParseError, RedefinedIdentifier, UnknownIdentifier

_ID = r"[A-Za-z0-9_]+"
_STEP = re.compile(rf"^({_ID})\.\s*(.*)$")
_LIMCALL = re.compile(rf"^(lim|colim)\(([^)]*)\)$")
_MORPH = re.compile(rf"^({_ID})(?:\(([^()]*)\))?$")


def _strip(line):
    if "#" in line:
        line = line[:line.index("#")]
    return line.strip()


def parse_script(text):
    kind = None
    steps = []
    target = None
    step_ids = set()
    bound = {}  # identifier -> vertex id

    def vertex_ref(token, lineno):
        if token not in bound:
            raise UnknownIdentifier(f"unknown vertex {token!r}", line=lineno)
        return bound[token]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("!"):
            head, _, rest = line.partition(" ")
            if head in ("!limit", "!colimit", "!mixed"):
                if kind is not None:
                    raise ParseError("duplicate header", line=lineno)
                if rest.strip():
                    raise ParseError("header takes no arguments", line=lineno)
                kind = {"!limit": LIMIT, "!colimit": COLIMIT,
                        "!mixed": MIXED}[head]
                continue
            if head == "!target":
                if target is not None:
                    raise ParseError("duplicate !target", line=lineno)
                names = [t.strip() for t in rest.split(",") if t.strip()]
                if not names:
                    raise ParseError("!target needs vertex ids", line=lineno)
                target = tuple(vertex_ref(n, lineno) for n in names)
                continue
            raise ParseError(f"unknown directive {head!r}", line=lineno)
        if kind is None:
            raise ParseError("missing !limit/!colimit/!mixed header", line=lineno)
        m = _STEP.match(line)
        if not m:
            raise ParseError(f"cannot parse step {line!r}", line=lineno)
        sid, body = m.group(1), m.group(2).strip()
        if sid in step_ids:
            raise RedefinedIdentifier(f"step id {sid!r} reused", line=lineno)
        step_ids.add(sid)

        call = _LIMCALL.match(body)
        if call:
            op, arglist = call.groups()
            names = [t.strip() for t in arglist.split(",") if t.strip()]
            if not names:
                raise ParseError(f"{op}() of an empty subdiagram", line=lineno)
            over = tuple(vertex_ref(n, lineno) for n in names)
            if op == "lim":
                if kind == COLIMIT:
                    raise ParseError("lim step in a colimit computation",
                                     line=lineno)
                steps.append(LimStep(sid, over))
            else:
                if kind == LIMIT:
                    raise ParseError("colim step in a limit computation",
                                     line=lineno)
                steps.append(ColimStep(sid, over))
            if sid in bound:
                raise RedefinedIdentifier(f"identifier {sid!r} reused",
                                          line=lineno)
            bound[sid] = sid
            continue

        parts = _split_basic(body, lineno)
        src_tok, morph_tok, tgt_tok = parts
        mm = _MORPH.match(morph_tok)
        if not mm:
            raise ParseError(f"bad morphism token {morph_tok!r}", line=lineno)
        margs = tuple(a.strip() for a in mm.group(2).split(",")) \
            if mm.group(2) is not None else ()
        morph = MorphName(mm.group(1), margs)

        if src_tok in ("_", sid):
            src = Fresh()
            src_fresh = True
        else:
            src = Existing(vertex_ref(src_tok, lineno))
            src_fresh = False
        if tgt_tok == sid:
            if not src_fresh:
                raise ParseError(
                    f"target {sid!r} names this step but the source is not fresh",
                    line=lineno)
            tgt = SameAsSource()
        elif tgt_tok in ("_", sid + "'"):
            tgt = Fresh()
        else:
            tgt = Existing(vertex_ref(tgt_tok, lineno))
        if sid in bound:
            raise RedefinedIdentifier(f"identifier {sid!r} reused", line=lineno)
        bound[sid] = sid if src_fresh else bound[src_tok]
        if isinstance(tgt, Fresh):
            bound[sid + "'"] = fresh_target_name(sid)
        steps.append(BasicStep(sid, src, morph, tgt))

    if kind is None:
        raise ParseError("empty script: missing header")
    return Computation(kind, tuple(steps), target=target)


def _split_basic(body, lineno):
    parts = [p.strip() for p in body.split(",")]
    # morphism arguments may themselves contain commas: scale(-1/2) is fine
    # (no comma) but a future multi-arg form would be parenthesized, so stitch
    # pieces back together until parens balance
    merged = []
    depth = 0
    buf = ""
    for piece in parts:
        buf = piece if not buf else buf + "," + piece
        depth = buf.count("(") - buf.count(")")
        if depth == 0:
            merged.append(buf)
            buf = ""
    if buf:
        raise ParseError("unbalanced parentheses", line=lineno)
    if len(merged) != 3:
        raise ParseError(
            f"basic step needs source,f,target (got {len(merged)} fields)",
            line=lineno)
    return merged


def print_script(computation):
    """Canonical serialization; parse(print(c)) is structurally c."""
    out = [f"!{computation.kind}"]
    for s in computation.steps:
        if isinstance(s, BasicStep):
            if isinstance(s.src, Fresh):
                src = "_"
            else:
                src = s.src.vertex
            if isinstance(s.tgt, SameAsSource):
                tgt = s.sid
            elif isinstance(s.tgt, Fresh):
                tgt = "_"
            else:
                tgt = s.tgt.vertex
            out.append(f"{s.sid}. {src},{s.mor},{tgt}")
        elif isinstance(s, LimStep):
            out.append(f"{s.sid}. lim({','.join(s.over)})")
        else:
            out.append(f"{s.sid}. colim({','.join(s.over)})")
    if computation.target:
        out.append(f"!target {','.join(computation.target)}")
    return "\n".join(out) + "\n"
