"""The `catc` command line: replay, check, cost, compile, extract, bounds.

Exit codes: 0 success, 1 usage, 2 parse failure, 3 semantic failure
(constructivity, object mismatch, unknown morphism), 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import paper_preimage_claim, sl_growth_table
from .categories.affine import AffVar, presentation_json
from .categories.boollattice import BoolLattice
from .categories.finset import FinSet
from .categories.rmod import RMod
from .categories.vect import VectQ
from .compilers import (
    compile_formula_to_rmod,
    compile_limit_to_presentation,
    compile_slp_to_limit,
    extract_formula_poly,
    mixed_to_monotone,
    monotone_to_mixed,
)
from .embed import find_subdiagram_embedding
from .engine import BasicStep, Computation, check_constructivity, cost, replay
from .errors import BudgetExceeded, CatcError, ParseError, SemanticError
from .graphs import full_subdiagram
from .polynomials import poly_to_text
from .reports import (
    bounds_csv,
    bounds_json,
    embedding_json,
    render_growth_figure,
    report_to_json,
    run_report,
)
from .script import parse_script, print_script
from .slp import parse_mono, parse_slp, print_slp

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SEMANTIC, EXIT_BUDGET = 0, 1, 2, 3, 4


def make_category(spec):
    name, _, arg = spec.partition(":")
    if name == "finset":
        return FinSet()
    if name == "vectq":
        return VectQ()
    if name == "bool":
        if not arg:
            raise SemanticError("bool category needs an arity: bool:n")
        return BoolLattice(int(arg))
    if name == "affvar":
        return AffVar()
    if name == "rmod":
        if not arg:
            raise SemanticError("rmod category needs variables: rmod:x1,x2")
        return RMod(tuple(v.strip() for v in arg.split(",") if v.strip()))
    raise SemanticError(f"unknown category {spec!r}")


def link_check(computation, cat):
    """Resolve every basic morphism name eagerly against the category."""
    for s in computation.steps:
        if isinstance(s, BasicStep):
            cat.resolve_basic(s.mor)


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_run(args):
    comp = parse_script(_read(args.script))
    cat = make_category(args.cat)
    link_check(comp, cat)
    result = replay(comp, cat)
    violations = check_constructivity(comp)
    embedding = None
    if args.expect:
        tcomp = parse_script(_read(args.expect))
        tresult = replay(tcomp, cat)
        tdiag = tresult.diagram
        if tcomp.target:
            tdiag = full_subdiagram(tdiag, tcomp.target)
        emb = find_subdiagram_embedding(tdiag, result.diagram, cat)
        if emb is None:
            print("expected diagram: no embedding found", file=sys.stderr)
            return EXIT_SEMANTIC
        embedding = embedding_json(emb)
    report = run_report(comp, result, violations, embedding, cat)
    payload = report_to_json(report)
    if args.json:
        _write(args.json, payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def cmd_check(args):
    comp = parse_script(_read(args.script))
    violations = check_constructivity(comp)
    for v in violations:
        print(f"step {v.step}: reuses apex(es) {', '.join(v.reused)} "
              f"without vertices {', '.join(v.missing)}")
    if violations:
        return EXIT_SEMANTIC
    print("constructive: ok")
    return EXIT_OK


def cmd_cost(args):
    comp = parse_script(_read(args.script))
    print(cost(comp))
    return EXIT_OK


def cmd_compile(args):
    if args.pass_name == "slp2cat":
        circuit = parse_slp(_read(args.input))
        comp, report, meta = compile_slp_to_limit(circuit, args.zero_set)
        text = print_script(comp)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        if args.json:
            _write(args.json, json.dumps(report.as_dict(), sort_keys=True,
                                         indent=2) + "\n")
        return EXIT_OK
    if args.pass_name == "cat2circ":
        comp = parse_script(_read(args.input))
        pres, circuit, report, _ = compile_limit_to_presentation(comp)
        payload = {
            "presentation": presentation_json(pres),
            "report": report.as_dict(),
        }
        text = print_slp(circuit)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        if args.json:
            _write(args.json, out)
        else:
            sys.stdout.write(out)
        return EXIT_OK
    if args.pass_name == "formula2rmod":
        circuit = parse_slp(_read(args.input))
        comp, report, meta = compile_formula_to_rmod(circuit, args.n)
        text = print_script(comp)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        if args.json:
            _write(args.json, json.dumps(
                {"report": report.as_dict(), "inVertex": meta["in_vertex"],
                 "outVertex": meta["out_vertex"]},
                sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    if args.pass_name == "mono2mixed":
        circuit = parse_mono(_read(args.input))
        comp, _ = monotone_to_mixed(circuit, args.n)
        text = print_script(comp)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.pass_name == "mixed2mono":
        comp = parse_script(_read(args.input))
        circuit = mixed_to_monotone(comp, args.n)
        text = print_slp(circuit)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    raise SemanticError(f"unknown compile pass {args.pass_name!r}")


def cmd_extract(args):
    comp = parse_script(_read(args.script))
    variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    cat = RMod(variables)
    link_check(comp, cat)
    from .engine import flatten
    from .categories.rmod import rmod_extract_cocone_polys

    flat = flatten(comp)
    basics = Computation(comp.kind, tuple(
        s for s in flat.steps if isinstance(s, BasicStep)))
    base = replay(basics, cat)
    final = flat.steps[-1]
    sub = full_subdiagram(base.diagram, final.over)
    slot = None
    if args.slot:
        slot = (args.slot, 0)
    elif comp.steps and isinstance(comp.steps[0], BasicStep):
        slot = (_first_vertex(comp), 0)
    polys = rmod_extract_cocone_polys(sub, cat, output_slot=slot)
    payload = {f"{v}[{k}]": poly_to_text(p, variables)
               for (v, k), p in sorted(polys.items())}
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _first_vertex(comp):
    first = comp.steps[0]
    from .engine import Fresh
    if isinstance(first.src, Fresh):
        return first.sid
    return first.src.vertex


def cmd_bounds(args):
    rows = sl_growth_table(args.mmax)
    if args.json:
        _write(args.json, bounds_json(rows))
    if args.csv:
        _write(args.csv, bounds_csv(rows))
    if not args.json and not args.csv:
        sys.stdout.write(bounds_csv(rows))
    if args.plot:
        render_growth_figure(rows, args.plot)
    if args.mmax >= 1:
        row = rows[0]
        claim = paper_preimage_claim(row.m)
        if claim != row.preimage_cost_bound:
            print(f"note: quoted preimage facet count {claim} (m=1) differs "
                  f"from the formula value {row.preimage_cost_bound}; "
                  f"formula values are reported", file=sys.stderr)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="catc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay a script in a category")
    run.add_argument("script")
    run.add_argument("--cat", required=True,
                     help="finset | vectq | bool:n | affvar | rmod:x1,x2,...")
    run.add_argument("--expect", help="script whose (targeted) diagram must embed")
    run.add_argument("--json", help="write the run report to a file")
    run.add_argument("--seed", type=int, default=0)
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("check", help="constructivity and well-formedness")
    check.add_argument("script")
    check.set_defaults(func=cmd_check)

    costp = sub.add_parser("cost", help="print the computation cost")
    costp.add_argument("script")
    costp.set_defaults(func=cmd_cost)

    comp = sub.add_parser("compile", help="run a translation pass")
    comp.add_argument("pass_name", choices=["slp2cat", "cat2circ",
                                            "formula2rmod", "mono2mixed",
                                            "mixed2mono"])
    comp.add_argument("input")
    comp.add_argument("--zero-set", action="store_true")
    comp.add_argument("-n", type=int, default=None,
                      help="variable count (monotone and formula passes)")
    comp.add_argument("-o", "--output", help="write the result to a file")
    comp.add_argument("--json", help="write the compile report to a file")
    comp.set_defaults(func=cmd_compile)

    ext = sub.add_parser("extract", help="recover cocone polynomials")
    ext.add_argument("script")
    ext.add_argument("--vars", required=True)
    ext.add_argument("--slot", help="vertex whose slot fixes the sign")
    ext.set_defaults(func=cmd_extract)

    b = sub.add_parser("bounds", help="facet-count growth table")
    b.add_argument("--mmax", type=int, required=True)
    b.add_argument("--csv", help="write CSV to a file")
    b.add_argument("--json", help="write JSON to a file")
    b.add_argument("--plot", help="render the growth figure to a file")
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SemanticError, CatcError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
