"""Command-line interface.

Exit status: 0 success, 1 a check failed (FAIL, NOT-ISOMORPHIC, invalid
input object), 2 bad input, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructions, core, formats, oracle
from .counterexample import run_counterexample, run_counterexample_empty_target_variant
from .errors import ComputadError, ParseError, SearchBudgetExceeded
from .multiset import Multiset, enumerate_pairings, format_multiset, parse_multiset

OK, FAILED, BAD_INPUT, BUDGET = 0, 1, 2, 3


def _emit(text: str, output=None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _includes(args) -> dict:
    objs = {}
    for path in args.include or ():
        x = formats.load_computad(path)
        objs[x.name] = x
    return objs


def _require_valid(*items):
    for item in items:
        if isinstance(item, core.Computad):
            problems = core.validate_computad(item)
        else:
            problems = core.validate_morphism(item)
        if problems:
            raise ValueError(f"{item.name} is invalid: " + "; ".join(problems))


def _load_objects(args):
    a, b = formats.load_computad(args.first), formats.load_computad(args.second)
    _require_valid(a, b)
    return a, b


def _load_pair(args):
    objs = _includes(args)
    f = formats.load_morphism(args.first, objs)
    g = formats.load_morphism(args.second, objs)
    _require_valid(f.dom, f.cod, g.dom, g.cod, f, g)
    return f, g


def cmd_product(args):
    a, b = _load_objects(args)
    res = constructions.product(a, b)
    prov = res.provenance() if args.verbose else None
    text = formats.format_computad(res.object, prov)
    if args.output:
        _emit(text, args.output)
        return OK
    _emit(text + "\n" + formats.format_morphism(res.proj_left) + "\n" + formats.format_morphism(res.proj_right))
    return OK


def cmd_coeq(args):
    f, g = _load_pair(args)
    res = constructions.coequalizer(f, g)
    prov = res.provenance() if args.verbose else None
    text = formats.format_computad(res.object, prov)
    if args.output:
        _emit(text, args.output)
        return OK
    _emit(text + "\n" + formats.format_morphism(res.q))
    return OK


def cmd_iso(args):
    x, y = _load_objects(args)
    phi = core.find_isomorphism(x, y, args.budget)
    if phi is None:
        _emit("NOT-ISOMORPHIC\n", args.output)
        return FAILED
    _emit(formats.format_morphism(phi), args.output)
    return OK


def cmd_homs(args):
    x, y = _load_objects(args)
    homs = core.enumerate_homs(x, y, args.budget)
    _emit("".join(formats.format_morphism(h) + "\n" for h in homs) + f"count {len(homs)}\n", args.output)
    return OK


def cmd_check_product(args):
    a, b = _load_objects(args)
    res = constructions.product(a, b)
    report = oracle.check_product_up(a, b, res, args.bounds, budget=args.budget)
    _emit(report.to_text(), args.output)
    return OK if report.passed else FAILED


def cmd_check_coeq(args):
    f, g = _load_pair(args)
    res = constructions.coequalizer(f, g)
    report = oracle.check_coequalizer_up(f, g, res, args.bounds, budget=args.budget)
    _emit(report.to_text(), args.output)
    return OK if report.passed else FAILED


def cmd_pairings(args):
    s = parse_multiset(args.first, source="argument 1")
    t = parse_multiset(args.second, source="argument 2")
    found = enumerate_pairings(s, t)
    lines = [format_multiset(Multiset(f"({a},{b})" for a, b in p)) for p in found]
    _emit("".join(line + "\n" for line in lines) + f"count {len(found)}\n", args.output)
    return OK


def _paper(args, run):
    report = run()
    if args.dump:
        report.dump(args.dump)
    _emit(report.to_json() if args.json else report.to_text(), args.output)
    return OK if report.all_checks_passed else FAILED


def cmd_validate(args):
    path = Path(args.first)
    text = path.read_text(encoding="utf-8")
    if formats.file_kind(text) == "morphism":
        phi = formats.load_morphism(path, _includes(args))
        problems = core.validate_computad(phi.dom) + core.validate_computad(phi.cod) or core.validate_morphism(phi)
    else:
        problems = core.validate_computad(formats.parse_computad(text, str(path)))
    if problems:
        _emit("".join(f"violation: {p}\n" for p in problems), args.output)
        return FAILED
    _emit("OK\n", args.output)
    return OK


def _bounds(text):
    try:
        return oracle.GeneratorBounds.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="computads", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result to this file")
    common.add_argument("-v", "--verbose", action="store_true", help="include provenance comments")
    common.add_argument("--budget", type=int, default=None,
                        help=f"search budget (default: ${core.BUDGET_ENV} or {core.DEFAULT_BUDGET})")
    common.add_argument("-I", "--include", action="append", metavar="FILE",
                        help="computad file used to resolve morphism endpoints")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, nargs, helptext, **extra):
        p = sub.add_parser(name, parents=[common], help=helptext)
        for arg in ("first", "second")[:nargs]:
            p.add_argument(arg)
        if "bounds" in extra:
            p.add_argument("--bounds", type=_bounds, default=extra["bounds"],
                           help="max 2-cells, max 3-cells, max boundary size (default %(default)s)")
        p.set_defaults(func=func)
        return p

    verb("product", cmd_product, 2, "binary product of two computads")
    verb("coeq", cmd_coeq, 2, "coequaliser of two parallel morphisms")
    verb("iso", cmd_iso, 2, "find an isomorphism or print NOT-ISOMORPHIC")
    verb("homs", cmd_homs, 2, "list every morphism X -> Y")
    verb("check-product", cmd_check_product, 2, "check the product's universal property",
         bounds=oracle.GeneratorBounds(3, 1, 2))
    verb("check-coeq", cmd_check_coeq, 2, "check the coequaliser's universal property",
         bounds=oracle.GeneratorBounds(3, 2, 2))
    verb("pairings", cmd_pairings, 2, "pairings of two multisets, e.g. 'a1*a2' 'b1*b2'")
    verb("validate", cmd_validate, 1, "validate a computad or morphism file")
    for name, run in (("paper", run_counterexample),
                      ("paper-empty-target", run_counterexample_empty_target_variant)):
        p = verb(name, lambda args, run=run: _paper(args, run), 0, "run the counterexample pipeline")
        p.add_argument("--json", action="store_true", help="structured output")
        p.add_argument("--dump", metavar="DIR", help="write every object and morphism to DIR")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: search budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (ComputadError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
