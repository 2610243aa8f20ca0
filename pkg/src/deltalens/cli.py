"""Command-line front end.

Exit codes: 0 when every requested check holds, 1 when one fails, 2 for
unreadable input, unknown names and other usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .category import validate_category
from .cofunctor import compose_cofunctors_formula, compose_cofunctors_span, validate_cofunctor
from .corpus import FAMILIES, GenConfig, gen
from .diagnostics import DeltaLensError
from .document import (
    Document,
    ParseError,
    lens_document,
    parse,
    print_cofunctor,
    print_document,
    print_functor,
    print_lens,
    render,
)
from .factorisation import check_sopf_factorisation
from .functor import (
    compose_functors,
    faithfulness_defect,
    is_discrete_fibration,
    is_discrete_opfibration,
    is_identity_on_objects,
    is_isomorphism_on_objects,
    validate_functor,
)
from .lens import InternalLens, compose_lenses, compose_lenses_pullback, is_dopf_lens, validate_lens
from .sopf import (
    check_sopf_decalage,
    check_sopf_pullback,
    decalage,
    decalage_functor,
    opcartesian_oracle,
)

OK, FAILED, USAGE = 0, 1, 2

CHECKERS = {
    "pullback": check_sopf_pullback,
    "decalage": check_sopf_decalage,
    "factorisation": check_sopf_factorisation,
    "oracle": opcartesian_oracle,
}


class UsageError(Exception):
    pass


def _load(path: str) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _item(doc: Document, name: str | None, kinds: tuple):
    if name is None:
        candidates = [(k, n) for k, n in doc.order if k in kinds]
        if len(candidates) != 1:
            raise UsageError(f"name required: the file has {len(candidates)} items of kind {'/'.join(kinds)}")
        kind, name = candidates[0]
        return kind, name, doc.table(kind)[name]
    try:
        kind, value = doc.lookup(name)
    except KeyError:
        raise UsageError(f"no item named {name!r}") from None
    if kind not in kinds:
        raise UsageError(f"{name!r} is a {kind}, expected {' or '.join(kinds)}")
    return kind, name, value


def _triple(t) -> str:
    return "(" + ", ".join(render(x) for x in t) + ")"


def _emit(args, lines: list[str], data: dict) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        for line in lines:
            print(line)


def _report_data(report) -> dict:
    return {
        "subject": report.subject,
        "valid": report.ok,
        "violations": [
            {"check": check, "witness": str(v.witness)}
            for check, v in zip(report.checks_failed(), _all_violations(report))
        ],
    }


def _all_violations(report) -> list:
    out = list(report.violations)
    for sub in report.nested.values():
        out.extend(_all_violations(sub))
    return out


# -- commands -------------------------------------------------------------


def _validate_value(kind: str, value):
    return {
        "category": validate_category,
        "functor": validate_functor,
        "cofunctor": validate_cofunctor,
        "lens": validate_lens,
    }[kind](value)


def cmd_validate(args) -> int:
    doc = _load(args.file)
    if args.names:
        items = [_item(doc, n, ("category", "functor", "cofunctor", "lens"))[:2] for n in args.names]
    else:
        items = list(doc.order)
    lines, reports = [], []
    for kind, name in items:
        report = _validate_value(kind, doc.table(kind)[name])
        report.subject = f"{kind} {name}"
        lines.extend(report.lines())
        reports.append(_report_data(report))
    ok = all(r["valid"] for r in reports)
    _emit(args, lines, {"command": "validate", "ok": ok, "reports": reports})
    return OK if ok else FAILED


def cmd_classify(args) -> int:
    doc = _load(args.file)
    kind, name, value = _item(doc, args.name, ("functor", "lens"))
    F = value.functor if isinstance(value, InternalLens) else value
    report = _validate_value(kind, value)
    if not report.ok:
        report.subject = f"{kind} {name}"
        _emit(args, report.lines(), {"command": "classify", "ok": False, "report": _report_data(report)})
        return FAILED
    props = {
        "identity-on-objects": is_identity_on_objects(F),
        "isomorphism-on-objects": is_isomorphism_on_objects(F),
        "discrete-opfibration": is_discrete_opfibration(F),
        "discrete-fibration": is_discrete_fibration(F),
        "faithful": faithfulness_defect(F) is None,
    }
    if isinstance(value, InternalLens):
        props["lifts-bijective"] = is_dopf_lens(value)
        props["split-opfibration"] = check_sopf_pullback(value).holds
    lines = [f"{kind} {name} : {doc.category_name(F.src)} -> {doc.category_name(F.dst)}"]
    lines += [f"{k}: {str(v).lower()}" for k, v in props.items()]
    _emit(args, lines, {"command": "classify", "ok": True, "name": name, "kind": kind, "properties": props})
    return OK


def cmd_compose(args) -> int:
    doc = _load(args.file)
    kind2, name2, second = _item(doc, args.second, ("functor", "cofunctor", "lens"))
    kind1, name1, first = _item(doc, args.first, (kind2,))
    name = args.name or f"{name2}.{name1}"
    if kind2 == "lens":
        route = compose_lenses if args.method == "formula" else compose_lenses_pullback
        result = route(second, first)
        report = validate_lens(result)
        text = print_lens(name, result, doc)
    elif kind2 == "cofunctor":
        # as for lenses: first is B -|> A, second is C -|> B
        route = compose_cofunctors_formula if args.method == "formula" else compose_cofunctors_span
        result = route(first, second)
        report = validate_cofunctor(result)
        text = print_cofunctor(name, result, doc)
    else:
        result = compose_functors(second, first)
        report = validate_functor(result)
        text = print_functor(name, result, doc)
    lines = text.splitlines() + [f"valid: {str(report.ok).lower()}"]
    _emit(args, lines, {"command": "compose", "ok": report.ok, "method": args.method, "result": text})
    return OK if report.ok else FAILED


def cmd_decalage(args) -> int:
    doc = _load(args.file)
    kind, name, value = _item(doc, args.name, ("category", "functor"))
    if kind == "category":
        dec = decalage(value)
        D = dec.category
        valid = validate_category(D).ok and validate_functor(dec.counit).ok
        fib = is_discrete_fibration(dec.counit)
        lines = [
            f"decalage of {name}: {len(D.objects)} objects, {len(D.arrows)} morphisms",
            "objects: " + " ".join(render(x) for x in D.objects),
            "morphisms: " + " ".join(render(m) for m in D.arrows),
            f"valid: {str(valid).lower()}",
            f"counit discrete fibration: {str(fib).lower()}",
        ]
        data = {
            "command": "decalage",
            "ok": valid and fib,
            "objects": [render(x) for x in D.objects],
            "morphisms": [render(m) for m in D.arrows],
            "counit_discrete_fibration": fib,
        }
        ok = valid and fib
    else:
        DF = decalage_functor(value)
        valid = validate_functor(DF).ok
        A, B = decalage(value.src), decalage(value.dst)
        natural = compose_functors(B.counit, DF) == compose_functors(value, A.counit)
        lines = [
            f"decalage of {name}: {len(DF.src.objects)} -> {len(DF.dst.objects)} objects, "
            f"{len(DF.src.arrows)} -> {len(DF.dst.arrows)} morphisms",
            f"valid: {str(valid).lower()}",
            f"counit natural: {str(natural).lower()}",
        ]
        ok = valid and natural
        data = {"command": "decalage", "ok": ok, "valid": valid, "counit_natural": natural}
    _emit(args, lines, data)
    return OK if ok else FAILED


def cmd_check_sopf(args) -> int:
    doc = _load(args.file)
    _, name, L = _item(doc, args.name, ("lens",))
    report = validate_lens(L)
    if not report.ok:
        report.subject = f"lens {name}"
        raise UsageError("\n".join(["lens is not valid"] + report.lines()))
    methods = list(CHECKERS) if args.method == "all" else [args.method]
    lines = [f"lens {name}"]
    results = []
    for method in methods:
        verdict = CHECKERS[method](L)
        line = f"{method}: {str(verdict.holds).lower()}"
        if args.witness and not verdict.holds and verdict.triple is not None:
            line += f"  witness {_triple(verdict.triple)}"
        lines.append(line)
        results.append(
            {
                "method": method,
                "holds": verdict.holds,
                "witness": [render(x) for x in verdict.triple] if verdict.triple else None,
                "detail": verdict.detail,
            }
        )
    ok = all(r["holds"] for r in results)
    _emit(args, lines, {"command": "check-sopf", "lens": name, "ok": ok, "results": results})
    return OK if ok else FAILED


def cmd_gen(args) -> int:
    config = GenConfig(args.family, args.seed, args.size, args.morphism_bound)
    instance = gen(config)
    text = print_document(lens_document(instance.lens))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        lines = [f"wrote {args.out}"]
    else:
        lines = text.rstrip("\n").splitlines()
    _emit(args, lines, {"command": "gen", "ok": True, "family": args.family, "seed": args.seed, "size": args.size, "document": text})
    return OK


# -- argument parsing -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a structured report instead")
    parser = argparse.ArgumentParser(prog="deltalens", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check every axiom of the named items")
    p.add_argument("file")
    p.add_argument("names", nargs="*")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("classify", parents=[common], help="classify a functor or lens")
    p.add_argument("file")
    p.add_argument("name", nargs="?")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("compose", parents=[common], help="compose two lenses, cofunctors or functors")
    p.add_argument("file")
    p.add_argument("second", help="applied last")
    p.add_argument("first", help="applied first")
    p.add_argument("--method", choices=("formula", "pullback"), default="formula")
    p.add_argument("--name")
    p.set_defaults(run=cmd_compose)

    p = sub.add_parser("decalage", parents=[common], help="right decalage of a category or functor")
    p.add_argument("file")
    p.add_argument("name", nargs="?")
    p.set_defaults(run=cmd_decalage)

    p = sub.add_parser("check-sopf", parents=[common], help="decide whether a lens is a split opfibration")
    p.add_argument("file")
    p.add_argument("name", nargs="?")
    p.add_argument("--method", choices=(*CHECKERS, "all"), default="all")
    p.add_argument("--witness", action="store_true", help="print a counterexample triangle on failure")
    p.set_defaults(run=cmd_check_sopf)

    p = sub.add_parser("gen", parents=[common], help="generate a random valid lens")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--morphism-bound", type=int, default=24)
    p.add_argument("--out")
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.run(args)
    except (UsageError, ParseError, DeltaLensError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
