"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 invalid data or spec, 3 selftest or
oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .documents import (Model, SpecError, build_model, catalog_paths, element_to_json,
                        parse_element, parse_group_spec)
from .heis import ext_conjugate, ext_inv, ext_mul
from .integer import is_conjugate_z, z_conjugate, z_inv, z_invariants, z_mul
from .invariants import (InvariantEngine, OddCaseInapplicable, are_conjugate_finite,
                         odd_case_invariants)
from .oracle import (DEFAULT_ORDER_BOUND, OrderBoundExceeded, conjugacy_classes,
                     oracle_finite, oracle_z, partition_compare)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_MISMATCH = 0, 1, 2, 3

DESCRIPTION = """\
Conjugacy classes in discrete and extended Heisenberg groups.

Groups are JSON specs (UTF-8, no comments).  Every abelian factor is given
by a list of moduli; modulus 0 stands for a copy of Z.  Elements are JSON
objects {"p": .., "c": .., "n": .., "k": ..}: integers in the integer model,
coordinate vectors otherwise.
"""


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="heisconj", description=DESCRIPTION,
                 epilog="exit codes: 0 ok, 1 usage error, 2 invalid data, 3 mismatch",
                 formatter_class=argparse.RawDescriptionHelpFormatter)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--group", metavar="FILE", help="group spec JSON file ('-' for stdin)")
    src.add_argument("--integer", action="store_true", help="use the integer model")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    # --json is accepted after the subcommand too
    late = _Parser(add_help=False)
    late.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                      help=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("mul", parents=[late], help="product A B")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("inv", parents=[late], help="inverse of A")
    p.add_argument("a")
    p = sub.add_parser("conj", parents=[late], help="G X G^-1")
    p.add_argument("g")
    p.add_argument("x")
    p = sub.add_parser("invariants", parents=[late], help="conjugacy invariants of X")
    p.add_argument("x")
    p = sub.add_parser("is-conjugate", parents=[late], help="decide whether X and Y are conjugate")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--oracle", action="store_true",
                   help="also run the brute-force oracle and require agreement")
    p.add_argument("--witness", action="store_true", help="print a conjugator")
    p = sub.add_parser("classes", parents=[late], help="all conjugacy classes of a finite model")
    p.add_argument("--bound", type=int, default=DEFAULT_ORDER_BOUND,
                   help="refuse groups larger than this (default %(default)s)")
    p = sub.add_parser("selftest", parents=[late], help="run the certification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=5,
                   help="integer-model box for p1, p2, c1, c2 (default %(default)s)")
    p.add_argument("--congruence-max", type=int, default=40,
                   help="largest modulus in the congruence sweep (default %(default)s)")
    p.add_argument("--catalog", metavar="FILE",
                   help="spec file or directory (default: shipped catalog)")
    return ap


def _model(args) -> Model:
    if args.integer:
        return build_model({"model": "integer"})
    if args.group is None:
        raise UsageError("this command needs --group FILE or --integer")
    if args.group == "-":
        return parse_group_spec(sys.stdin)
    path = Path(args.group)
    if not path.is_file():
        raise SpecError(f"no such group spec: {args.group}")
    return parse_group_spec(path)


def _elem(model: Model, text: str):
    return parse_element(model, text)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _emit_element(x, out):
    print(_dump(element_to_json(x)), file=out)


def cmd_mul(model, args, out):
    a, b = _elem(model, args.a), _elem(model, args.b)
    _emit_element(z_mul(a, b) if model.integer else ext_mul(model.group, a, b), out)


def cmd_inv(model, args, out):
    a = _elem(model, args.a)
    _emit_element(z_inv(a) if model.integer else ext_inv(model.group, a), out)


def cmd_conj(model, args, out):
    g, x = _elem(model, args.g), _elem(model, args.x)
    _emit_element(z_conjugate(g, x) if model.integer else ext_conjugate(model.group, g, x), out)


def _invariant_doc(model, x) -> dict:
    if model.integer:
        return z_invariants(x).to_json()
    engine = InvariantEngine(model.group)
    ctx = engine.context(x.n, x.k)
    doc = ctx.record(x).to_json()
    try:
        doc["odd_case"] = odd_case_invariants(ctx, x).to_json()
    except OddCaseInapplicable:
        pass
    return doc


def cmd_invariants(model, args, out):
    doc = _invariant_doc(model, _elem(model, args.x))
    if args.json:
        print(_dump(doc), file=out)
        return
    for key in sorted(doc):
        print(f"{key}: {_dump(doc[key])}", file=out)


def cmd_is_conjugate(model, args, out):
    x, y = _elem(model, args.x), _elem(model, args.y)
    G = model.group
    if model.integer:
        verdict = bool(is_conjugate_z(x, y))
        run_oracle = lambda: oracle_z(x, y)  # noqa: E731
    else:
        verdict = are_conjugate_finite(G, x, y)
        run_oracle = lambda: oracle_finite(G, x, y)  # noqa: E731
    doc = {"conjugate": verdict}
    if args.oracle or (args.witness and verdict):
        oracle = run_oracle()
        if args.oracle:
            doc["oracle"] = oracle.conjugate
        if oracle.conjugate != verdict:
            raise Mismatch(f"invariants say {verdict}, oracle says {oracle.conjugate}")
        if args.witness and verdict:
            doc["witness"] = element_to_json(oracle.witness)
    if args.witness and not verdict:
        doc["witness"] = None
    if args.json:
        print(_dump(doc), file=out)
        return
    print("true" if verdict else "false", file=out)
    if "oracle" in doc:
        print(f"oracle: {'true' if doc['oracle'] else 'false'}", file=out)
    if doc.get("witness") is not None:
        print(f"witness: {_dump(doc['witness'])}", file=out)


def cmd_classes(model, args, out):
    G = model.group
    if model.integer or not G.is_finite:
        raise SpecError("classes needs a finite model (infinitely many classes otherwise)")
    try:
        classes = conjugacy_classes(G, args.bound)
    except OrderBoundExceeded as exc:
        raise SpecError(str(exc)) from exc
    engine = InvariantEngine(G)
    elements = [x for cls in classes for x in cls]
    oracle_ids = [i for i, cls in enumerate(classes) for _ in cls]
    labels = [engine.label(x) for x in elements]
    report = partition_compare(elements, labels, oracle_ids)
    if not report.equal:
        raise Mismatch(f"invariant partition differs from the oracle ({report.offending[1]})")
    rows = []
    for cls in classes:
        rec = engine.record(cls[0])
        rows.append({"size": len(cls), "label": {"n": list(rec.n.coords), "k": list(rec.k.coords),
                                                  "R": list(rec.R.coords), "S": list(rec.S.coords)},
                     "representative": element_to_json(cls[0]),
                     "members": [element_to_json(x) for x in cls]})
    if args.json:
        print(_dump({"order": G.order, "class_count": len(classes),
                     "oracle_class_count": report.blocks_b, "classes": rows}), file=out)
        return
    print(f"order {G.order}, {len(classes)} classes (oracle {report.blocks_b})", file=out)
    for row in rows:
        print(f"{row['size']:>5}  {_dump(row['label'])}  {_dump(row['representative'])}", file=out)


def _selftest_models(spec):
    from .certify import load_catalog
    if spec is None:
        return load_catalog(catalog_paths())
    path = Path(spec)
    if path.is_dir():
        return load_catalog(sorted(path.glob("*.json")))
    if not path.is_file():
        raise SpecError(f"no such catalog: {spec}")
    return [parse_group_spec(path)]


def cmd_selftest(args, out) -> int:
    from .certify import run_all
    models = _selftest_models(args.catalog)
    results = run_all(models, seed=args.seed, box=args.box, congruence_max=args.congruence_max)
    failed = [r for r in results if not r.ok]
    if args.json:
        print(_dump({"seed": args.seed, "models": [m.name for m in models],
                     "results": [{"name": r.name, "ok": r.ok, "checked": r.checked,
                                  "detail": [str(d) for d in r.detail[:10]]}
                                 for r in results],
                     "ok": not failed}), file=out)
    else:
        print(f"selftest seed={args.seed} models={','.join(m.name for m in models)}", file=out)
        for r in results:
            print(r.line(), file=out)
        print(f"{len(results) - len(failed)}/{len(results)} passed", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


COMMANDS = {
    "mul": cmd_mul,
    "inv": cmd_inv,
    "conj": cmd_conj,
    "invariants": cmd_invariants,
    "is-conjugate": cmd_is_conjugate,
    "classes": cmd_classes,
}


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.cmd == "selftest":
            return cmd_selftest(args, out)
        model = _model(args)
        COMMANDS[args.cmd](model, args, out)
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        print(parser.format_usage().rstrip(), file=err)
        return EXIT_USAGE
    except (SpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DATA
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=err)
        return EXIT_MISMATCH


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
