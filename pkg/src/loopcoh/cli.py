"""``loopcoh`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys

from .cochains import BUILTIN_LAWS, CommutativityDifferential, CyclicModule, InversePropertyDifferential, builtin_law
from .cohomology import SizeLimitError, cohomology, inverse_property_count, reports_to_csv
from .dsl import LawError, ir_to_dict, parse, to_ir
from .extensions import ExtensionError, classify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _law(args):
    if args.law is None:
        raise UsageError("--law is required")
    return builtin_law(args.law)


def _module(args) -> CyclicModule:
    try:
        return CyclicModule(args.n, args.m, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


_FLAT_LIST = re.compile(r"\[[^\[\]{}]*\]")


def _dump(obj) -> str:
    """Indented JSON with innermost lists kept on one line."""
    text = json.dumps(obj, indent=2)
    return _FLAT_LIST.sub(lambda mt: json.dumps(json.loads(mt.group(0))), text)


def cmd_parse(args, out) -> int:
    ast = parse(args.identity)
    ir = to_ir(ast, cancel=args.cancel)
    d = ir_to_dict(ir)
    d["runProfile"] = [[mv.value, k] for mv, k in ir.run_profile]
    d["variables"] = len(set(ir.rho))
    print(_dump(d), file=out)
    return EXIT_OK


def cmd_diff(args, out) -> int:
    spec = _law(args)
    if args.output == "json":
        print(_dump(spec.to_dict()), file=out)
    else:
        for line in spec.term_strings(use_variables=not args.positions):
            print(line, file=out)
    return EXIT_OK


def _dict_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_cohomology(args, out) -> int:
    spec = _law(args)
    module = _module(args)
    if isinstance(spec, CommutativityDifferential) and not module.trivial_action:
        raise UsageError("commutativity requires the trivial action t=1")
    if isinstance(spec, InversePropertyDifferential):
        counts = inverse_property_count(module, method=args.method, limit=args.limit)
        counts = {"law": "inverse-property", **counts}
        if args.output == "json":
            print(_dump(counts), file=out)
        elif args.output == "csv":
            out.write(_dict_csv([counts]))
        else:
            for k, v in counts.items():
                print(f"{k}: {v}", file=out)
        return EXIT_OK
    report = cohomology(spec, module, method=args.method, limit=args.limit)
    if args.output == "json":
        print(_dump(report.to_dict()), file=out)
    elif args.output == "csv":
        out.write(reports_to_csv([report]))
    else:
        print(report.summary(), file=out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    spec = _law(args)
    module = _module(args)
    exts = classify(spec, module, method=args.method, limit=args.limit)
    payload = [{"rows": e.loop.rows(), "provenance": e.provenance()} for e in exts]
    if args.output == "json":
        print(_dump(payload), file=out)
    else:
        print(f"{len(exts)} extension class(es) for {spec.name} at n={module.n} m={module.m} t={module.t}", file=out)
        for e in exts:
            print(f"# f = {e.provenance()['f']}", file=out)
            for row in e.loop.rows():
                print(" ".join(map(str, row)), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .verification import (
        all_modules,
        delta_squared_sweep,
        format_inverse_property_table,
        generated_laws,
        run_suite,
    )
    from .cochains import derive_differential

    results = run_suite(out=out)
    ok = all(r.passed for r in results)
    if args.grid:
        laws = [derive_differential(ir) for ir in generated_laws(None)]
        checked, failures = delta_squared_sweep(laws, all_modules(range(2, 6), range(2, 5)), random_samples=0, exhaustive=True)
        status = "PASS" if not failures else "FAIL"
        print(f"[{status}] grid: delta^2 = 0 for {len(laws)} laws over {checked} law/module pairs, {len(failures)} failures", file=out)
        ok &= not failures
    for r in results:
        if r.data.get("mFindings"):
            print(f"M-composition findings (loop, x, y): {r.data['mFindings']}", file=out)
        if r.number == 7 and "rows" in r.data:
            print("inverse-property counts:", file=out)
            print(format_inverse_property_table(r.data["rows"]), file=out)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loopcoh", description="Cohomology of loop extensions by one-nested laws.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="parse an identity and print its IR as JSON")
    sp.add_argument("identity")
    sp.add_argument("--cancel", action="store_true", help="cancel shared leading left pairings")
    sp.set_defaults(func=cmd_parse)

    law_help = f"built-in name ({', '.join(BUILTIN_LAWS)}) or an identity string"

    def common(sp, module=True):
        sp.add_argument("--law", required=True, help=law_help)
        if module:
            sp.add_argument("--n", type=int, required=True, help="order of the quotient Z/n")
            sp.add_argument("--m", type=int, required=True, help="order of the kernel Z/m")
            sp.add_argument("--t", type=int, default=1, help="action generator (default 1)")
            sp.add_argument("--method", choices=["auto", "linear", "brute"], default="auto")
            sp.add_argument("--limit", type=int, default=None, help="brute-force ceiling (default LOOPCOH_BRUTE_LIMIT or 10^6)")

    sp = sub.add_parser("diff", help="print the differential of a law")
    common(sp, module=False)
    sp.add_argument("--output", choices=["text", "json"], default="text")
    sp.add_argument("--positions", action="store_true", help="name arguments by position instead of variable")
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("cohomology", help="cocycle, coboundary and H^2 counts")
    common(sp)
    sp.add_argument("--output", choices=["json", "csv", "text"], default="json")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("classify", help="one extension loop per cohomology class")
    common(sp)
    sp.add_argument("--output", choices=["json", "text"], default="json")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify-paper", help="run the fixed reproduction suite")
    sp.add_argument("--grid", action="store_true", help="also sweep delta^2 = 0 over all small three-variable laws")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (LawError, UsageError, SizeLimitError, ExtensionError, ValueError) as exc:
        print(f"error: {exc}", file=err)
    return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
