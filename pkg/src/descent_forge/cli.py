"""Command line entry point: ``descent-forge <command> ...``.

Exit codes: 0 every asserted verdict passed, 1 a verdict failed, 2 invalid
input, 3 a budget or memory guard fired.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .errors import BudgetExceeded, InvalidInstance
from .fuzz import corrupted_gamma, fuzz
from .instances import builtin_names, load_builtin, load_instance
from .report import SUITES, dumps, failed, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3

COMMAND_SUITE = {"check": None, "endos": "prop31", "invertibles": "gamma", "comatrix": "comatrix"}


def _emit_json(path: Optional[str], payload: str) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(payload)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _print_verdicts(report: dict, out) -> None:
    inst = report["instance"]
    cert = report["certificate"]
    print(f"instance {inst['name']}  p={inst['p']}  dim B={inst['dim_B']}  dim S={inst['dim_S']}", file=out)
    print(f"certificate: {cert['kind'] if cert else 'none'}", file=out)
    if "guard" in inst:
        g = inst["guard"]
        print(f"guard fired: {g['guard']} (need {g['requested']}, limit {g['limit']})", file=out)
    for name, v in report["verdicts"].items():
        if v["status"] != "skipped":
            print(f"  {name:<32} {v['status']:<9} gate={v['gate']}", file=out)


def _print_endos(report: dict, out) -> None:
    mon = report["monoids"]
    if mon is None:
        print("no monoid data (extension not injective or guard fired)", file=out)
        return
    end = mon["End"]
    print(f"|I_l| = {len(mon['I_l'])}  |I_r| = {len(mon['I_r'])}  |End| = {end['size']}  "
          f"|Aut| = {len(mon['Aut'])}", file=out)
    print("End composition table (row ∘ column):", file=out)
    for row in end["table"]:
        print("  " + " ".join(str(x) for x in row), file=out)


def _print_invertibles(report: dict, out) -> None:
    mon = report["monoids"]
    if mon is None or "Inv" not in mon:
        print("no invertible data (extension not injective or guard fired)", file=out)
        return
    inv = mon["Inv"]
    labels = mon["subbimodules"]
    print(f"|Inv| = {len(inv['members'])}  |Aut| = {len(mon['Aut'])}", file=out)
    for k in inv["members"]:
        print(f"  {labels[k]}", file=out)
    g = report["gamma"]["gamma_inv"]
    print(f"Γ on Inv: bijective={g['bijective']} homomorphism={g['homomorphism']}", file=out)


def _print_comatrix(report: dict, out) -> None:
    g0 = report["gamma0"]
    if g0 is None:
        print("instance has no comatrix block", file=out)
        return
    print(f"|End(Σ)| = {g0['End_sigma']['size']}  |Aut(Σ)| = {len(g0['End_sigma']['Aut'])}", file=out)
    for key in ("gamma0", "gamma0_prime", "gamma0_inv"):
        w = g0[key]
        print(f"  {key:<13} bijective={w['bijective']} homomorphism={w['homomorphism']}", file=out)
    print(f"  hat injective={g0['hat']['injective']} multiplicative={g0['hat']['multiplicative']} "
          f"triangle={g0['triangle']['holds']}", file=out)


VIEWS = {"check": _print_verdicts, "endos": _print_endos, "invertibles": _print_invertibles,
         "comatrix": _print_comatrix}


def _exit_code(report: dict) -> int:
    if "guard" in report["instance"]:
        return EXIT_GUARD
    return EXIT_FAIL if failed(report) else EXIT_OK


def _run_instance(args) -> int:
    spec = load_instance(args.file).with_budgets(args.subspace_budget, args.endo_budget)
    which = COMMAND_SUITE[args.command] or args.which
    report = run_suite(spec, which, timing=args.timing)
    out = sys.stderr if args.json == "-" else sys.stdout
    if args.command != "check":
        _print_verdicts(report, out)
    VIEWS[args.command](report, out)
    _emit_json(args.json, dumps(report))
    return _exit_code(report)


def _run_fuzz(args) -> int:
    rep = fuzz(args.p, args.max_dim, args.max_dim_b, args.count, args.seed)
    out = sys.stderr if args.json == "-" else sys.stdout
    print(f"fuzz p={rep.p} dims<={rep.max_dim_s}/{rep.max_dim_b} seed={rep.seed}: "
          f"{rep.certified} certified of {rep.attempted} attempted, "
          f"{len(rep.violations)} with violations", file=out)
    for v in rep.violations:
        print(f"  violation at seed={v['seed']} index={v['index']}: "
              + ", ".join(x.get("verdict", x.get("map", "?")) for x in v["violations"]), file=out)
    _emit_json(args.json, json.dumps(rep.to_dict(), indent=2, ensure_ascii=False) + "\n")
    return EXIT_FAIL if rep.violations else EXIT_OK


def _run_selftest(args) -> int:
    code = EXIT_OK
    for name in builtin_names():
        report = run_suite(load_builtin(name))
        bad = failed(report)
        status = "ok" if not bad and "guard" not in report["instance"] else "FAIL " + ",".join(bad)
        print(f"{name:<26} {status}")
        if bad:
            code = EXIT_FAIL
    # a corrupted Γ must be caught
    mutated = run_suite(load_builtin("dual-numbers(2)"), "gamma", gamma_fn=corrupted_gamma())
    caught = "gamma-iso" in failed(mutated)
    print(f"{'mutation self-test':<26} {'caught' if caught else 'MISSED'}")
    if not caught:
        code = EXIT_FAIL
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="descent-forge",
                                     description="Exact descent checks for finite algebra extensions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
        sp.add_argument("--subspace-budget", type=int, default=None,
                        help="max sub-bimodule candidates to enumerate")
        sp.add_argument("--endo-budget", type=int, default=None,
                        help="max coring endomorphism candidates to enumerate")
        sp.add_argument("--timing", action="store_true", help="record per-stage wall time in the report")

    for name, help_ in (("check", "run every check"),
                        ("endos", "coring endomorphisms and sub-bimodule monoids"),
                        ("invertibles", "invertible sub-bimodules and coring automorphisms"),
                        ("comatrix", "comatrix coring checks")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="instance file or built-in name, e.g. 'mat2(2)'")
        common(sp)
        if name == "check":
            sp.add_argument("--which", choices=SUITES, default="all")

    fz = sub.add_parser("fuzz", help="random instances at a fixed seed")
    fz.add_argument("--p", type=int, default=2, help="field characteristic")
    fz.add_argument("--max-dim", type=int, default=2, help="max dim of the top algebra")
    fz.add_argument("--max-dim-b", type=int, default=None, help="max dim of the base (default --max-dim)")
    fz.add_argument("--count", type=int, default=100, help="number of certified instances")
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--json", metavar="OUT", help="write the fuzz report to OUT ('-' for stdout)")

    sub.add_parser("selftest", help="all built-ins plus the mutation check")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fuzz":
            return _run_fuzz(args)
        if args.command == "selftest":
            return _run_selftest(args)
        return _run_instance(args)
    except InvalidInstance as exc:
        print("invalid instance:", file=sys.stderr)
        for e in exc.errors:
            print(f"  {e}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"guard fired: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
