"""Command-line interface: ``pgrdim <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import catalog, groups
from .rdim import min_faithful_dim, min_faithful_dim_bruteforce
from .reptheory import character_table, degree_census


def _emit_rows(rows: list[dict], fmt: str, columns: list[str]) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v)
                        for k, v in r.items()})
        return buf.getvalue().rstrip("\n")
    widths = {c: max(len(c), *(len(str(r.get(c))) for r in rows)) for c in columns}
    lines = ["  ".join(c.rjust(widths[c]) for c in columns)]
    lines += ["  ".join(str(r.get(c)).rjust(widths[c]) for c in columns) for r in rows]
    return "\n".join(lines)


def cmd_fp_table(args) -> int:
    rows = catalog.fp_table(args.p, args.nmax)
    print(_emit_rows(rows, args.format, ["p", "n", "fp", "eq2_max", "argmax_r"]))
    if args.figure:
        from .plotting import plot_fp_table
        plot_fp_table(rows, args.figure)
    return 0


def cmd_build(args) -> int:
    G = catalog.build(args.spec, args.beta)
    summary = {"spec": args.spec, **catalog.group_summary(G)}
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        for k, v in summary.items():
            print(f"{k}: {v}")
    return 0


def cmd_chartab(args) -> int:
    G = catalog.build(args.spec, args.beta)
    table = character_table(G)
    print(table.to_json() if args.format == "json" else table.to_csv(), end="")
    if args.format == "json":
        print()
    if args.figure:
        from .plotting import plot_degree_census
        plot_degree_census(degree_census(table), args.figure, title=args.spec)
    return 0


def cmd_rdim(args) -> int:
    G = catalog.build(args.spec, args.beta)
    table = character_table(G)
    solve = min_faithful_dim_bruteforce if args.brute_force else min_faithful_dim
    res = solve(G, None, table)
    print(json.dumps({"value": res.value, "witness": list(res.witness),
                      "witness_degrees": list(res.witness_degrees),
                      "central_vectors": [list(v) for v in res.central_vectors],
                      "method": res.method}))
    return 0


def cmd_verify(args) -> int:
    reports = catalog.theorem_table(args.p, args.nmax, brute_force=not args.no_brute_force)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
        print(catalog.LIMITATION_NOTE, file=sys.stderr)
    else:
        rows = [{**r.to_dict(), "fp": r.fp, "eq2": r.eq2, "omega1_bound": r.omega1_bound,
                 "degrees": "+".join(map(str, r.witness_degrees)) or "-",
                 "pass": "PASS" if r.passed else "FAIL"} for r in reports]
        print(_emit_rows(rows, "text", ["p", "n", "claimed", "computed", "degrees",
                                        "fp", "eq2", "omega1_bound", "pass", "witness"]))
        for r in reports:
            if r.error:
                print(f"error at n={r.n}: {r.error}")
        if args.p == 2 and args.nmax >= 7:
            variants = catalog.beta_variants_128()
            print("order-128 witness, rdim per beta choice: "
                  + ", ".join(f"{k}={v}" for k, v in variants.items()))
        print(catalog.LIMITATION_NOTE)
    if args.figure:
        from .plotting import plot_theorem_table
        plot_theorem_table(reports, args.figure)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    seed = argparse.ArgumentParser(add_help=False)
    seed.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                      help="seed for sampled checks (default 0)")
    parser = argparse.ArgumentParser(
        prog="pgrdim", parents=[seed],
        description="Exact character tables and representation dimensions of p-groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fp-table", parents=[seed], help="f_p(n) and the central-rank bound")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--figure", help="write a plot to this file")
    p.set_defaults(func=cmd_fp_table)

    p = sub.add_parser("build", parents=[seed], help="summarise a group")
    p.add_argument("--spec", required=True)
    p.add_argument("--beta", help="beta table file for heisenberg(...)")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("chartab", parents=[seed], help="export a character table")
    p.add_argument("--spec", required=True)
    p.add_argument("--beta")
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--figure", help="write a degree histogram to this file")
    p.set_defaults(func=cmd_chartab)

    p = sub.add_parser("rdim", parents=[seed], help="minimal faithful dimension")
    p.add_argument("--spec", required=True)
    p.add_argument("--beta")
    p.add_argument("--brute-force", action="store_true")
    p.set_defaults(func=cmd_rdim)

    p = sub.add_parser("verify", parents=[seed], help="reproduce the maximal-rdim table")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--figure", help="write a plot to this file")
    p.add_argument("--no-brute-force", action="store_true",
                   help="skip the exhaustive cross-check of each witness")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    groups.sampling_seed = getattr(args, "seed", 0)
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"pgrdim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
