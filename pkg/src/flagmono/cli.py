"""Command line entry point: ``flagmono {enumerate,hvector,check-pair,suite}``."""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import (
    Catalog,
    enumerate_matroids,
    exhaustive_catalog,
    isomorphism_representatives,
    random_linear_catalog,
)
from .io import flag_vector_to_list, load_matroid, rank_set_bits, rows_to_csv, write_catalog
from .maps import is_strong_map, is_weak_map
from .matroid import flat_lattice
from .order_complex import (
    all_rank_sets,
    coarse_vectors,
    flag_f_vector,
    flag_h_vector,
    independence_f_vector,
    independence_h_vector,
)
from .stanley_reisner import theta_relations, verify_injectivity_chain
from .suite import CHECKS, run_suite


def _emit(data, fmt, out=None):
    out = out or sys.stdout
    if fmt == "csv":
        out.write(rows_to_csv(data if isinstance(data, list) else [data]))
    else:
        out.write(json.dumps(data, indent=2) + "\n")


def cmd_enumerate(args):
    ranks = [args.r] if args.r is not None else range(args.n + 1)
    cat = Catalog()
    for r in ranks:
        cat = cat.extend(enumerate_matroids(args.n, r))
    if args.out:
        write_catalog(cat, args.out)
    else:
        for e in cat:
            print(json.dumps({"name": e.name, "n": e.matroid.n, "bases": [list(b) for b in e.matroid.sorted_bases()]}))
    print(f"{len(cat)} matroids", file=sys.stderr)
    return 0


def sr_table(L):
    h = flag_h_vector(L)
    rows = []
    for S in all_rank_sets(L.r):
        R = theta_relations(L, S)
        rank = R.rank()
        dim = len(R.columns) - rank
        rows.append(
            {
                "S": sorted(S),
                "S_bits": rank_set_bits(S),
                "chains": len(R.columns),
                "relation_rank": rank,
                "quotient_dim": dim,
                "h_S": h[S],
                "agree": dim == h[S],
            }
        )
    return rows


def cmd_hvector(args):
    M = load_matroid(args.file)
    L = flat_lattice(M)
    if args.mode == "sr":
        rows = sr_table(L)
        if args.format == "csv":
            rows = [{k: v for k, v in row.items() if k != "S"} for row in rows]
        _emit(rows, args.format)
        return 0 if all(row["agree"] for row in rows) else 1
    if args.mode == "coarse":
        f, h = coarse_vectors(flag_f_vector(L))
        data = {"f": f, "h": h}
    elif args.mode == "independence":
        data = {"f": independence_f_vector(M), "h": independence_h_vector(M)}
    else:
        f, h = flag_f_vector(L), flag_h_vector(L)
        if args.format == "csv":
            _emit([{"S": rank_set_bits(S), "f": f[S], "h": h[S]} for S in all_rank_sets(L.r)], "csv")
            return 0
        data = {"f": flag_vector_to_list(f), "h": flag_vector_to_list(h)}
    if args.format == "csv":
        data = [{"i": i, "f": fi, "h": hi} for i, (fi, hi) in enumerate(zip(data["f"], data["h"]))]
    _emit(data, args.format)
    return 0


def check_pair(A, B):
    """Verdict dict for a pair of matroids; ``violations`` lists failed theorem checks."""
    weak = is_weak_map(A, B)
    strong = is_strong_map(A, B)
    rank_preserving = bool(weak) and A.rank == B.rank
    details = {"weak_witness": weak.violation, "strong_witness": strong.violation}
    violations = []
    if strong and not weak:
        violations.append("strong map that is not weak")
    monotone = None
    if rank_preserving:
        hA, hB = flag_h_vector(flat_lattice(A)), flag_h_vector(flat_lattice(B))
        monotone = all(hA[S] >= hB[S] for S in hB)
        details["h_A"] = flag_vector_to_list(hA)
        details["h_B"] = flag_vector_to_list(hB)
        report = verify_injectivity_chain(A, B)
        details["dimension_chain"] = report.rows
        if not monotone:
            violations.append("flag h-vector not monotone")
        if not report.ok:
            violations.append("duality certificate failed")
            details["duality_failures"] = report.failures
    elif weak:
        _, hA = coarse_vectors(flag_f_vector(flat_lattice(A)))
        _, hB = coarse_vectors(flag_f_vector(flat_lattice(B)))
        details["coarse_h_A"], details["coarse_h_B"] = hA, hB
        if any(hA[i] < hB[i] for i in range(B.rank)):
            violations.append("coarse h-vector not monotone")
    details["violations"] = violations
    return {
        "weak": bool(weak),
        "strong": bool(strong),
        "rank_preserving": rank_preserving,
        "flag_h_monotone": monotone,
        "details": details,
    }


def cmd_check_pair(args):
    verdict = check_pair(load_matroid(args.a), load_matroid(args.b))
    _emit(verdict, "json")
    return 1 if verdict["details"]["violations"] else 0


def cmd_suite(args):
    cat = exhaustive_catalog(args.n_max)
    if args.random_linear:
        cat = cat.extend(random_linear_catalog(args.random_linear, (args.n_max + 1, args.linear_n_max), args.seed))
    checks = args.checks.split(",") if args.checks else None
    sources = isomorphism_representatives(cat.matroids) if args.iso_sources else None
    report = run_suite(cat, checks, parallelism=args.jobs, seed=args.seed, pair_sources=sources)
    text = report.to_csv() if args.format == "csv" else report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    for c in report.checks.values():
        print(f"{'PASS' if c.failed == 0 else 'FAIL'} {c.name}: {c.passed}/{c.scheduled} in {c.seconds}s", file=sys.stderr)
    return 0 if report.ok else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="flagmono", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="all labeled matroids of a given size and rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hvector", help="flag, coarse, Stanley-Reisner or independence vectors")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--flag", dest="mode", action="store_const", const="flag")
    mode.add_argument("--coarse", dest="mode", action="store_const", const="coarse")
    mode.add_argument("--sr", dest="mode", action="store_const", const="sr")
    mode.add_argument("--independence", dest="mode", action="store_const", const="independence")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_hvector, mode="flag")

    p = sub.add_parser("check-pair", help="weak/strong map verdict and monotonicity for A -> B")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_check_pair)

    p = sub.add_parser("suite", help="run theorem checks over an exhaustive catalog")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--random-linear", type=int, default=0, help="add this many random GF(2)/GF(3) matroids")
    p.add_argument("--linear-n-max", type=int, default=9)
    p.add_argument("--iso-sources", action="store_true", help="only isomorphism-class representatives as map sources")
    p.add_argument("--out")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
