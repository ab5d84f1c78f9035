"""Flag h-vectors of one matroid per isomorphism class, as CSV.

Also records the slack h_S(U(r,n)) - h_S(M) against the uniform matroid of the
same size and rank, which is never negative.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from flagmono.catalog import exhaustive_catalog, isomorphism_representatives
from flagmono.io import rank_set_bits
from flagmono.matroid import flat_lattice, uniform
from flagmono.order_complex import all_rank_sets, flag_h_vector


@dataclass
class Config:
    n_max: int = 5
    out: str = "-"


def rows(cfg):
    reps = isomorphism_representatives(exhaustive_catalog(cfg.n_max).matroids)
    for k, M in enumerate(reps):
        L = flat_lattice(M)
        h = flag_h_vector(L)
        hU = flag_h_vector(flat_lattice(uniform(M.rank, M.n)))
        for S in all_rank_sets(L.r):
            yield {
                "class": k,
                "n": M.n,
                "rank": M.rank,
                "bases": " ".join("".join(map(str, b)) or "0" for b in M.sorted_bases()),
                "S": rank_set_bits(S),
                "h_S": h[S],
                "slack_vs_uniform": hU[S] - h[S],
            }


def main(cfg):
    out = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    writer = None
    for row in rows(cfg):
        if writer is None:
            writer = csv.DictWriter(out, fieldnames=list(row))
            writer.writeheader()
        writer.writerow(row)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--n-max", type=int, default=Config.n_max)
    p.add_argument("--out", default=Config.out)
    a = p.parse_args()
    main(Config(a.n_max, a.out))
