"""Time the f_C / g_C duality certificate per (n, rank) over rank-preserving pairs."""

import argparse
import time
from collections import defaultdict
from dataclasses import dataclass

from flagmono.catalog import exhaustive_catalog, find_weak_pairs, isomorphism_representatives
from flagmono.stanley_reisner import verify_injectivity_chain


@dataclass
class Config:
    n_max: int = 5
    iso_sources: bool = False


def main(cfg):
    cat = exhaustive_catalog(cfg.n_max)
    sources = isomorphism_representatives(cat.matroids) if cfg.iso_sources else None
    pairs = find_weak_pairs(cat, rank_preserving=True, sources=sources)
    stats = defaultdict(lambda: [0, 0.0, 0])
    for A, B in pairs:
        t = time.perf_counter()
        rep = verify_injectivity_chain(A, B)
        s = stats[A.n, A.rank]
        s[0] += 1
        s[1] += time.perf_counter() - t
        s[2] += not rep.ok
    print(f"{'n':>2} {'rank':>4} {'pairs':>8} {'total s':>9} {'ms/pair':>8} {'fails':>5}")
    for (n, r), (count, secs, fails) in sorted(stats.items()):
        print(f"{n:>2} {r:>4} {count:>8} {secs:>9.2f} {1000 * secs / count:>8.3f} {fails:>5}")
    return 0 if not any(s[2] for s in stats.values()) else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--n-max", type=int, default=Config.n_max)
    p.add_argument("--iso-sources", action="store_true")
    a = p.parse_args()
    raise SystemExit(main(Config(a.n_max, a.iso_sources)))
