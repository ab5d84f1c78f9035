"""Theorem checks on random GF(2)/GF(3) matroids beyond the exhaustive range.

Pairs are formed inside the random sample plus each matroid's truncations and
the uniform matroid of its size and rank, so every sample has partners.
"""

import argparse
from dataclasses import dataclass

from flagmono.catalog import Catalog, CatalogEntry, random_linear_catalog
from flagmono.matroid import truncation, uniform
from flagmono.suite import run_suite


@dataclass
class Config:
    count: int = 40
    n_min: int = 7
    n_max: int = 9
    seed: int = 0
    checks: tuple = ("h-routes", "flag-monotone", "coarse-monotone", "strong-monotone", "duality", "uniform-max")


def build(cfg):
    base = random_linear_catalog(cfg.count, (cfg.n_min, cfg.n_max), cfg.seed)
    entries = list(base.entries)
    seen = {e.matroid for e in entries}
    for e in base.entries:
        M = e.matroid
        extra = [(f"U({M.rank},{M.n})", uniform(M.rank, M.n))]
        extra += [(f"{e.name}/T{k}", truncation(M, k)) for k in range(1, M.rank)]
        for name, N in extra:
            if N not in seen:
                seen.add(N)
                entries.append(CatalogEntry(name, N, "derived"))
    return Catalog(entries)


def main(cfg):
    cat = build(cfg)
    print(f"{len(cat)} matroids (seed {cfg.seed})")
    report = run_suite(cat, cfg.checks, seed=cfg.seed)
    for c in report.checks.values():
        print(f"{'PASS' if c.failed == 0 else 'FAIL':4} {c.name:22} {c.passed:>6}/{c.scheduled:<6} {c.seconds:7.1f}s")
    return 0 if report.ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--n-min", type=int, default=Config.n_min)
    p.add_argument("--n-max", type=int, default=Config.n_max)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    raise SystemExit(main(Config(a.count, a.n_min, a.n_max, a.seed)))
