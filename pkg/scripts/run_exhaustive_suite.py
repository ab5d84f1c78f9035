"""Run every theorem check over all labeled matroids up to a given size.

    python scripts/run_exhaustive_suite.py --n-max 6 --out results/suite_n6.json
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from flagmono.catalog import exhaustive_catalog
from flagmono.suite import CHECKS, run_suite


@dataclass
class Config:
    n_max: int = 6
    seed: int = 0
    jobs: int = 1
    checks: tuple = tuple(CHECKS)
    out: str = "results/suite.json"


def main(cfg):
    t0 = time.perf_counter()
    cat = exhaustive_catalog(cfg.n_max)
    print(f"catalog: {len(cat)} labeled matroids, n <= {cfg.n_max} ({time.perf_counter() - t0:.1f}s)")
    report = run_suite(cat, cfg.checks, parallelism=cfg.jobs, seed=cfg.seed)
    for c in report.checks.values():
        print(f"{'PASS' if c.failed == 0 else 'FAIL':4} {c.name:22} {c.passed:>8}/{c.scheduled:<8} {c.seconds:8.1f}s")
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.out).write_text(report.to_json())
    print(f"report written to {cfg.out}; total {time.perf_counter() - t0:.1f}s")
    return 0 if report.ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--n-max", type=int, default=Config.n_max)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--jobs", type=int, default=Config.jobs)
    p.add_argument("--checks", default=",".join(Config.checks))
    p.add_argument("--out", default=Config.out)
    a = p.parse_args()
    raise SystemExit(main(Config(a.n_max, a.seed, a.jobs, tuple(a.checks.split(",")), a.out)))
