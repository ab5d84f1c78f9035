"""Theorem-verification suite over a catalog of matroids and its weak/strong pairs."""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .catalog import find_weak_pairs
from .io import rows_to_csv
from .maps import is_strong_map
from .matroid import Matroid, flat_lattice, relabel, truncation, uniform
from .order_complex import (
    all_rank_sets,
    chain_of_string,
    chains_of_flag,
    coarse_vectors,
    descent_set,
    flag_f_by_descents,
    flag_f_vector,
    flag_h_by_descents,
    flag_h_by_essential_chains,
    flag_h_vector,
    full_chains,
    independence_h_vector,
    jh_string,
    minimal_completion,
    restrict,
    valid_strings,
)
from .stanley_reisner import quotient_dim, verify_injectivity_chain

RELABELINGS = 50


@dataclass(frozen=True)
class Profile:
    f_flag: dict
    h_flag: dict
    f: tuple
    h: tuple
    h_indep: tuple


@lru_cache(maxsize=1 << 16)
def profile(M):
    L = flat_lattice(M)
    f_flag = flag_f_vector(L)
    f, h = coarse_vectors(f_flag)
    return Profile(f_flag, flag_h_vector(L), tuple(f), tuple(h), tuple(independence_h_vector(M)))


@lru_cache(maxsize=1 << 16)
def _truncation(A, k):
    return truncation(A, k)


def check_h_routes(M):
    L = flat_lattice(M)
    routes = {
        "inclusion_exclusion": flag_h_vector(L),
        "descents": flag_h_by_descents(M, L.r),
        "essential_chains": flag_h_by_essential_chains(L),
        "stanley_reisner": {S: quotient_dim(L, S) for S in all_rank_sets(L.r)},
    }
    bad = [
        {"S": sorted(S), **{name: vec[S] for name, vec in routes.items()}}
        for S in all_rank_sets(L.r)
        if len({vec[S] for vec in routes.values()}) != 1 or routes["inclusion_exclusion"][S] < 0
    ]
    f = flag_f_vector(L)
    if flag_f_by_descents(M, L.r) != f:
        bad.append({"check": "f_S counts strings with descents inside S"})
    if f[frozenset(range(1, L.r + 1))] != sum(routes["inclusion_exclusion"].values()):
        bad.append({"check": "f_r = sum of h_S"})
    return not bad, bad


def check_independence_counterexample():
    A, B = uniform(2, 2), uniform(1, 2)
    hA, hB = independence_h_vector(A), independence_h_vector(B)
    strong = bool(is_strong_map(A, B))
    ok = hA == [1, 0, 0] and hB == [1, 1] and strong and hA[1] < hB[1]
    return ok, {"h_I(U(2,2))": hA, "h_I(U(1,2))": hB, "strong": strong}


def check_flag_monotone(pair):
    A, B = pair
    pA, pB = profile(A), profile(B)
    bad = [
        {"S": sorted(S), "h_A": pA.h_flag[S], "h_B": pB.h_flag[S], "f_A": pA.f_flag[S], "f_B": pB.f_flag[S]}
        for S in pB.h_flag
        if pA.h_flag[S] < pB.h_flag[S] or pA.f_flag[S] < pB.f_flag[S]
    ]
    return not bad, bad


def _coarse_failures(pA, pB, k, label):
    bad = []
    for i in range(k):
        if pA.h[i] < pB.h[i]:
            bad.append({"leg": label, "vector": "h", "i": i, "A": pA.h[i], "B": pB.h[i]})
    for i in range(k + 1):
        a = pA.f[i] if i < len(pA.f) else 0
        b = pB.f[i] if i < len(pB.f) else 0
        if a < b:
            bad.append({"leg": label, "vector": "f", "i": i, "A": a, "B": b})
    return bad


def check_coarse_monotone(pair):
    """Coarse h_i, i < rk(B), and f_i, i <= rk(B), through the truncation factorisation."""
    A, B = pair
    k = B.rank
    T = _truncation(A, k)
    bad = []
    if not is_strong_map(A, T):
        bad.append({"check": "A -> T strong"})
    if T.rank != B.rank or not B.bases <= T.bases:
        bad.append({"check": "T -> B rank-preserving weak"})
    pA, pT, pB = profile(A), profile(T), profile(B)
    bad += _coarse_failures(pA, pT, k, "strong A->T")
    bad += _coarse_failures(pT, pB, k, "rank-preserving T->B")
    bad += _coarse_failures(pA, pB, k, "composite A->B")
    return not bad, bad


def check_strong_monotone(pair):
    A, B = pair
    bad = _coarse_failures(profile(A), profile(B), B.rank, "strong")
    return not bad, bad


def check_independence_monotone(pair):
    A, B = pair
    hA, hB = profile(A).h_indep, profile(B).h_indep
    bad = [{"k": k, "A": a, "B": b} for k, (a, b) in enumerate(zip(hA, hB)) if a < b]
    return not bad, bad


def check_duality(pair):
    report = verify_injectivity_chain(*pair)
    return report.ok, report.failures


def check_bijections(M):
    L = flat_lattice(M)
    bad = []
    fulls = full_chains(L)
    strings = [jh_string(L, D) for D in fulls]
    for S in all_rank_sets(L.r):
        for C in chains_of_flag(L, S):
            mu = minimal_completion(L, C)
            if restrict(L, mu, S) != C or not descent_set(jh_string(L, mu)) <= S:
                bad.append({"check": "nu(mu(C)) = C", "S": sorted(S)})
        for D, s in zip(fulls, strings):
            if descent_set(s) <= S and minimal_completion(L, restrict(L, D, S)) != D:
                bad.append({"check": "mu(nu(D)) = D", "S": sorted(S)})
    if len(set(strings)) != len(fulls) or set(strings) != set(valid_strings(M)):
        bad.append({"check": "full chains <-> valid strings"})
    if any(chain_of_string(M, s) != D for D, s in zip(fulls, strings)):
        bad.append({"check": "string -> chain inverse"})
    return not bad, bad


def check_relabel_invariance(M, rng):
    base = profile(M)
    bad = []
    for _ in range(RELABELINGS):
        perm = list(range(1, M.n + 1))
        rng.shuffle(perm)
        L = flat_lattice(relabel(M, perm))
        if flag_f_vector(L) != base.f_flag or flag_h_vector(L) != base.h_flag:
            bad.append({"perm": perm})
    return not bad, bad


def check_uniform_max(M):
    hM = profile(M).h_flag
    hU = profile(uniform(M.rank, M.n)).h_flag
    bad = [{"S": sorted(S), "h_M": hM[S], "h_U": hU[S]} for S in hM if hM[S] > hU[S]]
    return not bad, bad


# check name -> (kind of subject it runs on, check function)
CHECKS = {
    "h-routes": ("matroid", check_h_routes),
    "independence-counterexample": ("none", check_independence_counterexample),
    "flag-monotone": ("rank-preserving", check_flag_monotone),
    "coarse-monotone": ("weak", check_coarse_monotone),
    "strong-monotone": ("strong", check_strong_monotone),
    "independence-monotone": ("rank-preserving", check_independence_monotone),
    "duality": ("rank-preserving", check_duality),
    "bijections": ("matroid", check_bijections),
    "relabel-invariance": ("matroid", check_relabel_invariance),
    "uniform-max": ("matroid", check_uniform_max),
}


@dataclass
class CheckSummary:
    name: str
    scheduled: int = 0
    passed: int = 0
    failed: int = 0
    seconds: float = 0.0
    failures: list = field(default_factory=list)


@dataclass
class SuiteReport:
    seed: int
    catalog_size: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(c.failed == 0 and c.passed == c.scheduled for c in self.checks.values())

    @property
    def total_scheduled(self):
        return sum(c.scheduled for c in self.checks.values())

    def to_dict(self):
        return {
            "seed": self.seed,
            "catalog_size": self.catalog_size,
            "ok": self.ok,
            "total_scheduled": self.total_scheduled,
            "checks": {name: asdict(c) for name, c in self.checks.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, default=str)

    def to_csv(self):
        return rows_to_csv(
            [
                {k: getattr(c, k) for k in ("name", "scheduled", "passed", "failed", "seconds")}
                for c in self.checks.values()
            ]
        )


def _label(subject, names):
    if isinstance(subject, Matroid):
        return names.get(subject, repr(subject))
    return [names.get(M, repr(M)) for M in subject]


def _run_chunk(args):
    name, subjects, seed, names = args
    _, fn = CHECKS[name]
    passed = 0
    failures = []
    for subject in subjects:
        try:
            if name == "relabel-invariance":
                ok, witness = fn(subject, random.Random(f"{seed}:{names.get(subject)}"))
            elif subject is None:
                ok, witness = fn()
            else:
                ok, witness = fn(subject)
        except Exception as exc:  # a crash inside a check is a reported failure
            ok, witness = False, {"error": repr(exc)}
        if ok:
            passed += 1
        else:
            failures.append({"subject": _label(subject, names) if subject is not None else None, "witness": witness})
    return passed, failures


def schedule(cat, checks, pair_sources=None):
    """Subjects for every requested check; pairs are computed once per kind."""
    cache = {}

    def subjects(kind):
        if kind not in cache:
            if kind == "matroid":
                cache[kind] = list(cat.matroids)
            elif kind == "none":
                cache[kind] = [None]
            elif kind == "rank-preserving":
                cache[kind] = find_weak_pairs(cat, rank_preserving=True, sources=pair_sources)
            elif kind == "weak":
                cache[kind] = find_weak_pairs(cat, sources=pair_sources)
            elif kind == "strong":
                weak = subjects("weak")
                cache[kind] = [(A, B) for A, B in weak if is_strong_map(A, B)]
        return cache[kind]

    return {name: subjects(CHECKS[name][0]) for name in checks}


def run_suite(cat, checks=None, parallelism=1, seed=0, pair_sources=None):
    checks = list(CHECKS) if checks is None else list(checks)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    names = {e.matroid: e.name for e in cat}
    report = SuiteReport(seed=seed, catalog_size=len(cat))
    plan = schedule(cat, checks, pair_sources)
    pool = ProcessPoolExecutor(parallelism) if parallelism > 1 else None
    try:
        for name in checks:
            subjects = plan[name]
            start = time.perf_counter()
            summary = CheckSummary(name, scheduled=len(subjects))
            if pool is None:
                results = [_run_chunk((name, subjects, seed, names))]
            else:
                size = max(1, len(subjects) // (parallelism * 8))
                chunks = [(name, subjects[i : i + size], seed, names) for i in range(0, len(subjects), size)]
                results = pool.map(_run_chunk, chunks)
            for passed, failures in results:
                summary.passed += passed
                summary.failures.extend(failures)
            summary.failed = len(summary.failures)
            summary.seconds = round(time.perf_counter() - start, 3)
            report.checks[name] = summary
    finally:
        if pool is not None:
            pool.shutdown()
    return report

