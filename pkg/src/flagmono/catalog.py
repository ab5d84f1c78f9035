"""Catalogs of small matroids and discovery of weak/strong pairs among them."""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field

from .errors import CapExceeded
from .maps import is_strong_map, is_weak_map
from .matroid import from_bases, linear_matroid, mask, near_pencil, relabel, uniform

DEFAULT_CAP = 7


def enumeration_cap():
    return int(os.environ.get("FLAGMONO_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matroid: object
    provenance: str


@dataclass
class Catalog:
    entries: list = field(default_factory=list)

    def __post_init__(self):
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("catalog names must be unique")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def matroids(self):
        return [e.matroid for e in self.entries]

    def extend(self, other):
        return Catalog(self.entries + list(other.entries))


def _exchange_constraints(subsets):
    """Basis-exchange constraints keyed by the last index they mention.

    Each constraint (i, j, witnesses) says: if subsets i and j are both bases
    then at least one subset in the bitmask ``witnesses`` is a basis.
    """
    index = {s: k for k, s in enumerate(subsets)}
    by_trigger = [[] for _ in subsets]
    for i, bi in enumerate(subsets):
        for j, bj in enumerate(subsets):
            if i == j:
                continue
            diff = bi & ~bj
            only_j = bj & ~bi
            while diff:
                x = diff & -diff
                diff ^= x
                witnesses = 0
                top = max(i, j)
                ys = only_j
                while ys:
                    y = ys & -ys
                    ys ^= y
                    w = index[(bi ^ x) | y]
                    witnesses |= 1 << w
                    top = max(top, w)
                by_trigger[top].append((1 << i | 1 << j, witnesses))
    return by_trigger


def enumerate_bases(n, r):
    """Every labeled basis family of rank r on [n], by depth-first search with pruning."""
    subsets = [mask(c) for c in itertools.combinations(range(1, n + 1), r)]
    constraints = _exchange_constraints(subsets)
    found = []

    def ok(chosen, k):
        for pair, witnesses in constraints[k]:
            if chosen & pair == pair and not chosen & witnesses:
                return False
        return True

    def dfs(k, chosen):
        if k == len(subsets):
            if chosen:
                found.append(frozenset(subsets[i] for i in range(k) if chosen >> i & 1))
            return
        with_k = chosen | 1 << k
        if ok(with_k, k):
            dfs(k + 1, with_k)
        if ok(chosen, k):
            dfs(k + 1, chosen)

    dfs(0, 0)
    return found


def enumerate_matroids(n, r, cap=None):
    cap = enumeration_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n={n} exceeds enumeration cap {cap} (set FLAGMONO_CAP)")
    if not 0 <= r <= n:
        return Catalog()
    families = sorted(enumerate_bases(n, r), key=lambda f: sorted(f))
    return Catalog(
        [
            CatalogEntry(f"M{n}r{r}#{k:05d}", from_bases(n, fam), "enumerated")
            for k, fam in enumerate(families)
        ]
    )


def exhaustive_catalog(n_max, cap=None):
    cat = Catalog()
    for n in range(n_max + 1):
        for r in range(n + 1):
            cat = cat.extend(enumerate_matroids(n, r, cap))
    return cat


def named_catalog():
    entries = [
        ("U(2,3)", uniform(2, 3)),
        ("U(3,4)", uniform(3, 4)),
        ("U(2,4)", uniform(2, 4)),
        ("U(2,2)", uniform(2, 2)),
        ("U(1,2)", uniform(1, 2)),
        ("parallel(2,3)", from_bases(3, [(1, 2), (1, 3)])),
        ("U(3,4)/34", from_bases(4, [(1, 2, 3), (1, 2, 4)])),
        ("near_pencil(5)", near_pencil(5)),
        ("Fano", linear_matroid(2, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)])),
    ]
    return Catalog([CatalogEntry(name, M, "named") for name, M in entries])


def random_linear_catalog(count, n_range, seed, primes=(2, 3)):
    rng = random.Random(seed)
    entries = []
    for k in range(count):
        n = rng.randint(*n_range)
        p = rng.choice(primes)
        d = rng.randint(1, min(n, 5))
        columns = [tuple(rng.randrange(p) for _ in range(d)) for _ in range(n)]
        entries.append(
            CatalogEntry(f"lin{p}#{k:04d}-n{n}", linear_matroid(p, columns), f"random-linear(seed={seed})")
        )
    return Catalog(entries)


def isomorphism_representatives(matroids):
    """One matroid per isomorphism class, using orbits under all relabelings."""
    seen = set()
    reps = []
    perms = {}
    for M in matroids:
        if M in seen:
            continue
        reps.append(M)
        if M.n not in perms:
            perms[M.n] = list(itertools.permutations(range(1, M.n + 1)))
        for p in perms[M.n]:
            seen.add(relabel(M, p))
    return reps


def find_weak_pairs(cat, rank_preserving=False, include_identity=False, sources=None):
    """Ordered pairs (A, B) of catalog matroids with a weak map A -> B.

    ``sources`` optionally restricts the A side (e.g. to isomorphism representatives).
    """
    targets = {}
    for M in cat.matroids:
        targets.setdefault(M.n, []).append(M)
    pairs = []
    for A in sources if sources is not None else cat.matroids:
        for B in targets.get(A.n, []):
            if B.rank > A.rank or (rank_preserving and B.rank != A.rank):
                continue
            if A == B and not include_identity:
                continue
            if B.rank == A.rank:
                weak = B.bases <= A.bases
            else:
                weak = bool(is_weak_map(A, B))
            if weak:
                pairs.append((A, B))
    return pairs


def find_strong_pairs(cat, include_identity=False, sources=None):
    return [
        (A, B)
        for A, B in find_weak_pairs(cat, include_identity=include_identity, sources=sources)
        if is_strong_map(A, B)
    ]
