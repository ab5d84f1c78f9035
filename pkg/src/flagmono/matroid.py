"""Matroids on [n] stored by their bases, with rank, closure and flats.

Subsets of the ground set are int bitmasks throughout: element ``e`` (1-based)
is bit ``e - 1``.  Public functions also accept any iterable of elements
wherever a subset is expected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (
    EmptyBases,
    GroundSetTooLarge,
    InvalidRank,
    NotAMatroid,
    NotAPermutation,
    NotPrime,
    TooSmall,
)

MAX_N = 16
BFS_THRESHOLD = 12


def popcount(m):
    return bin(m).count("1")


def mask(elements):
    """Bitmask of an iterable of 1-based elements (ints pass through)."""
    if isinstance(elements, int):
        return elements
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements(m):
    """Sorted tuple of the 1-based elements in bitmask ``m``."""
    out = []
    e = 1
    while m:
        if m & 1:
            out.append(e)
        m >>= 1
        e += 1
    return tuple(out)


def lex_key(m, n):
    """Sort key realising the lexicographic order on subsets of [n].

    ``F < G`` iff the smallest element of the symmetric difference lies in F.
    """
    if n == 0:
        return 0
    return -int(format(m, f"0{n}b")[::-1], 2)


def _check_n(n):
    if n < 0:
        raise InvalidRank(f"ground set size must be >= 0, got {n}")
    if n > MAX_N:
        raise GroundSetTooLarge(f"n={n} exceeds the cap of {MAX_N}")


@dataclass(frozen=True)
class Matroid:
    n: int
    bases: frozenset

    @property
    def rank(self):
        return popcount(next(iter(self.bases)))

    @property
    def ground(self):
        return (1 << self.n) - 1

    @cached_property
    def independent_table(self):
        """bytearray indexed by subset mask, 1 where the subset is independent."""
        table = bytearray(1 << self.n)
        for b in self.bases:
            table[b] = 1
        # downward closure, visiting supersets before their subsets
        for m in range((1 << self.n) - 1, -1, -1):
            if table[m]:
                x = m
                while x:
                    low = x & -x
                    table[m ^ low] = 1
                    x ^= low
        return table

    @cached_property
    def rank_table(self):
        indep = self.independent_table
        table = bytearray(1 << self.n)
        for m in range(1, 1 << self.n):
            if indep[m]:
                table[m] = popcount(m)
            else:
                best = 0
                x = m
                while x:
                    low = x & -x
                    v = table[m ^ low]
                    if v > best:
                        best = v
                    x ^= low
                table[m] = best
        return table

    @cached_property
    def closure_table(self):
        return [_closure(self.rank_table, self.n, m) for m in range(1 << self.n)]

    def sorted_bases(self):
        return sorted(elements(b) for b in self.bases)

    def __repr__(self):
        bases = " ".join("".join(map(str, b)) or "{}" for b in self.sorted_bases())
        return f"Matroid(n={self.n}, rank={self.rank}, bases=[{bases}])"


def _exchange_failure(bases):
    """First (B1, B2, x) violating basis exchange, or None."""
    for b1 in bases:
        for b2 in bases:
            if b1 == b2:
                continue
            only2 = b2 & ~b1
            diff = b1 & ~b2
            while diff:
                x = diff & -diff
                diff ^= x
                base = b1 ^ x
                ys = only2
                while ys:
                    y = ys & -ys
                    ys ^= y
                    if base | y in bases:
                        break
                else:
                    return b1, b2, x
    return None


def from_bases(n, bases):
    """Validated matroid on [n] with the given basis family."""
    _check_n(n)
    family = set()
    for b in bases:
        m = mask(b)
        if m >> n:
            raise NotAMatroid(f"basis {elements(m)} is not a subset of [{n}]")
        family.add(m)
    if not family:
        raise EmptyBases("a matroid needs at least one basis")
    sizes = {popcount(b) for b in family}
    if len(sizes) > 1:
        raise NotAMatroid(f"bases have different sizes {sorted(sizes)}")
    bad = _exchange_failure(family)
    if bad is not None:
        b1, b2, x = bad
        raise NotAMatroid(
            f"basis exchange fails for B1={elements(b1)}, x={elements(x)[0]} "
            f"against B2={elements(b2)}",
            witness=(elements(b1), elements(x)[0], elements(b2)),
        )
    return Matroid(n, frozenset(family))


def uniform(r, n):
    _check_n(n)
    if not 0 <= r <= n:
        raise InvalidRank(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, frozenset(mask(c) for c in itertools.combinations(range(1, n + 1), r)))


def near_pencil(n):
    """Rank 3: the points 1..n-1 on one line, n off it."""
    if n < 3:
        raise TooSmall(f"near-pencil needs n >= 3, got {n}")
    _check_n(n)
    return Matroid(
        n, frozenset(mask((a, b, n)) for a, b in itertools.combinations(range(1, n), 2))
    )


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def rank_mod_p(vectors, p):
    """Rank over GF(p) of a list of integer vectors."""
    rows = [[v % p for v in vec] for vec in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        prow = [v * inv % p for v in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        rank += 1
    return rank


def linear_matroid(p, columns):
    """Column matroid of a matrix over GF(p)."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    columns = [tuple(c) for c in columns]
    n = len(columns)
    _check_n(n)
    if len({len(c) for c in columns}) > 1:
        raise ValueError("all columns must have the same dimension")
    r = rank_mod_p(columns, p)
    bases = frozenset(
        mask(idx)
        for idx in itertools.combinations(range(1, n + 1), r)
        if rank_mod_p([columns[i - 1] for i in idx], p) == r
    )
    return Matroid(n, bases)


def truncation(M, k):
    """Matroid whose bases are the size-k independent sets of M."""
    if not 0 <= k <= M.rank:
        raise InvalidRank(f"truncation rank {k} outside 0..{M.rank}")
    if k == M.rank:
        return M
    indep = M.independent_table
    bases = frozenset(
        m
        for m in (mask(c) for c in itertools.combinations(range(1, M.n + 1), k))
        if indep[m]
    )
    return Matroid(M.n, bases)


def rank(M, G):
    return M.rank_table[mask(G)]


def closure(M, G):
    g = mask(G)
    if M.n <= BFS_THRESHOLD:
        return M.closure_table[g]
    return _closure(M.rank_table, M.n, g)


def _closure(table, n, g):
    rg = table[g]
    out = g
    for i in range(n):
        bit = 1 << i
        if not g & bit and table[g | bit] == rg:
            out |= bit
    return out


def loops(M):
    return closure(M, 0)


def is_independent(M, G):
    return bool(M.independent_table[mask(G)])


def relabel(M, perm):
    """Image of M under the bijection ``i -> perm[i-1]`` (or ``perm[i]`` for a dict)."""
    if isinstance(perm, dict):
        images = [perm.get(i) for i in range(1, M.n + 1)]
    else:
        images = list(perm)
    if sorted(x for x in images if x is not None) != list(range(1, M.n + 1)) or len(images) != M.n:
        raise NotAPermutation(f"{perm!r} is not a permutation of [{M.n}]")
    bits = [1 << (images[i] - 1) for i in range(M.n)]

    def image(m):
        out = 0
        i = 0
        while m:
            if m & 1:
                out |= bits[i]
            m >>= 1
            i += 1
        return out

    return Matroid(M.n, frozenset(image(b) for b in M.bases))


@dataclass(frozen=True, eq=False)
class FlatLattice:
    """Graded lattice of closed sets.

    ``rank`` is the rank of the top element; chains of proper flats have flags
    inside ``{1, ..., r}`` with ``r = rank - 1`` (``r = 0`` for rank <= 1).
    """

    n: int
    rank: int
    flats_by_rank: tuple
    zero_flat: int
    covers: dict
    rank_of: dict

    @property
    def r(self):
        return max(self.rank - 1, 0)

    @property
    def top(self):
        return self.flats_by_rank[-1][0]

    @cached_property
    def flats(self):
        return frozenset(self.rank_of)

    @cached_property
    def key(self):
        return (self.n, frozenset(self.rank_of.items()))

    def cover_containing(self, F, x):
        """The flat covering F that contains the element bit ``x``."""
        for G in self.covers[F]:
            if G & x:
                return G
        raise ValueError(f"no cover of {elements(F)} contains {elements(x)}")

    @classmethod
    def from_ranked_flats(cls, n, rank_of):
        top_rank = max(rank_of.values())
        by_rank = [[] for _ in range(top_rank + 1)]
        for F, k in rank_of.items():
            by_rank[k].append(F)
        for level in by_rank:
            level.sort(key=lambda m: lex_key(m, n))
        covers = {}
        for k, level in enumerate(by_rank):
            above = by_rank[k + 1] if k < top_rank else []
            for F in level:
                covers[F] = tuple(G for G in above if G & F == F)
        (zero,) = by_rank[0]
        return cls(
            n=n,
            rank=top_rank,
            flats_by_rank=tuple(tuple(level) for level in by_rank),
            zero_flat=zero,
            covers=covers,
            rank_of=dict(rank_of),
        )


def flats(M, method="auto"):
    """Set of flats of M, by closing every subset or by covering BFS."""
    if method == "auto":
        method = "subsets" if M.n <= BFS_THRESHOLD else "bfs"
    if method == "subsets":
        return {closure(M, m) for m in range(1 << M.n)}
    if method != "bfs":
        raise ValueError(f"unknown flat enumeration method {method!r}")
    start = loops(M)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for F in frontier:
            rest = M.ground & ~F
            while rest:
                x = rest & -rest
                G = closure(M, F | x)
                rest &= ~G
                if G not in seen:
                    seen.add(G)
                    nxt.append(G)
        frontier = nxt
    return seen


@lru_cache(maxsize=1 << 16)
def flat_lattice(M, method="auto"):
    table = M.rank_table
    return FlatLattice.from_ranked_flats(M.n, {F: table[F] for F in flats(M, method)})
