"""Chains of flats, flag f/h-vectors and the Jordan-Hoelder string machinery.

A chain is a tuple of proper flats (bitmasks, strictly increasing; the bottom
flat and the ground set are never listed).  A rank-set S is a frozenset of
ranks in ``1..r``.  Flag vectors are dicts ``frozenset -> int`` defined on all
subsets of ``[r]``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .errors import FlagMismatch, NotFullChain, RankOutOfRange
from .matroid import closure, elements, lex_key, popcount


def all_rank_sets(r):
    """Every subset of [r], ordered by size then lexicographically."""
    return [
        frozenset(c) for k in range(r + 1) for c in itertools.combinations(range(1, r + 1), k)
    ]


def _check_rank_set(L, S):
    S = frozenset(S)
    if any(not 1 <= i <= L.r for i in S):
        raise RankOutOfRange(f"{sorted(S)} is not a subset of [{L.r}]")
    return S


def flag(L, chain):
    return frozenset(L.rank_of[F] for F in chain)


def chains_of_flag(L, S):
    """All chains of flag S, in lexicographic chain order."""
    ranks = sorted(_check_rank_set(L, S))
    out = []

    def extend(prefix, lower, depth):
        if depth == len(ranks):
            out.append(tuple(prefix))
            return
        for F in L.flats_by_rank[ranks[depth]]:
            if F & lower == lower:
                prefix.append(F)
                extend(prefix, F, depth + 1)
                prefix.pop()

    extend([], L.zero_flat, 0)
    return out


def full_chains(L):
    return chains_of_flag(L, range(1, L.r + 1)) if L.rank > 1 else [()]


def flag_f_vector(L):
    """Number of chains of each flag, by dynamic programming over flats."""
    return dict(_flag_f_vector(L))


@lru_cache(maxsize=1 << 16)
def _flag_f_vector(L):
    proper = [F for level in L.flats_by_rank[1 : L.rank] for F in level]
    counts = {}
    for F in proper:
        k = L.rank_of[F]
        vec = {1 << (k - 1): 1}
        for G in proper:
            if L.rank_of[G] < k and G & F == G:
                for bits, c in counts[G].items():
                    key = bits | 1 << (k - 1)
                    vec[key] = vec.get(key, 0) + c
        counts[F] = vec
    totals = {0: 1}
    for vec in counts.values():
        for bits, c in vec.items():
            totals[bits] = totals.get(bits, 0) + c
    return {
        S: totals.get(sum(1 << (i - 1) for i in S), 0) for S in all_rank_sets(L.r)
    }


def h_from_flag_f(f):
    h = {}
    for S in f:
        total = 0
        for k in range(len(S) + 1):
            for T in itertools.combinations(sorted(S), k):
                total += (-1) ** (len(S) - k) * f[frozenset(T)]
        h[S] = total
    return h


def f_from_flag_h(h):
    return {
        S: sum(h[frozenset(T)] for k in range(len(S) + 1) for T in itertools.combinations(sorted(S), k))
        for S in h
    }


def flag_h_vector(L):
    return dict(_flag_h_vector(L))


@lru_cache(maxsize=1 << 16)
def _flag_h_vector(L):
    return h_from_flag_f(_flag_f_vector(L))


def _rank_of_vector(vec):
    support = set().union(*vec) if vec else set()
    return max(support, default=0)


def h_from_f(f, d):
    """Coarse h-vector from f_0..f_d:  sum h_i x^(d-i) = sum f_i (x-1)^(d-i)."""
    f = list(f) + [0] * (d + 1 - len(f))
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


def coarse_vectors(f_flag):
    """Coarse (f, h) of the order complex from its flag f-vector."""
    r = _rank_of_vector(f_flag)
    h_flag = h_from_flag_f(f_flag)
    f = [sum(v for S, v in f_flag.items() if len(S) == k) for k in range(r + 1)]
    h = [sum(v for S, v in h_flag.items() if len(S) == k) for k in range(r + 1)]
    if h != h_from_f(f, r):
        raise AssertionError(f"coarse h {h} disagrees with the f-polynomial transform")
    return f, h


def independence_f_vector(M):
    indep = M.independent_table
    f = [0] * (M.rank + 1)
    for m in range(1 << M.n):
        if indep[m]:
            f[popcount(m)] += 1
    return f


def independence_h_vector(M):
    return h_from_f(independence_f_vector(M), M.rank)


def _padded(L, chain):
    return (L.zero_flat, *chain, L.top)


def jh_string(L, chain):
    """Jordan-Hoelder string b_1..b_{r+1} of a full chain."""
    if flag(L, chain) != frozenset(range(1, L.rank)) or len(chain) != max(L.rank - 1, 0):
        raise NotFullChain(f"chain {[elements(F) for F in chain]} is not full")
    if L.rank == 0:
        return ()
    padded = _padded(L, chain)
    out = []
    for lo, hi in zip(padded, padded[1:]):
        diff = hi & ~lo
        out.append(elements(diff & -diff)[0])
    return tuple(out)


def descent_set(s):
    return frozenset(i for i in range(1, len(s)) if s[i - 1] > s[i])


def is_valid_string(M, s):
    """True iff ``s`` is the Jordan-Hoelder string of some full chain of M."""
    if len(s) != M.rank or len(set(s)) != len(s):
        return False
    prev = closure(M, 0)
    prefix = 0
    for b in s:
        bit = 1 << (b - 1)
        if prev & bit:
            return False
        prefix |= bit
        cur = closure(M, prefix)
        diff = cur & ~prev
        if diff & -diff != bit:
            return False
        prev = cur
    return True


def chain_of_string(M, s):
    """Full chain of flats spanned by the prefixes of an ordered basis."""
    out = []
    prefix = 0
    for b in s[:-1]:
        prefix |= 1 << (b - 1)
        out.append(closure(M, prefix))
    return tuple(out)


def _interpolate(L, lo, hi, steps):
    """Flats produced by repeatedly adjoining min(hi minus current)."""
    out = []
    cur = lo
    for _ in range(steps):
        rest = hi & ~cur
        cur = L.cover_containing(cur, rest & -rest)
        out.append(cur)
    return out


def minimal_completion(L, chain):
    padded = _padded(L, chain)
    out = []
    for lo, hi in zip(padded, padded[1:]):
        out.extend(_interpolate(L, lo, hi, L.rank_of[hi] - L.rank_of[lo] - 1))
        if hi != L.top:
            out.append(hi)
    return tuple(out)


def restrict(L, chain, S):
    """Keep only the flats whose rank lies in S."""
    S = frozenset(S)
    return tuple(F for F in chain if L.rank_of[F] in S)


def is_minimal_in(L, F, lo, hi):
    """Whether F is the flat of its rank produced by interpolating from lo toward hi."""
    steps = L.rank_of[F] - L.rank_of[lo]
    return _interpolate(L, lo, hi, steps)[-1] == F


def is_essential(L, chain):
    padded = _padded(L, chain)
    return not any(
        is_minimal_in(L, padded[i], padded[i - 1], padded[i + 1])
        for i in range(1, len(padded) - 1)
    )


def lex_compare(L, c1, c2):
    """-1, 0 or 1 comparing two chains of the same flag lexicographically."""
    if flag(L, c1) != flag(L, c2):
        raise FlagMismatch("lexicographic comparison needs chains of equal flag")
    for F, G in zip(c1, c2):
        if F != G:
            return -1 if lex_key(F, L.n) < lex_key(G, L.n) else 1
    return 0


def chain_lex_key(L, chain):
    return tuple(lex_key(F, L.n) for F in chain)


def valid_strings(M):
    """All valid strings, found by testing every ordering of every basis."""
    out = []
    for b in M.bases:
        for perm in itertools.permutations(elements(b)):
            if is_valid_string(M, perm):
                out.append(perm)
    return out


def flag_h_by_descents(M, r):
    """h_S as the number of valid strings with descent set exactly S."""
    h = {S: 0 for S in all_rank_sets(r)}
    for s in valid_strings(M):
        h[descent_set(s)] += 1
    return h


def flag_f_by_descents(M, r):
    """f_S as the number of valid strings with descent set inside S."""
    descents = [descent_set(s) for s in valid_strings(M)]
    return {S: sum(1 for D in descents if D <= S) for S in all_rank_sets(r)}


def flag_h_by_essential_chains(L):
    return {S: sum(1 for C in chains_of_flag(L, S) if is_essential(L, C)) for S in all_rank_sets(L.r)}
