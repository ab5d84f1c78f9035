"""Exact integer linear algebra: rank and kernels over the rationals."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd


def _normalize(row):
    g = gcd(*row.values())
    if g > 1:
        for c in row:
            row[c] //= g


def sparse_rank(rows):
    """Rank over Q of a matrix given as a list of ``{column: int}`` dicts.

    Fraction-free elimination: each update is ``a*r_j - b*r_i`` followed by
    division by the row content, so entries stay integral and small.
    """
    rows = [dict(r) for r in rows]
    for r in rows:
        for c in [c for c, v in r.items() if v == 0]:
            del r[c]
    where = defaultdict(set)
    for i, r in enumerate(rows):
        for c in r:
            where[c].add(i)
    active = {i for i, r in enumerate(rows) if r}
    rank = 0
    while active:
        i = min(active, key=lambda k: len(rows[k]))
        active.discard(i)
        ri = rows[i]
        if not ri:
            continue
        c = min(ri, key=lambda k: (abs(ri[k]), len(where[k])))
        a = ri[c]
        rank += 1
        for k in ri:
            where[k].discard(i)
        for j in list(where[c]):
            rj = rows[j]
            b = rj[c]
            if a != 1:
                for k in rj:
                    rj[k] *= a
            for k, v in ri.items():
                new = rj.get(k, 0) - b * v
                if new:
                    if k not in rj:
                        where[k].add(j)
                    rj[k] = new
                elif k in rj:
                    del rj[k]
                    where[k].discard(j)
            if rj:
                _normalize(rj)
            else:
                active.discard(j)
    return rank


def exact_rank(matrix):
    """Rank over Q of a dense integer matrix (list of rows)."""
    return sparse_rank({c: v for c, v in enumerate(row) if v} for row in matrix)


def rref(matrix, ncols):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def integer_kernel(matrix, ncols):
    """Basis of {x : matrix @ x = 0} as primitive integer vectors."""
    reduced, pivots = rref(matrix, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        denom = 1
        for v in vec:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        ints = [int(v * denom) for v in vec]
        g = gcd(*ints)
        basis.append([v // g for v in ints])
    return basis
