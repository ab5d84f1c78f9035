"""Strong and weak maps, the closure map on chains, and the auxiliary lattice A'."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GroundSetMismatch, NotAWeakMap, NotRankPreservingWeak
from .matroid import (
    FlatLattice,
    closure,
    elements,
    flat_lattice,
    popcount,
    truncation,
)
from .order_complex import all_rank_sets, chains_of_flag, flag, jh_string, minimal_completion

STRONG = "strong"
WEAK = "weak"
RANK_PRESERVING_WEAK = "rank-preserving-weak"
NONE = "none"


@dataclass(frozen=True)
class MapWitness:
    kind: str
    violation: tuple | None = None

    def __bool__(self):
        return self.kind != NONE


def _same_ground(A, B):
    if A.n != B.n:
        raise GroundSetMismatch(f"ground sets differ: n={A.n} vs n={B.n}")


def is_weak_map(A, B):
    """Every basis of B independent in A (enough, by downward closure)."""
    _same_ground(A, B)
    indep = A.independent_table
    for b in sorted(B.bases):
        if not indep[b]:
            return MapWitness(NONE, elements(b))
    return MapWitness(RANK_PRESERVING_WEAK if A.rank == B.rank else WEAK)


def is_strong_map(A, B):
    """Every flat of B is a flat of A."""
    _same_ground(A, B)
    extra = flat_lattice(B).flats - flat_lattice(A).flats
    if extra:
        return MapWitness(NONE, elements(min(extra)))
    return MapWitness(STRONG)


def decompose_weak_map(A, B):
    """Truncation T of A with A -> T strong and T -> B rank-preserving weak."""
    if not is_weak_map(A, B):
        raise NotAWeakMap("B has a basis that is dependent in A")
    T = truncation(A, B.rank)
    assert is_strong_map(A, T), "truncation must be a strong map"
    assert is_weak_map(T, B).kind == RANK_PRESERVING_WEAK
    return T


def _require_rank_preserving(A, B):
    _same_ground(A, B)
    if A.rank != B.rank or not is_weak_map(A, B):
        raise NotRankPreservingWeak("expected a rank-preserving weak map A -> B")


def phi_chain(B, chain):
    """Image of a chain under B-closure, dropping 0_B, E and repeats."""
    bottom = closure(B, 0)
    out = []
    for F in chain:
        G = closure(B, F)
        if G in (bottom, B.ground) or (out and out[-1] == G):
            continue
        out.append(G)
    return tuple(out)


def _has_B_independent_basis(A, B, F):
    """Some A-basis of F (a maximal A-independent subset) is B-independent."""
    target = A.rank_table[F]
    indepB = B.independent_table
    sub = F
    while True:
        if popcount(sub) == target and indepB[sub]:
            return True
        if sub == 0:
            return False
        sub = (sub - 1) & F


def pseudo_matroid(A, B):
    """Lattice of A-flats whose B-closure keeps its rank, graded by rank in A."""
    _require_rank_preserving(A, B)
    rA = A.rank_table
    rB = B.rank_table
    kept = {}
    for F in flat_lattice(A).flats:
        keep = rB[closure(B, F)] == rA[F]
        if keep != _has_B_independent_basis(A, B, F):
            raise AssertionError(f"A' membership tests disagree on {elements(F)}")
        if keep:
            kept[F] = rA[F]
    _assert_graded(kept)
    LA = flat_lattice(A)
    if len(kept) == len(LA.rank_of):
        return LA
    key = (A.n, frozenset(kept.items()))
    if key not in _PSEUDO_LATTICES:
        _PSEUDO_LATTICES[key] = FlatLattice.from_ranked_flats(A.n, kept)
    return _PSEUDO_LATTICES[key]


_PSEUDO_LATTICES = {}


def _assert_graded(rank_of):
    members = list(rank_of)
    for F in members:
        for G in members:
            if F & G == F and rank_of[G] - rank_of[F] >= 2:
                k = rank_of[F] + 1
                if not any(
                    rank_of[H] == k and H & F == F and H & G == H for H in members
                ):
                    raise AssertionError(
                        f"A' is not graded between {elements(F)} and {elements(G)}"
                    )


def flag_preimage(A, B, LB, chain):
    """A-chain of the same flag mapping onto ``chain`` under B-closure."""
    S = flag(LB, chain)
    s = jh_string(LB, minimal_completion(LB, chain))
    out = []
    prefix = 0
    for k, b in enumerate(s, start=1):
        prefix |= 1 << (b - 1)
        if k in S:
            out.append(closure(A, prefix))
    return tuple(out)


def check_flag_surjectivity(A, B):
    """Verify surjectivity by flag of B-closure on chains; returns (ok, witness map)."""
    _require_rank_preserving(A, B)
    LA = flat_lattice(A)
    LB = flat_lattice(B)
    witness = {}
    ok = True
    for S in all_rank_sets(LB.r):
        for C in chains_of_flag(LB, S):
            D = flag_preimage(A, B, LB, C)
            if flag(LA, D) != S or phi_chain(B, D) != C:
                ok = False
            witness[C] = D
    return ok, witness
