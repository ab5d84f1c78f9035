"""Fine-graded pieces of Stanley-Reisner rings of flat lattices, and their duals.

Everything is computed one squarefree degree S at a time.  In degree S the
ring k[L] has basis x_C over chains C of flag S; the ideal generated by the
rank-level sums theta_i is spanned there by theta_i * x_C with fl(C) = S - {i}.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field

from .errors import NotDescentChain, TheoremViolation
from .linalg import exact_rank, integer_kernel, sparse_rank
from .maps import _require_rank_preserving, phi_chain, pseudo_matroid
from .matroid import closure, elements, flat_lattice
from .order_complex import (
    _check_rank_set,
    all_rank_sets,
    chain_lex_key,
    chains_of_flag,
    descent_set,
    flag,
    flag_h_vector,
    full_chains,
    jh_string,
)


@dataclass(frozen=True, eq=False)
class RelationMatrix:
    degree: frozenset
    columns: tuple
    rows: tuple
    support: tuple

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def to_dense(self):
        out = []
        for cols in self.support:
            row = [0] * len(self.columns)
            for c in cols:
                row[c] = 1
            out.append(row)
        return out

    def rank(self):
        return sparse_rank({c: 1 for c in cols} for cols in self.support)


@dataclass(frozen=True)
class Functional:
    degree: frozenset
    coeffs: dict = field(hash=False)

    def vector(self, columns):
        return [self.coeffs.get(C, 0) for C in columns]


def theta_relations(L, S):
    """Integer matrix of theta_i * x_C in degree S, columns in lexicographic order."""
    return _theta_relations(L, _check_rank_set(L, S))


@lru_cache(maxsize=1 << 14)
def _theta_relations(L, S):
    columns = tuple(chains_of_flag(L, S))
    index = {C: j for j, C in enumerate(columns)}
    rows = []
    support = []
    for i in sorted(S):
        level = L.flats_by_rank[i]
        for C in chains_of_flag(L, S - {i}):
            pos = sum(1 for F in C if L.rank_of[F] < i)
            lower = C[pos - 1] if pos else L.zero_flat
            upper = C[pos] if pos < len(C) else L.top
            cols = tuple(
                index[C[:pos] + (G,) + C[pos:]]
                for G in level
                if G & lower == lower and G & upper == G
            )
            rows.append((i, C))
            support.append(cols)
    return RelationMatrix(S, columns, tuple(rows), tuple(support))


_QDIM_CACHE = {}


def quotient_dim(L, S):
    """dim of the degree-S piece of k[L] modulo the theta_i."""
    S = frozenset(S)
    key = (L.key, S)
    if key not in _QDIM_CACHE:
        R = theta_relations(L, S)
        _QDIM_CACHE[key] = len(R.columns) - R.rank()
    return _QDIM_CACHE[key]


def clear_caches():
    _QDIM_CACHE.clear()


def annihilator_basis(L, S):
    R = theta_relations(L, S)
    kernel = integer_kernel(R.to_dense(), len(R.columns))
    return [
        Functional(R.degree, {C: v for C, v in zip(R.columns, vec) if v}) for vec in kernel
    ]


def annihilator_failures(L, fn, relations=None):
    """Relation rows (i, C) on which ``fn`` does not vanish; empty iff fn is in the annihilator."""
    R = relations if relations is not None else theta_relations(L, fn.degree)
    if any(flag(L, C) != R.degree for C in fn.coeffs):
        return [("flag", C) for C in fn.coeffs if flag(L, C) != R.degree]
    vec = fn.vector(R.columns)
    return [row for row, cols in zip(R.rows, R.support) if sum(vec[c] for c in cols)]


def in_annihilator(L, fn, relations=None):
    return not annihilator_failures(L, fn, relations)


@dataclass(frozen=True, eq=False)
class PsiMatrix:
    degree: frozenset
    rows: tuple
    columns: tuple
    entries: tuple


def psi_matrix(Aprime, B, S, LB=None):
    """Matrix of psi in degree S: rows A'-chains, columns B-chains."""
    LB = LB or flat_lattice(B)
    S = frozenset(S)
    rows = tuple(chains_of_flag(Aprime, S))
    columns = tuple(chains_of_flag(LB, S))
    index = {C: j for j, C in enumerate(columns)}
    entries = []
    for D in rows:
        row = [0] * len(columns)
        image = phi_chain(B, D)
        if image in index:
            row[index[image]] = 1
        entries.append(tuple(row))
    return PsiMatrix(S, rows, columns, tuple(entries))


def pi(B, g):
    """Dual of psi: pull a functional on k[A'] back to k[B] (pre-composition with psi)."""
    out = {}
    for D, v in g.coeffs.items():
        C = phi_chain(B, D)
        out[C] = out.get(C, 0) + v
    return Functional(g.degree, {C: v for C, v in out.items() if v})


def _runs(S):
    runs = []
    for i in sorted(S):
        if runs and runs[-1][-1] == i - 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


def _sign(perm):
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def descent_subgroup(S, length):
    """(sigma, sign) over the group generated by (i i+1), i in S, on positions 1..length.

    sigma is a tuple with sigma[t-1] the image of position t.
    """
    blocks = [list(range(run[0], run[-1] + 2)) for run in _runs(S)]
    factors = []
    for block in blocks:
        factors.append([(block, p, _sign(p)) for p in itertools.permutations(block)])
    out = []
    for choice in itertools.product(*factors):
        sigma = list(range(1, length + 1))
        sign = 1
        for block, p, s in choice:
            for t, image in zip(block, p):
                sigma[t - 1] = image
            sign *= s
        out.append((tuple(sigma), sign))
    return out


def _prefix_chain(M, letters, ranks):
    out = []
    prefix = 0
    for k, b in enumerate(letters, start=1):
        prefix |= 1 << (b - 1)
        if k in ranks:
            out.append(closure(M, prefix))
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _descent_string(LB, C, S):
    s = jh_string(LB, C)
    if descent_set(s) != frozenset(S):
        raise NotDescentChain(f"string {s} has descent set {sorted(descent_set(s))}, not {sorted(S)}")
    return s


def dual_functional_fC(B, LB, C, S):
    """Signed sum over the descent subgroup of the restricted chains of B-closures."""
    return _dual_functional_fC(B, LB, C, frozenset(S))


@lru_cache(maxsize=1 << 16)
def _dual_functional_fC(B, LB, C, S):
    s = _descent_string(LB, C, frozenset(S))
    coeffs = {}
    for sigma, sign in descent_subgroup(frozenset(S), len(s)):
        letters = [s[t - 1] for t in sigma]
        D = _prefix_chain(B, letters, S)
        coeffs[D] = coeffs.get(D, 0) + sign
    return Functional(S, {D: v for D, v in coeffs.items() if v})


def dual_functional_gC(A, Aprime, LB, C, S):
    """Same signed sum with A-closures; every A-flat met must lie in A'."""
    S = frozenset(S)
    s = _descent_string(LB, C, frozenset(S))
    full = range(1, len(s))
    coeffs = {}
    for sigma, sign in descent_subgroup(frozenset(S), len(s)):
        letters = [s[t - 1] for t in sigma]
        D = _prefix_chain(A, letters, full)
        missing = [F for F in D if F not in Aprime.rank_of]
        if missing:
            raise TheoremViolation(
                f"A-closure {elements(missing[0])} is not a flat of A'",
                witness={"string": letters, "flat": elements(missing[0])},
            )
        nu = tuple(F for k, F in enumerate(D, start=1) if k in S)
        coeffs[nu] = coeffs.get(nu, 0) + sign
    return Functional(S, {D: v for D, v in coeffs.items() if v})


def descent_chains(LB, S):
    return _descent_chains(LB, frozenset(S))


@lru_cache(maxsize=1 << 14)
def _descent_chains(LB, S):
    return [C for C in full_chains(LB) if descent_set(jh_string(LB, C)) == S]


@dataclass
class SurjectivityReport:
    degree: frozenset
    h_S: int
    descent_chains: int
    span_rank: int
    annihilator_dim: int
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


@lru_cache(maxsize=1 << 14)
def _target_side(B, LB, S):
    """Checks on the f_C alone; these depend only on B and S."""
    h_S = flag_h_vector(LB)[S]
    chains = descent_chains(LB, S)
    failures = []
    if len(chains) != h_S:
        failures.append({"check": "count", "chains": len(chains), "h_S": h_S})
    RB = theta_relations(LB, S)
    fs = []
    for C in chains:
        nu_C = tuple(F for F in C if LB.rank_of[F] in S)
        f = dual_functional_fC(B, LB, C, S)
        if not in_annihilator(LB, f, RB):
            failures.append({"check": "f_in_annihilator", "chain": _show(C)})
        top = chain_lex_key(LB, nu_C)
        if f.coeffs.get(nu_C) != 1 or any(chain_lex_key(LB, D) > top for D in f.coeffs):
            failures.append({"check": "triangular", "chain": _show(C)})
        fs.append(f)
    span = exact_rank([f.vector(RB.columns) for f in fs]) if fs else 0
    if span != len(chains):
        failures.append({"check": "independent", "rank": span, "count": len(chains)})
    dim = quotient_dim(LB, S)
    if span != dim:
        failures.append({"check": "basis", "rank": span, "annihilator_dim": dim})
    return h_S, tuple(chains), tuple(fs), span, dim, tuple(failures)


def verify_surjectivity(A, B, S, Aprime=None, LB=None):
    """Build f_C, g_C for every descent-S chain and check the duality argument."""
    _require_rank_preserving(A, B)
    S = frozenset(S)
    LB = LB or flat_lattice(B)
    Aprime = Aprime or pseudo_matroid(A, B)
    h_S, chains, fs, span, dim, target_failures = _target_side(B, LB, S)
    failures = [dict(f) for f in target_failures]
    RA = theta_relations(Aprime, S)
    for C, f in zip(chains, fs):
        g = dual_functional_gC(A, Aprime, LB, C, S)
        if not in_annihilator(Aprime, g, RA):
            failures.append({"check": "g_in_annihilator", "chain": _show(C)})
        if pi(B, g).coeffs != f.coeffs:
            failures.append({"check": "pi_g_equals_f", "chain": _show(C)})
    return SurjectivityReport(S, h_S, len(chains), span, dim, failures)


def _show(C):
    return [list(elements(F)) for F in C]


@dataclass
class InjectivityReport:
    rows: list
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def verify_injectivity_chain(A, B):
    """h_S(A) >= dim (R_A')_S >= h_S(B) for every S, with the duality certificate."""
    _require_rank_preserving(A, B)
    LA = flat_lattice(A)
    LB = flat_lattice(B)
    Aprime = pseudo_matroid(A, B)
    hA = flag_h_vector(LA)
    hB = flag_h_vector(LB)
    rows = []
    failures = []
    for S in all_rank_sets(LB.r):
        mid = quotient_dim(Aprime, S)
        surj = verify_surjectivity(A, B, S, Aprime, LB)
        rows.append({"S": sorted(S), "h_A": hA[S], "dim_Aprime": mid, "h_B": hB[S]})
        if not hA[S] >= mid >= hB[S]:
            failures.append({"S": sorted(S), "h_A": hA[S], "dim_Aprime": mid, "h_B": hB[S]})
        for f in surj.failures:
            failures.append({"S": sorted(S), **f})
    return InjectivityReport(rows, failures)
