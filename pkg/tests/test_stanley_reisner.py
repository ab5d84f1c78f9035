import itertools

import pytest
import sympy
from hypothesis import given

from flagmono.catalog import find_weak_pairs
from flagmono.errors import NotDescentChain, NotRankPreservingWeak, RankOutOfRange
from flagmono.maps import pseudo_matroid
from flagmono.matroid import closure, flat_lattice, mask, uniform
from flagmono.order_complex import all_rank_sets, chains_of_flag, flag_h_vector, full_chains, jh_string
from flagmono.stanley_reisner import (
    Functional,
    annihilator_basis,
    descent_chains,
    descent_subgroup,
    dual_functional_fC,
    dual_functional_gC,
    in_annihilator,
    pi,
    psi_matrix,
    quotient_dim,
    theta_relations,
    verify_injectivity_chain,
    verify_surjectivity,
)
from oracles import SMALL, matroids

S = frozenset
m = mask
RP_PAIRS = find_weak_pairs(SMALL, rank_preserving=True, include_identity=True)


def test_theta_relations_examples(u23, u34):
    R = theta_relations(flat_lattice(u23), {1})
    assert R.shape == (1, 3)
    assert R.to_dense() == [[1, 1, 1]]
    R = theta_relations(flat_lattice(u34), {1, 2})
    assert R.shape == (10, 12)
    dense = R.to_dense()
    theta2 = [row for (i, _), row in zip(R.rows, dense) if i == 2]
    theta1 = [row for (i, _), row in zip(R.rows, dense) if i == 1]
    assert len(theta2) == 4 and all(sum(r) == 3 for r in theta2)
    assert len(theta1) == 6 and all(sum(r) == 2 for r in theta1)
    assert R.rank() == 9 == sympy.Matrix(dense).rank()
    R = theta_relations(flat_lattice(u34), set())
    assert R.shape == (0, 1)
    with pytest.raises(RankOutOfRange):
        theta_relations(flat_lattice(u23), {2})


def test_quotient_dim_examples(u23, u34):
    assert quotient_dim(flat_lattice(u23), {1}) == 2
    assert quotient_dim(flat_lattice(u34), {1, 2}) == 3
    assert quotient_dim(flat_lattice(u34), set()) == 1


@given(matroids)
def test_relation_entries_are_one_step_extensions(M):
    L = flat_lattice(M)
    for T in all_rank_sets(L.r):
        R = theta_relations(L, T)
        for (i, C), cols in zip(R.rows, R.support):
            assert cols, "every chain extends at each missing rank"
            expected = {j for j, D in enumerate(R.columns) if set(C) <= set(D)}
            assert set(cols) == expected


@given(matroids)
def test_quotient_dim_is_flag_h(M):
    L = flat_lattice(M)
    h = flag_h_vector(L)
    for T in all_rank_sets(L.r):
        assert quotient_dim(L, T) == h[T]


def test_quotient_dim_sympy_oracle():
    L = flat_lattice(uniform(4, 5))
    for T in all_rank_sets(L.r):
        R = theta_relations(L, T)
        rank = sympy.Matrix(R.to_dense()).rank() if R.rows else 0
        assert quotient_dim(L, T) == len(R.columns) - rank


def test_annihilator_basis(u23):
    L = flat_lattice(u23)
    basis = annihilator_basis(L, {1})
    assert len(basis) == 2
    assert all(in_annihilator(L, f) for f in basis)
    assert len(annihilator_basis(L, set())) == 1
    assert not in_annihilator(L, Functional(S({1}), {(m([1]),): 1}))


@given(matroids)
def test_annihilator_dimension(M):
    L = flat_lattice(M)
    for T in all_rank_sets(L.r):
        basis = annihilator_basis(L, T)
        assert len(basis) == quotient_dim(L, T)
        assert all(in_annihilator(L, f) for f in basis)


def test_descent_subgroup():
    assert descent_subgroup(S(), 3) == [((1, 2, 3), 1)]
    group = descent_subgroup(S({1, 2}), 3)
    assert len(group) == 6 and sum(s for _, s in group) == 0
    # {1, 3} on 4 letters: two commuting transpositions
    assert sorted(descent_subgroup(S({1, 3}), 4)) == sorted(
        [((1, 2, 3, 4), 1), ((2, 1, 3, 4), -1), ((1, 2, 4, 3), -1), ((2, 1, 4, 3), 1)]
    )
    assert len(descent_subgroup(S({1, 2, 4}), 5)) == 12


def test_fC_examples(u23, u34):
    L = flat_lattice(u23)
    C = (m([2]),)
    f = dual_functional_fC(u23, L, C, {1})
    assert f.coeffs == {(m([2]),): 1, (m([1]),): -1}
    f0 = dual_functional_fC(u23, L, (m([1]),), set())
    assert f0.coeffs == {(): 1}
    with pytest.raises(NotDescentChain):
        dual_functional_fC(u23, L, (m([1]),), {1})

    L = flat_lattice(u34)
    C = (m([3]), m([2, 3]))
    assert jh_string(L, C) == (3, 2, 1)
    expected = {}
    for p in itertools.permutations((3, 2, 1)):
        sign = sympy.combinatorics.Permutation([(3, 2, 1).index(x) for x in p]).signature()
        expected[(m([p[0]]), m(p[:2]))] = sign
    assert dual_functional_fC(u34, L, C, {1, 2}).coeffs == expected
    assert in_annihilator(L, dual_functional_fC(u34, L, C, {1, 2}))


def test_psi_matrix_examples(u34, par34):
    Ap = pseudo_matroid(par34, par34)
    P = psi_matrix(Ap, par34, {1})
    assert P.rows == P.columns
    assert [list(r) for r in P.entries] == [[int(i == j) for j in range(len(P.rows))] for i in range(len(P.rows))]
    Ap = pseudo_matroid(u34, par34)
    P = psi_matrix(Ap, par34, {1})
    col = P.columns.index((m([3, 4]),))
    hits = [D for D, row in zip(P.rows, P.entries) if row[col]]
    assert hits == [(m([3]),), (m([4]),)]


@pytest.mark.parametrize("pair", RP_PAIRS)
def test_psi_columns_nonzero(pair):
    A, B = pair
    Ap = pseudo_matroid(A, B)
    for T in all_rank_sets(flat_lattice(B).r):
        P = psi_matrix(Ap, B, T)
        for j in range(len(P.columns)):
            assert any(row[j] for row in P.entries)


def test_gC_examples(u34, par34, u23):
    L = flat_lattice(u23)
    Ap = pseudo_matroid(u23, u23)
    C = (m([2]),)
    assert dual_functional_gC(u23, Ap, L, C, {1}) == dual_functional_fC(u23, L, C, {1})
    assert dual_functional_gC(u23, Ap, L, (m([1]),), set()).coeffs == {(): 1}

    LB = flat_lattice(par34)
    Ap = pseudo_matroid(u34, par34)
    C = (m([3, 4]), m([2, 3, 4]))
    assert jh_string(LB, C) == (3, 2, 1)
    T = S({1, 2})
    g = dual_functional_gC(u34, Ap, LB, C, T)
    f = dual_functional_fC(par34, LB, C, T)
    P = psi_matrix(Ap, par34, T)
    gv = g.vector(P.rows)
    image = [sum(P.entries[i][j] * gv[i] for i in range(len(P.rows))) for j in range(len(P.columns))]
    assert image == f.vector(P.columns)
    assert pi(par34, g).coeffs == f.coeffs


def test_verify_surjectivity_examples(u23, u34, par34):
    rep = verify_surjectivity(u23, u23, {1})
    assert rep.ok and rep.descent_chains == 2 and rep.span_rank == 2 == rep.annihilator_dim
    rep = verify_surjectivity(u34, par34, {1, 2})
    assert rep.ok and rep.h_S == 1 and rep.descent_chains == 1
    with pytest.raises(NotRankPreservingWeak):
        verify_surjectivity(par34, u34, {1})


def test_verify_injectivity_chain_example(u34, par34):
    rep = verify_injectivity_chain(u34, par34)
    assert rep.ok
    rows = {tuple(r["S"]): (r["h_A"], r["dim_Aprime"], r["h_B"]) for r in rep.rows}
    assert [rows[k][0] for k in [(1,), (2,), (1, 2)]] == [3, 5, 3]
    assert [rows[k][2] for k in [(1,), (2,), (1, 2)]] == [2, 2, 1]
    for hA, mid, hB in rows.values():
        assert hA >= mid >= hB
    rep = verify_injectivity_chain(par34, par34)
    assert all(r["h_A"] == r["dim_Aprime"] == r["h_B"] for r in rep.rows)


@pytest.mark.parametrize("pair", RP_PAIRS)
def test_duality_on_small_pairs(pair):
    rep = verify_injectivity_chain(*pair)
    assert rep.ok, rep.failures


@given(matroids)
def test_descent_chains_count(M):
    L = flat_lattice(M)
    h = flag_h_vector(L)
    for T in all_rank_sets(L.r):
        assert len(descent_chains(L, T)) == h[T]
    assert sum(len(descent_chains(L, T)) for T in all_rank_sets(L.r)) == len(full_chains(L))
