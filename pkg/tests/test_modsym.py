from fractions import Fraction

import pytest

from exceptional_primes.errors import InvalidInputError
from exceptional_primes.modsym import linalg as LA
from exceptional_primes.modsym.dimensions import cusp_count, genus_X0, index_gamma0, newform_dimension, sturm_bound
from exceptional_primes.modsym.heilbronn import cremona, merel
from exceptional_primes.modsym.p1 import lift_to_sl2z, p1_list
from exceptional_primes.modsym.space import ReducedSpace, build_space, p1_size, saturate


def matmul(A, B):
    return [[sum(Fraction(a) * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def sparse_apply(v, rows):
    return LA.sparse_vec_matrix(v, rows)


@pytest.mark.parametrize("N, size", [(1, 1), (2, 3), (162, 324), (11, 12), (54, 108)])
def test_p1_sizes(N, size):
    assert p1_size(N) == size == index_gamma0(N)


def test_p1_normalization_is_canonical():
    P = p1_list(18)
    for c, d in P:
        for u in (5, 7, 11, 13):
            assert P.normalize(u * c, u * d) == (c, d)
    assert P.index(3, 6) == -1


def test_lift_to_sl2z():
    N = 54
    for c, d in p1_list(N):
        a, b, cc, dd = lift_to_sl2z(c, d, N)
        assert a * dd - b * cc == 1
        assert (cc - c) % N == 0 and (dd - d) % N == 0


@pytest.mark.parametrize("N, g", [(1, 0), (11, 1), (54, 4), (162, 16), (37, 2)])
def test_genus(N, g):
    assert genus_X0(N) == g


def test_cusp_counts_and_sturm():
    assert cusp_count(11) == 2 and cusp_count(54) == 12 and cusp_count(162) == 24
    assert sturm_bound(11) == 2 and sturm_bound(162) == 54 and sturm_bound(1) == 1


@pytest.mark.parametrize("N", [11, 18, 54])
def test_manin_relations_hold(N):
    M = build_space(N)
    P = M.p1

    def vec(c, d):
        return M.symbol(c, d)

    def add(*vs):
        out = {}
        for v in vs:
            for k, x in v.items():
                out[k] = out.get(k, 0) + x
        return {k: x for k, x in out.items() if x}

    for c, d in P:
        assert add(vec(c, d), vec(d, -c)) == {}
        assert add(vec(c, d), vec(d, -c - d), vec(-c - d, c)) == {}


@pytest.mark.parametrize("N", [11, 37, 54])
def test_boundary_vanishes_exactly_on_cuspidal(N):
    M = build_space(N)
    S = M.cuspidal
    for r in S.rows:
        assert sparse_apply(r, M.boundary_rows) == {}
    rank = LA.SparseEchelon(LA.QQ)
    for row in M.boundary_rows:
        rank.add_row(dict(row))
    assert S.dimension == M.dimension - rank.rank


def test_denominators_only_at_two_and_three():
    for N in (11, 27, 54, 162):
        assert build_space(N).denominator_primes <= {2, 3}


def test_space_dimensions():
    assert build_space(1).cuspidal.dimension == 0
    assert build_space(11).cuspidal.dimension == 2
    assert build_space(11).new.dimension == 2
    assert build_space(54).new.dimension == 4 == 2 * newform_dimension(54)
    M = build_space(162)
    assert (M.dimension, M.cuspidal.dimension, M.new.dimension) == (55, 32, 8)


def test_heilbronn_conventions_agree():
    for N in (11, 23, 54):
        M = build_space(N)
        for p in (5, 7, 13):
            if N % p == 0:
                continue
            assert M.hecke_ambient(p, "cremona") == M.hecke_ambient(p, "merel")
    assert len(merel(2)) == 4 and len(cremona(3)) > 0


def test_level_11_hecke_eigenvalues():
    M = build_space(11)
    T2 = M.hecke_matrix(2)
    T3 = M.hecke_matrix(3)
    assert T2 == [[-2, 0], [0, -2]]
    assert T3 == [[-1, 0], [0, -1]]
    assert M.hecke_matrix(5) == [[1, 0], [0, 1]]


def test_hecke_commute_on_level_54():
    M = build_space(54)
    mats = {p: M.hecke_matrix(p) for p in (2, 5, 7)}
    for p in mats:
        for q in mats:
            assert matmul(mats[p], mats[q]) == matmul(mats[q], mats[p])


def test_hecke_preserves_new_subspace():
    M = build_space(54)
    for p in (2, 3, 5):
        assert len(M.hecke_matrix(p, "new")) == M.new.dimension


def test_reduced_space_rejects_bad_characteristic():
    M = build_space(54)
    for ell in (2, 3, 4):
        with pytest.raises(InvalidInputError):
            ReducedSpace(M, ell)
    assert ReducedSpace(M, 5).dimension == 4


def test_saturate():
    out = saturate([[7, 14], [0, 49]], 7)
    det = out[0][0] * out[1][1] - out[0][1] * out[1][0]
    assert det % 7 != 0
    assert saturate([[1, 2], [3, 5]], 7) == [[1, 2], [3, 5]]


def test_reduced_hecke_matches_rational_reduction():
    ell = 7
    R = build_space(11, ell)
    assert R.hecke_matrix(2) == [[5, 0], [0, 5]]


def test_unknown_subspace():
    with pytest.raises(InvalidInputError):
        build_space(11).subspace("old")
