import pytest

from exceptional_primes.errors import DecompositionError
from exceptional_primes.lmfdb import fetch_newforms
from exceptional_primes.modsym.eigen import eigensystems, eigensystems_mod_ell
from exceptional_primes.modsym.space import build_space
from exceptional_primes.numth import primes_up_to


def ints(E, primes):
    return [E.ap[p].to_int() for p in primes]


def test_level_11_mod_7():
    (E,) = eigensystems(11, 7, bound=13)
    assert E.degree == 1 and E.dimension == 2 and E.semisimple
    assert ints(E, (2, 3, 5)) == [5, 6, 1]
    assert 7 not in E.ap
    assert E.ap[11].to_int() == 1  # U_11 on the split multiplicative newform


def test_level_11_mod_5():
    (E,) = eigensystems(11, 5, bound=7)
    assert E.ap[2].to_int() == 3
    assert 5 not in E.ap


def test_level_11_reduction_of_rational_eigensystem():
    (rec,) = fetch_newforms(11)
    for ell in (5, 7, 13, 17, 19, 23, 29):
        (E,) = eigensystems(11, ell, bound=29)
        for p in E.ap:
            assert E.ap[p].to_int() == rec.a(p)[0] % ell


@pytest.mark.parametrize("N, ell", [(54, 5), (54, 7), (162, 5), (162, 7), (23, 7)])
def test_dimensions_add_up(N, ell):
    systems = eigensystems(N, ell)
    assert sum(E.dimension for E in systems) == build_space(N).new.dimension
    assert [E.index for E in systems] == list(range(len(systems)))


def test_level_23_quadratic_orbit():
    (E,) = eigensystems(23, 7, bound=13)
    assert E.degree == 2 and E.dimension == 4


def test_level_23_non_semisimple_piece_is_reported():
    systems = eigensystems(23, 5, bound=13)
    assert any(not E.semisimple for E in systems)
    assert sum(E.dimension for E in systems) == 4


@pytest.mark.parametrize("ell", [5, 7, 11, 13])
def test_level_162_semistable_at_2(ell):
    for E in eigensystems(162, ell):
        assert E.ap[2] * E.ap[2] == 1


def test_deterministic():
    a = [E.as_dict() for E in eigensystems(162, 7)]
    b = [E.as_dict() for E in eigensystems_mod_ell(build_space(162, 7), seed=0)]
    assert a == b


class _TwoOrbitSpace:
    """Dimension 4 over F_7 with T_2 = diag(C, C) and T_3 = diag(C, -C), C of charpoly x^2 + 1.

    Both operators are primary with the same irreducible factor, yet the
    space holds two Galois orbits of joint eigensystems.
    """

    ell = 7
    N = 1

    def __init__(self):
        C = [[0, 1], [6, 0]]
        negC = [[(-x) % 7 for x in r] for r in C]
        self.dimension = 4
        self._mats = {2: self._blocks(C, C), 3: self._blocks(C, negC)}

    @staticmethod
    def _blocks(A, B):
        return [A[0] + [0, 0], A[1] + [0, 0], [0, 0] + B[0], [0, 0] + B[1]]

    def hecke_primes(self, bound=None):
        return [2, 3]

    def hecke_matrix(self, p):
        return self._mats[p]


def test_unsplittable_piece_raises():
    with pytest.raises(DecompositionError) as info:
        eigensystems_mod_ell(_TwoOrbitSpace(), bound=3, random_rounds=0)
    assert info.value.partial


def test_random_combinations_split_the_piece():
    systems = eigensystems_mod_ell(_TwoOrbitSpace(), bound=3)
    assert len(systems) == 2
    assert all(E.degree == 2 and E.dimension == 2 for E in systems)


def test_sturm_default_bound():
    systems = eigensystems(54, 5)
    assert all(sorted(E.ap) == [p for p in primes_up_to(18) if p != 5] for E in systems)
