import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exceptional_primes.errors import InvalidInputError
from exceptional_primes.numth import GF, FFElement, common_field, factor_polynomial_mod_ell, lex_least_irreducible
from exceptional_primes.numth import polynomials as P


def _expand(factors, K):
    out = [K.one]
    for g, e in factors:
        for _ in range(e):
            out = P.mul(out, g, K)
    return out


@pytest.mark.parametrize(
    "coeffs, ell, expected",
    [
        ([-1, 0, 1], 7, [([1, 1], 1), ([6, 1], 1)]),
        ([1, 0, 1], 7, [([1, 0, 1], 1)]),
        ([-2, 0, 0, 1], 5, [([2, 1], 1), ([4, 3, 1], 1)]),
        ([1] + [0] * 6 + [1], 7, [([1, 1], 7)]),
    ],
)
def test_factor_examples(coeffs, ell, expected):
    assert factor_polynomial_mod_ell(coeffs, ell) == expected


def test_factor_cube_root_example_means_x_minus_3():
    # x + 2 = x - 3 over F_5
    (lin, _), _ = factor_polynomial_mod_ell([-2, 0, 0, 1], 5)
    assert P.evaluate(lin, 3, GF(5)) == 0


@settings(max_examples=300, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7, 11, 13]),
    st.lists(st.integers(min_value=0, max_value=12), min_size=2, max_size=5),
)
def test_factor_against_brute_force_roots(ell, raw):
    K = GF(ell)
    f = P.trim([c % ell for c in raw], K)
    if len(f) < 2:
        return
    facs = P.factor(f, K)
    assert _expand(facs, K) == P.monic(f, K)
    for g, _ in facs:
        assert P.is_irreducible(g, K)
    roots = sorted(x for x in range(ell) if P.evaluate(f, x, K) == 0)
    assert P.roots(f, K) == roots
    assert sorted((-g[0]) % ell for g, _ in facs if len(g) == 2) == roots


def test_lex_least_irreducible_is_least():
    for p, k in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 3)]:
        m = lex_least_irreducible(p, k)
        assert m[-1] == 1 and P.is_irreducible(list(m), GF(p))
        for digits in itertools.product(range(p), repeat=k):
            cand = list(reversed(digits)) + [1]
            if tuple(reversed(cand[:-1])) < tuple(reversed(m[:-1])):
                assert not P.is_irreducible(P.trim(cand, GF(p)), GF(p))


_fields = st.sampled_from([(2, 1), (2, 3), (3, 2), (5, 2), (7, 1), (7, 2), (11, 2)])


@settings(max_examples=200, deadline=None)
@given(_fields, st.randoms(use_true_random=False))
def test_field_axioms(pk, rnd):
    F = GF(*pk)
    a, b, c = (FFElement(F, F.random(rnd)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0 and a + 0 == a and a * 1 == a
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (F.order - 1) % a.order() == 0
    assert a ** F.order == a


def test_gf_is_cached_and_sized():
    assert GF(5, 2) is GF(5, 2)
    assert GF(5, 2).order == 25
    with pytest.raises(InvalidInputError):
        GF(6)


def test_embedding_is_a_homomorphism():
    small, big = GF(3, 2), GF(3, 4)
    for x in small.elements():
        for y in list(small.elements())[:5]:
            ex, ey = FFElement(small, x).embed(big), FFElement(small, y).embed(big)
            assert ex * ey == (FFElement(small, x) * FFElement(small, y)).embed(big)
            assert ex + ey == (FFElement(small, x) + FFElement(small, y)).embed(big)


def test_cross_field_arithmetic_lands_in_common_field():
    a = FFElement(GF(7, 2), GF(7, 2).gen)
    b = FFElement(GF(7, 3), GF(7, 3).gen)
    assert (a * b).field is common_field(GF(7, 2), GF(7, 3)) is GF(7, 6)
    assert FFElement(GF(7), 3) == FFElement(GF(7, 2), (3, 0))


def test_roots_of_unity_have_exact_order():
    F = GF(5, 2)
    roots = F.roots_of_unity(6)
    assert len(roots) == 2
    assert all(F.element_order(r) == 6 for r in roots)
    assert GF(7).roots_of_unity(6) == [3, 5]
