import pytest

from exceptional_primes.errors import InvalidInputError
from exceptional_primes.numth import GF, character_of_conductor


def test_order_six_mod_nine_over_f7():
    chars = character_of_conductor(3, 2, 7, 6)
    assert sorted(c(2).to_int() for c in chars) == [3, 5]
    assert all(c.order() == 6 and c.conductor() == 9 for c in chars)


def test_quadratic_character_mod_three():
    for ell in (5, 7, 11, 13):
        (chi,) = character_of_conductor(3, 1, ell, 2)
        assert chi(2) == -1 and chi(1) == 1 and chi(3) == 0


def test_values_in_extension_when_needed():
    chars = character_of_conductor(3, 2, 5, 6)
    assert len(chars) == 2
    assert all(c.field is GF(5, 2) for c in chars)
    assert sorted(str(c(2)) for c in chars) == ["4*a + 3", "a + 3"]


def test_conductor_drop_rejected():
    with pytest.raises(InvalidInputError):
        character_of_conductor(3, 3, 7, 2)  # 9 does not divide the order
    with pytest.raises(InvalidInputError):
        character_of_conductor(3, 2, 7, 4)  # 4 does not divide phi(9)


@pytest.mark.parametrize("u, ell", [(1, 7), (2, 7), (2, 5), (3, 7), (3, 19), (4, 109), (5, 163)])
def test_multiplicativity_exhaustive(u, ell):
    m = 3**u
    units = [a for a in range(1, m) if a % 3]
    for order in sorted({3 ** (u - 1), 2 * 3 ** (u - 1)} - {1}):
        chars = character_of_conductor(3, u, ell, order)
        assert chars
        for chi in chars[:3]:
            assert chi.order() == order and chi.conductor() == m
            assert chi(chi.generator) == chi.value
            vals = [chi(a) for a in range(m)]
            for a in units:
                for b in units:
                    assert vals[a * b % m] == vals[a] * vals[b]
            inv = chi.inverse()
            assert all(chi(a) * inv(a) == 1 for a in units)
