"""Exact integer, modular, finite-field and character arithmetic."""

from .characters import DirichletCharacter, character_of_conductor
from .finite_field import GF, FFElement, common_field, lex_least_irreducible
from .integers import (
    Factorization,
    cyclotomic_value,
    discrete_log,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_primitive_root,
    mod_pow,
    multiplicative_order,
    primality,
    primes_up_to,
    quadratic_residue_symbol,
    smallest_primitive_root,
)
from . import polynomials


def factor_polynomial_mod_ell(coeffs, ell: int):
    """Factor a polynomial over F_ell given by integer coefficients (lowest degree first).

    Returns ``[(factor, multiplicity)]`` with monic factors as integer lists,
    sorted by degree then coefficients. Constant leading units are dropped.
    """
    K = GF(ell)
    f = polynomials.trim([c % ell for c in coeffs], K)
    return polynomials.factor(f, K)


__all__ = [
    "DirichletCharacter",
    "FFElement",
    "Factorization",
    "GF",
    "character_of_conductor",
    "common_field",
    "cyclotomic_value",
    "discrete_log",
    "divisors",
    "euler_phi",
    "factor_polynomial_mod_ell",
    "factorize",
    "is_prime",
    "is_primitive_root",
    "lex_least_irreducible",
    "mod_pow",
    "multiplicative_order",
    "polynomials",
    "primality",
    "primes_up_to",
    "quadratic_residue_symbol",
    "smallest_primitive_root",
]
