"""Dirichlet characters of odd prime-power modulus with finite-field values."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import InvalidInputError
from .finite_field import GF, FFElement
from .integers import (
    discrete_log,
    euler_phi,
    is_prime,
    multiplicative_order,
    smallest_primitive_root,
)


@dataclass(frozen=True)
class DirichletCharacter:
    """A character of (Z/t^u)^*, stored by its value on a generator.

    ``generator`` is a primitive root modulo t^u; ``value`` is the image of
    the generator, a root of unity in some F_{ell^k}. The whole table is
    never materialized, so large u costs nothing.
    """

    t: int
    u: int
    generator: int
    value: FFElement

    def __post_init__(self):
        if self.t == 2 or not is_prime(self.t):
            raise InvalidInputError("modulus must be a power of an odd prime")
        if self.u < 1:
            raise InvalidInputError("exponent u must be >= 1")
        if multiplicative_order(self.generator, self.modulus) != self.phi:
            raise InvalidInputError(f"{self.generator} is not a primitive root mod {self.modulus}")
        if self.value.is_zero() or self.value**self.phi != 1:
            raise InvalidInputError("generator value must be a root of unity of order dividing phi(t^u)")

    @property
    def modulus(self) -> int:
        return self.t**self.u

    @property
    def phi(self) -> int:
        return (self.t - 1) * self.t ** (self.u - 1)

    @property
    def field(self):
        return self.value.field

    def __call__(self, a: int) -> FFElement:
        if gcd(a, self.t) != 1:
            return self.field(0)
        k = discrete_log(a, self.generator, self.modulus, self.phi)
        return self.value**k

    def order(self) -> int:
        return self.field.element_order(self.value.raw, self.phi)

    def conductor(self) -> int:
        # Units = 1 mod t^c form the subgroup generated by g^phi(t^c).
        if self.value == 1:
            return 1
        for c in range(1, self.u + 1):
            if self.value ** ((self.t - 1) * self.t ** (c - 1)) == 1:
                return self.t**c
        return self.modulus

    def inverse(self) -> "DirichletCharacter":
        return DirichletCharacter(self.t, self.u, self.generator, self.value.inverse())

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if (self.t, self.u, self.generator) != (other.t, other.u, other.generator):
            raise InvalidInputError("characters live on different groups")
        return DirichletCharacter(self.t, self.u, self.generator, self.value * other.value)

    def __str__(self):
        return f"psi mod {self.modulus}: psi({self.generator}) = {self.value} in GF({self.field.characteristic}^{self.field.degree})"


def character_of_conductor(t: int, u: int, ell: int, order: int) -> list[DirichletCharacter]:
    """All characters mod t^u of exact conductor t^u and exact ``order``.

    Values lie in the smallest F_{ell^k} holding the ``order``-th roots of
    unity, k = ord(ell mod order). Results are sorted by generator value.
    """
    if not is_prime(ell) or ell == t:
        raise InvalidInputError(f"ell={ell} must be a prime different from t={t}")
    phi = euler_phi(t**u)
    if order < 1 or phi % order:
        raise InvalidInputError(f"order {order} does not divide phi({t}^{u}) = {phi}")
    if order % t ** (u - 1):
        raise InvalidInputError(
            f"order {order} is not divisible by {t}^{u - 1}; the conductor would drop below {t}^{u}"
        )
    k = multiplicative_order(ell, order) if order > 1 else 1
    F = GF(ell, k)
    g = smallest_primitive_root(t**u)
    out = []
    for raw in F.roots_of_unity(order):
        chi = DirichletCharacter(t, u, g, FFElement(F, raw))
        if chi.conductor() == t**u:
            out.append(chi)
    return out
